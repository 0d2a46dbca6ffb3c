#include "asysa/power.hpp"

#include <cmath>
#include <string>

#include "asysa/errors.hpp"

namespace asysa {

CalibratedFraction::CalibratedFraction(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) {
    throw DomainError("calibrated interconnect fraction must lie in (0, 1), got " +
                      std::to_string(value));
  }
}

double interconnect_energy(const BusActivity& activity, const PeGeometry& geom) {
  return double(activity.h_toggles) * geom.width + double(activity.v_toggles) * geom.height;
}

FloorplanComparison compare_floorplans(const BusActivity& activity, const ArrayConfig& cfg,
                                       double pe_area) {
  if (!(pe_area > 0.0)) {
    throw DomainError("PE area must be positive, got " + std::to_string(pe_area));
  }
  const ActivityProfile profile = activity_profile(activity, cfg);
  FloorplanComparison cmp;
  cmp.square = solve_geometry(pe_area, 1.0);
  cmp.aspect_ratio = optimal_aspect_ratio(cfg, profile);
  cmp.asymmetric = solve_geometry(pe_area, cmp.aspect_ratio);
  cmp.energy_square = interconnect_energy(activity, cmp.square);
  cmp.energy_asymmetric = interconnect_energy(activity, cmp.asymmetric);
  cmp.savings = 1.0 - cmp.energy_asymmetric / cmp.energy_square;
  return cmp;
}

double total_power_savings(double interconnect_savings, const CalibratedFraction& fraction) {
  return fraction.value() * interconnect_savings;
}

EnergyReport build_energy_report(const std::vector<std::string>& names,
                                 const std::vector<BusActivity>& activities,
                                 const ArrayConfig& cfg, double pe_area,
                                 const CalibratedFraction& fraction) {
  if (names.size() != activities.size()) {
    throw ShapeError("got " + std::to_string(names.size()) + " layer names for " +
                     std::to_string(activities.size()) + " activity records");
  }
  if (activities.empty()) {
    throw EmptySimulationError("an energy report needs at least one layer");
  }

  BusActivity aggregate;
  for (const BusActivity& activity : activities) {
    aggregate.merge(activity);
  }
  const FloorplanComparison shared = compare_floorplans(aggregate, cfg, pe_area);

  EnergyReport report;
  report.aspect_ratio = shared.aspect_ratio;
  report.square = shared.square;
  report.asymmetric = shared.asymmetric;
  report.layers.reserve(names.size());

  double sum_square = 0.0;
  double sum_asym = 0.0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    LayerEnergy layer;
    layer.name = names[i];
    layer.activity = activities[i];
    layer.energy_square = interconnect_energy(activities[i], report.square);
    layer.energy_asymmetric = interconnect_energy(activities[i], report.asymmetric);
    layer.savings = 1.0 - layer.energy_asymmetric / layer.energy_square;
    layer.total_savings = total_power_savings(layer.savings, fraction);
    sum_square += layer.energy_square;
    sum_asym += layer.energy_asymmetric;
    report.layers.push_back(std::move(layer));
  }
  report.average_savings = 1.0 - sum_asym / sum_square;
  report.total_savings = total_power_savings(report.average_savings, fraction);
  return report;
}

std::string model_vs_silicon_note() {
  return "Savings are computed from a wirelength-times-activity model; "
         "place-and-route, clock distribution and drive sizing on real silicon "
         "will shift the realized numbers.";
}

}  // namespace asysa
