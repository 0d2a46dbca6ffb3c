#pragma once

#include <string>
#include <vector>

#include "asysa/model.hpp"
#include "asysa/sim.hpp"

namespace asysa {

/// Fraction of total accelerator energy attributed to array interconnect.
/// The default comes from post-layout power analysis of a 28nm 16x16 array.
class CalibratedFraction {
 public:
  CalibratedFraction() = default;
  explicit CalibratedFraction(double value);

  double value() const { return value_; }

 private:
  double value_ = 0.231;
};

/// Toggle-weighted wire energy in arbitrary units: every horizontal toggle
/// drives a wire of length `geom.width`, every vertical toggle one of length
/// `geom.height`. Capacitance per unit length is folded into the unit.
double interconnect_energy(const BusActivity& activity, const PeGeometry& geom);

struct FloorplanComparison {
  PeGeometry square;
  PeGeometry asymmetric;
  double aspect_ratio = 1.0;     ///< width / height of the asymmetric PE
  double energy_square = 0.0;
  double energy_asymmetric = 0.0;
  double savings = 0.0;          ///< 1 - energy_asymmetric / energy_square
};

/// Compare the measured activity on a square PE against the same activity on
/// the energy-optimal asymmetric PE of equal area.
FloorplanComparison compare_floorplans(const BusActivity& activity, const ArrayConfig& cfg,
                                       double pe_area = 1.0);

/// Scale an interconnect-level saving to the whole accelerator.
double total_power_savings(double interconnect_savings,
                           const CalibratedFraction& fraction = CalibratedFraction());

struct LayerEnergy {
  std::string name;
  BusActivity activity;
  double energy_square = 0.0;
  double energy_asymmetric = 0.0;
  double savings = 0.0;        ///< 1 - energy_asymmetric / energy_square
  double total_savings = 0.0;  ///< savings scaled by the calibrated fraction
};

struct EnergyReport {
  double aspect_ratio = 1.0;   ///< shared across layers; a chip has one floorplan
  PeGeometry square;
  PeGeometry asymmetric;
  std::vector<LayerEnergy> layers;
  double average_savings = 0.0;      ///< energy-weighted over layers
  double total_savings = 0.0;        ///< average scaled by the calibrated fraction
};

/// Pick one asymmetric floorplan from the aggregate activity of all layers,
/// then price each layer on it. The average weights layers by their square
/// floorplan energy, so heavy layers dominate just as they do on silicon.
EnergyReport build_energy_report(const std::vector<std::string>& names,
                                 const std::vector<BusActivity>& activities,
                                 const ArrayConfig& cfg, double pe_area = 1.0,
                                 const CalibratedFraction& fraction = CalibratedFraction());

/// One-sentence caveat that belongs next to any reported savings number.
std::string model_vs_silicon_note();

}  // namespace asysa
