#include "asysa/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace asysa {

namespace {

unsigned ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0u : unsigned(std::bit_width(n - 1));
}

}  // namespace

ArrayConfig::ArrayConfig(int rows_in, int cols_in, int bus_h_in, int bus_v_in)
    : rows(rows_in), cols(cols_in), bus_h(bus_h_in), bus_v(bus_v_in) {
  if (rows < 1 || cols < 1) {
    throw DomainError("array must have at least one row and one column, got " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (bus_h < 1 || bus_v < 1) {
    throw DomainError("bus widths must be at least 1 bit");
  }
  if (bus_h > 62 || bus_v > 62) {
    throw DomainError("bus widths above 62 bits are not supported");
  }
}

PeGeometry PeGeometry::from_dimensions(double width, double height) {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw DomainError("PE dimensions must be positive and finite");
  }
  return PeGeometry{width, height, width * height};
}

ActivityProfile::ActivityProfile(double a_h_in, double a_v_in) : a_h(a_h_in), a_v(a_v_in) {
  if (!(a_h >= 0.0 && a_h <= 1.0) || !(a_v >= 0.0 && a_v <= 1.0)) {
    throw DomainError("activity factors must lie in [0, 1]");
  }
}

double horizontal_wirelength(const ArrayConfig& cfg, const PeGeometry& pe) {
  return double(cfg.rows) * double(cfg.cols) * pe.width * double(cfg.bus_h);
}

double vertical_wirelength(const ArrayConfig& cfg, const PeGeometry& pe) {
  return double(cfg.rows) * double(cfg.cols) * pe.height * double(cfg.bus_v);
}

double total_wirelength(const ArrayConfig& cfg, const PeGeometry& pe) {
  return horizontal_wirelength(cfg, pe) + vertical_wirelength(cfg, pe);
}

double weighted_cost(const ArrayConfig& cfg, const PeGeometry& pe, const ActivityProfile& act) {
  return double(cfg.rows) * double(cfg.cols) *
         (pe.width * double(cfg.bus_h) * act.a_h + pe.height * double(cfg.bus_v) * act.a_v);
}

double optimal_aspect_ratio(const ArrayConfig& cfg, const ActivityProfile& act) {
  const double h_load = double(cfg.bus_h) * act.a_h;
  const double v_load = double(cfg.bus_v) * act.a_v;
  if (h_load <= 0.0) {
    throw ZeroActivityError(
        "horizontal switching load is zero; the optimal aspect ratio is unbounded above");
  }
  if (v_load <= 0.0) {
    throw ZeroActivityError(
        "vertical switching load is zero; the optimal aspect ratio is unbounded below");
  }
  return v_load / h_load;
}

PeGeometry solve_geometry(double area, double ratio) {
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw DomainError("PE area must be positive and finite");
  }
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw DomainError("aspect ratio must be positive and finite");
  }
  return PeGeometry::from_dimensions(std::sqrt(area * ratio), std::sqrt(area / ratio));
}

double numeric_min_aspect_ratio(const ArrayConfig& cfg, const ActivityProfile& act, double area,
                                double lo, double hi, double tol) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw DomainError("ratio bracket must satisfy 0 < lo < hi");
  }
  if (!(tol > 0.0)) {
    throw DomainError("tolerance must be positive");
  }
  const auto cost_at = [&](double t) {
    return weighted_cost(cfg, solve_geometry(area, std::exp(t)), act);
  };

  double a = std::log(lo);
  double b = std::log(hi);
  const double f_lo = cost_at(a);
  const double f_hi = cost_at(b);

  // Golden section down to a window still wide enough that the final
  // three-point parabolic fit sits clearly above double rounding noise.
  static constexpr double kInvPhi = 0.6180339887498949;
  const double stop = std::max(tol, 1e-5);
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = cost_at(x1);
  double f2 = cost_at(x2);
  double interior_best = std::min(f1, f2);
  while (b - a > stop) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = cost_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = cost_at(x2);
    }
    interior_best = std::min(interior_best, std::min(f1, f2));
  }

  if (f_lo < interior_best || f_hi < interior_best) {
    throw BracketError("weighted cost is lower at a bracket endpoint than at every interior "
                       "probe; the optimum lies outside [lo, hi]");
  }

  const double mid = 0.5 * (a + b);
  const double fa = cost_at(a);
  const double fm = cost_at(mid);
  const double fb = cost_at(b);
  double t = mid;
  const double denom = fa - 2.0 * fm + fb;
  if (denom > 0.0) {
    const double half = 0.5 * (b - a);
    t = std::clamp(mid + half * (fa - fb) / (2.0 * denom), a, b);
  }
  return std::exp(t);
}

double relative_cost_savings(const ArrayConfig& cfg, const ActivityProfile& act) {
  const double h_load = double(cfg.bus_h) * act.a_h;
  const double v_load = double(cfg.bus_v) * act.a_v;
  if (h_load <= 0.0 || v_load <= 0.0) {
    throw ZeroActivityError("cost savings undefined when a direction carries no switching load");
  }
  const double rho = v_load / h_load;
  return 1.0 - 2.0 * std::sqrt(rho) / (1.0 + rho);
}

unsigned required_accumulator_width(unsigned input_bits, unsigned rows) {
  if (input_bits < 1 || rows < 1) {
    throw DomainError("accumulator width needs input_bits >= 1 and rows >= 1");
  }
  return 2 * input_bits + ceil_log2(rows);
}

}  // namespace asysa
