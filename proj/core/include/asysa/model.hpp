#pragma once

#include "asysa/errors.hpp"

namespace asysa {

/// Systolic-array shape and the widths of its two data buses.
///
/// bus_h is the width of the input bus crossing each PE row west to east;
/// bus_v is the width of the partial-sum bus running down each column.
struct ArrayConfig {
  int rows;
  int cols;
  int bus_h;
  int bus_v;

  ArrayConfig(int rows, int cols, int bus_h, int bus_v);
};

/// Physical footprint of a single PE; area is always width * height.
struct PeGeometry {
  double width = 0.0;
  double height = 0.0;
  double area = 0.0;

  static PeGeometry from_dimensions(double width, double height);
};

/// Average per-bit toggle probability observed on each bus direction.
struct ActivityProfile {
  double a_h;
  double a_v;

  ActivityProfile(double a_h, double a_v);
};

/// Total routed length of the horizontal input buses: R*C*W*Bh.
double horizontal_wirelength(const ArrayConfig& cfg, const PeGeometry& pe);

/// Total routed length of the vertical partial-sum buses: R*C*H*Bv.
double vertical_wirelength(const ArrayConfig& cfg, const PeGeometry& pe);

/// Both directions combined: R*C*(W*Bh + H*Bv).
double total_wirelength(const ArrayConfig& cfg, const PeGeometry& pe);

/// Activity-weighted wirelength R*C*(W*Bh*a_h + H*Bv*a_v), proportional to
/// the dynamic switching energy spent in the bus wires. Equals
/// total_wirelength when both activities are 1.
double weighted_cost(const ArrayConfig& cfg, const PeGeometry& pe, const ActivityProfile& act);

/// Aspect ratio W/H minimizing weighted_cost at fixed PE area:
/// (Bv*a_v) / (Bh*a_h). Throws ZeroActivityError when either direction
/// carries no switching load, since the optimum is then unbounded.
double optimal_aspect_ratio(const ArrayConfig& cfg, const ActivityProfile& act);

/// PE dimensions with the given area and aspect ratio W/H:
/// W = sqrt(area * ratio), H = sqrt(area / ratio).
PeGeometry solve_geometry(double area, double ratio);

/// Derivative-free cross-check of optimal_aspect_ratio: golden-section
/// search over log(ratio) on [lo, hi], finished by one parabolic
/// refinement so the argmin is reliable to well below double noise.
/// Throws BracketError when the cost at a bracket endpoint undercuts every
/// interior probe, i.e. the optimum lies outside [lo, hi].
double numeric_min_aspect_ratio(const ArrayConfig& cfg, const ActivityProfile& act,
                                double area = 1.0, double lo = 1.0 / 64.0, double hi = 64.0,
                                double tol = 1e-9);

/// Fractional reduction of weighted_cost at the optimal aspect ratio
/// versus a square PE of equal area: 1 - 2*sqrt(rho)/(1 + rho) with
/// rho = (Bv*a_v)/(Bh*a_h). Zero exactly when rho == 1; independent of
/// area and array size.
double relative_cost_savings(const ArrayConfig& cfg, const ActivityProfile& act);

/// Output width that holds a dot product of `rows` terms of
/// input_bits-wide operands without overflow: 2*input_bits + ceil(log2 rows).
unsigned required_accumulator_width(unsigned input_bits, unsigned rows);

}  // namespace asysa
