#pragma once

#include <vector>

#include "ruled4/bde.hpp"

namespace ruled4 {

struct Region {
  double u0, u1, v0, v1;
  bool contains(double u, double v) const { return u >= u0 && u <= u1 && v >= v0 && v <= v1; }
};

/// Point of Omega = 0. In the swapped chart p is du/dv.
struct LiftedPoint {
  double u = 0.0, v = 0.0, p = 0.0;
  bool swapped = false;
};

struct LiftedVector {
  double du = 0.0, dv = 0.0, dp = 0.0;
};

/// (Omega_p, p Omega_p, -(Omega_u + p Omega_v)) in the p-chart.
LiftedVector lifted_field_eval(const BDEField<double>& f, const LiftedPoint& lp);

enum class Branch { Plus, Minus };

struct IntegralCurve {
  std::vector<std::array<double, 2>> points;
  Branch branch = Branch::Plus;
  std::size_t seed = 0;
  /// Set when an end was cut by the discriminant stop rule.
  bool hits_discriminant = false;
};

struct FoliationOptions {
  double step = 1e-3;
  double stop_delta = 1e-6;
  std::size_t max_steps = 200000;
};

/// Both leaves through each seed, each traced in both directions. Curves are
/// ordered by seed index, then Plus before Minus.
std::vector<IntegralCurve> integrate_foliation(const BDEField<double>& f, const Region& region,
                                               const std::vector<std::array<double, 2>>& seeds,
                                               const FoliationOptions& opt = {});

using Polyline = std::vector<std::array<double, 2>>;

/// Marching-squares contour of g = 0 on an nu x nv vertex grid, with one
/// Newton step per vertex. Empty when g has no sign change.
std::vector<Polyline> trace_zero_set(const BiSeries<double>& g, const Region& region, int nu, int nv);

/// Zero set of the discriminant; throws EmptyCurve when there is none.
std::vector<Polyline> trace_discriminant(const BDEField<double>& f, const Region& region, int nu, int nv);

}  // namespace ruled4
