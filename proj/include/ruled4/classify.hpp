#pragma once

#include <array>

#include "ruled4/surface.hpp"

namespace ruled4 {

/// Halved convention: a = f2_xx/2, b = f2_xy/2, c = f2_yy/2, and l, m, n
/// likewise for f1.
template <class S>
struct SecondFundamental {
  S a{}, b{}, c{}, l{}, m{}, n{};
};

template <class S>
struct PointInvariants {
  S delta{}, K{}, kappa{};
};

enum class PointTag { Parabolic, InflectionReal, InflectionFlat, InflectionImaginary, Uncertain };

const char* point_tag_name(PointTag t);

/// 1-jet c1 x + c2 y of the inflection curve at an inflection point.
template <class S>
struct InflectionJet {
  S c1{}, c2{};
};

template <class S>
SecondFundamental<S> second_fundamental(const MongeForm<S>& mf);

template <class S>
PointInvariants<S> point_invariants(const SecondFundamental<S>& sf);

/// Parabolic iff kappa != 0. Float mode returns Uncertain inside the tau band.
template <class S>
PointTag classify_point(const MongeForm<S>& mf);

/// The unique t0 on the chart's ruling at which kappa vanishes.
template <class S>
S inflection_on_ruling(const AdaptedChart<S>& chart);

template <class S>
InflectionJet<S> inflection_curve_jet(const MongeForm<S>& mf);

/// kappa(x, y) from the Hessians of f1, f2, halved convention.
template <class S>
BiSeries<S> kappa_field(const MongeForm<S>& mf);

/// Coefficients of (am - bl) dx^2 + (an - cl) dx dy + (bn - cm) dy^2.
template <class S>
std::array<S, 3> asymptotic_directions(const SecondFundamental<S>& sf);

}  // namespace ruled4
