#pragma once

#include "ruled4/surface.hpp"

namespace ruled4 {

/// (x, y, z, w) -> (q1, q2, q3, q4) / p with
///   q1 = q11 x + q12 y + q13 z + q14 w,  q2 likewise,
///   q3 = q33 z + q34 w,  q4 = q43 z + q44 w,
///   p  = 1 + p1 x + p2 y + p3 z + p4 w.
template <class S>
struct ProjectiveTransform {
  S q11{1}, q12{0}, q13{0}, q14{0};
  S q21{0}, q22{1}, q23{0}, q24{0};
  S q33{1}, q34{0}, q43{0}, q44{1};
  S p1{0}, p2{0}, p3{0}, p4{0};

  static ProjectiveTransform identity() { return {}; }
};

/// 4-jet (x^2 + G40 x^4 + G31 x^3 y, xy + T40 x^4).
template <class S>
struct NormalForm4 {
  S gamma40{}, gamma31{}, theta40{};
};

/// 5-jet (x^2 + G40 x^4 + G31 x^3 y + G50 x^5 + G41 x^4 y + G32 x^3 y^2,
///        xy + T40 x^4 + T50 x^5 + T41 x^4 y).
template <class S>
struct NormalForm5 {
  S gamma40{}, gamma31{}, gamma50{}, gamma41{}, gamma32{};
  S theta40{}, theta50{}, theta41{};
};

template <class S>
struct Reduction4 {
  NormalForm4<S> nf;
  MongeForm<S> jet;
  ProjectiveTransform<S> transform;
};

template <class S>
struct Reduction5 {
  NormalForm5<S> nf;
  MongeForm<S> jet;
  ProjectiveTransform<S> transform;
};

/// Solves the graph of the transformed surface order by order.
template <class S>
MongeForm<S> apply_projective(const MongeForm<S>& mf, const ProjectiveTransform<S>& T, int order);

/// Affine gauge to f1 = x^2 + ..., f2 = xy + ... with a11 = b20 = 0.
template <class S>
MongeForm<S> reduce_parabolic(const MongeForm<S>& mf);

template <class S>
ProjectiveTransform<S> transform_4jet(const MongeForm<S>& reduced);

/// Closed forms of (G40, G31, T40) in the reduced coefficients.
template <class S>
NormalForm4<S> normal_form4_closed(const MongeForm<S>& reduced);

template <class S>
Reduction4<S> reduce_4jet(const MongeForm<S>& reduced);

/// k = B32 / G31; q1 = x - k z, q2 = y - k w, p = 1 - 2k x + k^2 z.
template <class S>
ProjectiveTransform<S> transform_5jet(const MongeForm<S>& nf4_jet);

template <class S>
Reduction5<S> reduce_5jet(const MongeForm<S>& nf4_jet);

/// Full chain from a parabolic Monge form of order >= 5.
template <class S>
Reduction5<S> normal_form5(const MongeForm<S>& mf);

/// Slot formulas for the 5-jet reduction, in the input jet's coefficients.
template <class S>
S theta50_formula(const MongeForm<S>& nf4_jet);
/// Legacy form: (G31 B41 + G40 B32) / G31.
template <class S>
S theta41_formula_legacy(const MongeForm<S>& nf4_jet);
/// As obtained from the transform: (G31 B41 - G40 B32) / G31.
template <class S>
S theta41_formula_transform(const MongeForm<S>& nf4_jet);

/// True when every coefficient of degree <= 4 other than the normal-form slots vanishes.
template <class S>
bool has_nf4_shape(const MongeForm<S>& mf);

}  // namespace ruled4
