#pragma once

#include <array>

#include "ruled4/normalform.hpp"
#include "ruled4/surface.hpp"

namespace ruled4 {

/// A(u,v) dv^2 + B(u,v) du dv + C(u,v) du^2 = 0.
template <class S>
struct BDEField {
  BiSeries<S> A, B, C;

  int order() const { return A.order(); }
  /// Omega = A p^2 + B p + C with p = dv/du.
  template <class T>
  BDEField<T> cast() const {
    return {A.template cast<T>(), B.template cast<T>(), C.template cast<T>()};
  }
  /// The same equation in the chart q = du/dv with (u, v) exchanged.
  BDEField swapped() const { return {C.swapped(), B.swapped(), A.swapped()}; }
};

enum class ButterflyClass { Hyperbolic, Parabolic, Elliptic, Uncertain };

enum class FoldedType { WellFoldedTransverse, FoldedSaddle, FoldedNode, FoldedFocus, Degenerate };

const char* butterfly_class_name(ButterflyClass c);
const char* folded_type_name(FoldedType t);

/// Butterfly-direction BDE of a Monge-form surface, coefficient jets of the
/// given order (capped at the Monge order minus 4).
template <class S>
BDEField<S> butterfly_bde(const MongeForm<S>& mf, int order = 2);

/// Discriminant B^2 - 4AC as a series.
template <class S>
BiSeries<S> discriminant_series(const BDEField<S>& f);

template <class S>
S discriminant(const BDEField<S>& f, const S& u, const S& v);

/// 1-jets of the butterfly BDE at a 5-jet normal form, from the coefficient
/// blocks and divided by the common factor 288:
///   A = G31 + 4 G41 u + 2 G32 v,
///   B = G40 + (5 G50 - 4 T41) u + G41 v,
///   C = -T40 - 5 T50 u - T41 v.
template <class S>
BDEField<S> normal_form_bde(const NormalForm5<S>& nf);

/// Legacy 1-jets for the normal form (middle coefficient
/// -2 G40 + (-10 G50 + 8 T41) u - 2 G41 v).
template <class S>
BDEField<S> legacy_bde_field(const NormalForm5<S>& nf);

/// Sign of G40^2 + 4 G31 T40, the discriminant of the butterfly directions.
template <class S>
ButterflyClass classify_butterfly_point(const NormalForm4<S>& nf);

template <class S>
S butterfly_discriminant(const NormalForm4<S>& nf);

/// G40^2 + G31 T40, the legacy indicator.
template <class S>
S legacy_butterfly_indicator(const NormalForm4<S>& nf);

/// 5 G31^2 T50 + 10 G31 G40 G50 - 8 G31 G40 T41 - 4 G40^2 G41 (legacy form).
template <class S>
S legacy_xi(const NormalForm5<S>& nf);

/// u-coefficient times G31 of the discriminant 1-jet of normal_form_bde on
/// the butterfly parabolic set (T40 = -G40^2 / (4 G31)).
template <class S>
S xi_transform(const NormalForm5<S>& nf);

/// Sign of the discriminant of an arbitrary field at a point.
template <class S>
ButterflyClass classify_butterfly_field(const BDEField<S>& f, const S& u, const S& v);

struct FoldedResult {
  FoldedType type = FoldedType::Degenerate;
  double p0 = 0.0;
  /// Omega_u + p0 Omega_v: zero at a folded singularity.
  double transversality = 0.0;
  double det = 0.0, trace = 0.0;
  /// det / (4 trace^2); equals lambda on dv^2 + (-v + lambda u^2) du^2.
  double lambda_estimate = 0.0;
  bool swapped_chart = false;
  const char* note = "";
};

/// Classifies a point of the discriminant curve: transverse fold, or a folded
/// saddle/node/focus from the linearised lifted field.
FoldedResult folded_singularity(const BDEField<double>& f, double u, double v);

template <class S>
struct TransversalityResult {
  bool transverse = false;
  S C1{}, C2{};  // 1-jet of the discriminant
  S c1{}, c2{};  // 1-jet of the inflection curve
  S side{};      // side condition value
};

template <class S>
TransversalityResult<S> inflection_transversality(const MongeForm<S>& mf);

}  // namespace ruled4
