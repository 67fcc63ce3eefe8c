#include "ruled4/normalform.hpp"

#include "ruled4/classify.hpp"

namespace ruled4 {

namespace {

template <class S>
S det2(const S& a, const S& b, const S& c, const S& d) {
  return a * d - b * c;
}

template <class S>
double jet_scale(const MongeForm<S>& mf) {
  return std::max(mf.f1.max_abs(), mf.f2.max_abs());
}

template <class S>
bool series_close(const BiSeries<S>& a, const BiSeries<S>& b, double scale) {
  const BiSeries<S> d = a - b;
  for (int i = 0; i <= d.order(); ++i)
    for (int j = 0; i + j <= d.order(); ++j)
      if (!is_zero(d(i, j), scale)) return false;
  return true;
}

}  // namespace

template <class S>
MongeForm<S> apply_projective(const MongeForm<S>& mf, const ProjectiveTransform<S>& T, int order) {
  const int n = order;
  if (det2(T.q11, T.q12, T.q21, T.q22) == 0)
    throw Error(ErrorKind::NonConvergent, "transform degenerates on the tangent plane");
  const S det = det2(T.q33, T.q34, T.q43, T.q44);
  if (det == 0) throw Error(ErrorKind::NonConvergent, "normal block of the transform is singular");
  const BiSeries<S> f1 = mf.f1.with_order(n), f2 = mf.f2.with_order(n);
  const BiSeries<S> x = BiSeries<S>::variable(n, 0), y = BiSeries<S>::variable(n, 1);
  BiSeries<S> g1(n), g2(n), prev1(n), prev2(n);
  for (int it = 0; it < n + 2; ++it) {
    prev1 = g1;
    prev2 = g2;
    const BiSeries<S> P = ((x * T.p1 + y * T.p2 + g1 * T.p3 + g2 * T.p4) + S(1));
    const BiSeries<S> iP = P.reciprocal();
    const BiSeries<S> X1 = (x * T.q11 + y * T.q12 + g1 * T.q13 + g2 * T.q14) * iP;
    const BiSeries<S> X2 = (x * T.q21 + y * T.q22 + g1 * T.q23 + g2 * T.q24) * iP;
    const BiSeries<S> r1 = f1.compose(X1, X2) * P;
    const BiSeries<S> r2 = f2.compose(X1, X2) * P;
    g1 = (r1 * T.q44 - r2 * T.q34) * (S(1) / det);
    g2 = (r2 * T.q33 - r1 * T.q43) * (S(1) / det);
  }
  const double scale = std::max({1.0, g1.max_abs(), g2.max_abs()});
  if (!series_close(g1, prev1, scale) || !series_close(g2, prev2, scale))
    throw Error(ErrorKind::NonConvergent, "graph iteration did not stabilise");
  MongeForm<S> out;
  out.f1 = g1;
  out.f2 = g2;
  out.u0 = mf.u0;
  out.t0 = mf.t0;
  return out;
}

template <class S>
MongeForm<S> reduce_parabolic(const MongeForm<S>& mf) {
  const double scale = jet_scale(mf);
  const S kappa = mf.a(1, 1) * mf.b(2, 0) - mf.a(2, 0) * mf.b(1, 1);
  if (is_zero(kappa, scale * scale)) throw Error(ErrorKind::NotParabolic, "basepoint is an inflection point");
  BiSeries<S> f1 = mf.f1, f2 = mf.f2;
  std::optional<Frame<S>> frame = mf.frame;
  auto update = [&](const Mat4<S>& m) {
    if (frame) *frame = frame->compose(m);
  };
  if (is_zero(f2(1, 1), scale)) {
    if (is_zero(f1(1, 1), scale)) throw Error(ErrorKind::GaugeFailure, "a11 = b11 = 0");
    std::swap(f1, f2);
    Mat4<S> m = identity4<S>();
    m[2][2] = m[3][3] = S(0);
    m[2][3] = m[3][2] = S(1);
    update(m);
  }
  // w -> w / b11.
  {
    const S b11 = f2(1, 1);
    f2 = f2 * (S(1) / b11);
    Mat4<S> m = identity4<S>();
    m[3][3] = b11;
    update(m);
  }
  // y -> y - b20 x.
  {
    const S b20 = f2(2, 0);
    const int n = f1.order();
    const BiSeries<S> x = BiSeries<S>::variable(n, 0);
    const BiSeries<S> y = BiSeries<S>::variable(n, 1) - x * b20;
    f1 = f1.compose(x, y);
    f2 = f2.compose(x, y);
    Mat4<S> m = identity4<S>();
    m[1][0] = -b20;
    update(m);
  }
  // z -> z - a11 w.
  {
    const S a11 = f1(1, 1);
    f1 = f1 - f2 * a11;
    Mat4<S> m = identity4<S>();
    m[2][3] = a11;
    update(m);
  }
  // z -> z / a20.
  {
    const S a20 = f1(2, 0);
    f1 = f1 * (S(1) / a20);
    Mat4<S> m = identity4<S>();
    m[2][2] = a20;
    update(m);
  }
  // Exact by construction.
  f1.set(2, 0, S(1));
  f1.set(1, 1, S(0));
  f2.set(2, 0, S(0));
  f2.set(1, 1, S(1));
  MongeForm<S> out;
  out.f1 = f1;
  out.f2 = f2;
  out.u0 = mf.u0;
  out.t0 = mf.t0;
  out.frame = frame;
  return out;
}

template <class S>
ProjectiveTransform<S> transform_4jet(const MongeForm<S>& m) {
  const S a21 = m.a(2, 1), a30 = m.a(3, 0), b21 = m.b(2, 1), b30 = m.b(3, 0), b31 = m.b(3, 1), b22 = m.b(2, 2);
  ProjectiveTransform<S> T;
  T.q13 = b21 - a30;
  T.q14 = -a21;
  T.q23 = -b30;
  T.p1 = -a30 + S(2) * b21;
  T.p2 = -a21;
  T.p3 = -a21 * b30 - a30 * b21 + b31;
  T.p4 = -a21 * b21 + b22;
  return T;
}

template <class S>
NormalForm4<S> normal_form4_closed(const MongeForm<S>& m) {
  NormalForm4<S> nf;
  nf.gamma40 = m.a(4, 0) - m.a(3, 0) * m.a(3, 0) + m.b(2, 1) * m.b(2, 1) - m.b(3, 1);
  nf.gamma31 = m.a(3, 1) - m.a(2, 1) * m.a(3, 0) - m.a(2, 1) * m.b(2, 1) - m.b(2, 2);
  nf.theta40 = m.b(4, 0) - m.a(3, 0) * m.b(3, 0) - m.b(2, 1) * m.b(3, 0);
  return nf;
}

template <class S>
bool has_nf4_shape(const MongeForm<S>& mf) {
  const double scale = jet_scale(mf);
  for (int d = 0; d <= std::min(4, mf.order()); ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const bool slot1 = (i == 2 && j == 0) || (i == 4 && j == 0) || (i == 3 && j == 1);
      const bool slot2 = (i == 1 && j == 1) || (i == 4 && j == 0);
      if (!slot1 && !is_zero(mf.a(i, j), scale)) return false;
      if (!slot2 && !is_zero(mf.b(i, j), scale)) return false;
    }
  }
  return is_zero(mf.a(2, 0) - S(1), scale) && is_zero(mf.b(1, 1) - S(1), scale);
}

template <class S>
Reduction4<S> reduce_4jet(const MongeForm<S>& reduced) {
  Reduction4<S> r;
  r.transform = transform_4jet(reduced);
  r.jet = apply_projective(reduced, r.transform, reduced.order());
  if (!has_nf4_shape(r.jet)) throw Error(ErrorKind::ResidualNonzero, "4-jet is not in normal form after the transform");
  r.nf.gamma40 = r.jet.a(4, 0);
  r.nf.gamma31 = r.jet.a(3, 1);
  r.nf.theta40 = r.jet.b(4, 0);
  return r;
}

template <class S>
ProjectiveTransform<S> transform_5jet(const MongeForm<S>& m) {
  const S g31 = m.a(3, 1);
  if (is_zero(g31, jet_scale(m))) throw Error(ErrorKind::Gamma31Zero, "Gamma31 = 0");
  const S k = m.b(3, 2) / g31;
  ProjectiveTransform<S> T;
  T.q13 = -k;
  T.q24 = -k;
  T.p1 = S(-2) * k;
  T.p3 = k * k;
  return T;
}

template <class S>
Reduction5<S> reduce_5jet(const MongeForm<S>& nf4_jet) {
  if (nf4_jet.order() < 5) throw Error(ErrorKind::ResidualNonzero, "5-jet reduction needs order >= 5");
  if (!has_nf4_shape(nf4_jet)) throw Error(ErrorKind::ResidualNonzero, "input 4-jet is not in normal form");
  Reduction5<S> r;
  r.transform = transform_5jet(nf4_jet);
  r.jet = apply_projective(nf4_jet, r.transform, nf4_jet.order());
  const double scale = jet_scale(r.jet);
  if (!has_nf4_shape(r.jet) || !is_zero(r.jet.b(3, 2), scale))
    throw Error(ErrorKind::ResidualNonzero, "5-jet transform left the x^3 y^2 slot nonzero");
  NormalForm5<S>& nf = r.nf;
  nf.gamma40 = r.jet.a(4, 0);
  nf.gamma31 = r.jet.a(3, 1);
  nf.gamma50 = r.jet.a(5, 0);
  nf.gamma41 = r.jet.a(4, 1);
  nf.gamma32 = r.jet.a(3, 2);
  nf.theta40 = r.jet.b(4, 0);
  nf.theta50 = r.jet.b(5, 0);
  nf.theta41 = r.jet.b(4, 1);
  return r;
}

template <class S>
Reduction5<S> normal_form5(const MongeForm<S>& mf) {
  const MongeForm<S> reduced = reduce_parabolic(mf);
  return reduce_5jet(reduce_4jet(reduced).jet);
}

template <class S>
S theta50_formula(const MongeForm<S>& m) {
  const S g31 = m.a(3, 1);
  if (is_zero(g31, jet_scale(m))) throw Error(ErrorKind::Gamma31Zero, "Gamma31 = 0");
  return (g31 * m.b(5, 0) + m.b(3, 2) * m.b(4, 0)) / g31;
}

template <class S>
S theta41_formula_legacy(const MongeForm<S>& m) {
  const S g31 = m.a(3, 1);
  if (is_zero(g31, jet_scale(m))) throw Error(ErrorKind::Gamma31Zero, "Gamma31 = 0");
  return (g31 * m.b(4, 1) + m.a(4, 0) * m.b(3, 2)) / g31;
}

template <class S>
S theta41_formula_transform(const MongeForm<S>& m) {
  const S g31 = m.a(3, 1);
  if (is_zero(g31, jet_scale(m))) throw Error(ErrorKind::Gamma31Zero, "Gamma31 = 0");
  return (g31 * m.b(4, 1) - m.a(4, 0) * m.b(3, 2)) / g31;
}

#define RULED4_INSTANTIATE(S)                                                                   \
  template MongeForm<S> apply_projective(const MongeForm<S>&, const ProjectiveTransform<S>&, int); \
  template MongeForm<S> reduce_parabolic(const MongeForm<S>&);                                  \
  template ProjectiveTransform<S> transform_4jet(const MongeForm<S>&);                          \
  template NormalForm4<S> normal_form4_closed(const MongeForm<S>&);                             \
  template Reduction4<S> reduce_4jet(const MongeForm<S>&);                                      \
  template ProjectiveTransform<S> transform_5jet(const MongeForm<S>&);                          \
  template Reduction5<S> reduce_5jet(const MongeForm<S>&);                                      \
  template Reduction5<S> normal_form5(const MongeForm<S>&);                                     \
  template S theta50_formula(const MongeForm<S>&);                                              \
  template S theta41_formula_legacy(const MongeForm<S>&);                                      \
  template S theta41_formula_transform(const MongeForm<S>&);                                    \
  template bool has_nf4_shape(const MongeForm<S>&);

RULED4_INSTANTIATE(Rational)
RULED4_INSTANTIATE(double)

}  // namespace ruled4
