#include "ruled4/bde.hpp"

#include <cmath>
#include <type_traits>

#include "ruled4/classify.hpp"

namespace ruled4 {

const char* butterfly_class_name(ButterflyClass c) {
  switch (c) {
    case ButterflyClass::Hyperbolic: return "Hyperbolic";
    case ButterflyClass::Parabolic: return "Parabolic";
    case ButterflyClass::Elliptic: return "Elliptic";
    case ButterflyClass::Uncertain: return "Uncertain";
  }
  return "Unknown";
}

const char* folded_type_name(FoldedType t) {
  switch (t) {
    case FoldedType::WellFoldedTransverse: return "WellFoldedTransverse";
    case FoldedType::FoldedSaddle: return "FoldedSaddle";
    case FoldedType::FoldedNode: return "FoldedNode";
    case FoldedType::FoldedFocus: return "FoldedFocus";
    case FoldedType::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

template <class S>
BDEField<S> butterfly_bde(const MongeForm<S>& mf, int order) {
  const int n = std::max(0, std::min(order, mf.order() - 4));
  // Derivative fields d^{i+j} f / du^i dv^j truncated to order n.
  auto field = [&](const BiSeries<S>& f, int i, int j) {
    BiSeries<S> r = f;
    for (int k = 0; k < i; ++k) r = r.derivative(0);
    for (int k = 0; k < j; ++k) r = r.derivative(1);
    return r.with_order(n);
  };
  auto a = [&](int i, int j) { return field(mf.f1, i, j); };
  auto b = [&](int i, int j) { return field(mf.f2, i, j); };
  auto w = [&](int i, int j, int k, int l) { return a(i, j) * b(k, l) - a(k, l) * b(i, j); };
  const S two(2), three(3), four(4), six(6), twelve(12);

  const BiSeries<S> k11_20 = w(1, 1, 2, 0);  // a11 b20 - a20 b11
  const BiSeries<S> m1 = w(1, 1, 3, 0) * two + w(2, 1, 2, 0) * three;

  BDEField<S> f;
  f.A = k11_20 * six * (w(1, 1, 3, 1) * four + w(2, 0, 2, 2) * three) - w(1, 1, 2, 1) * twelve * m1;
  const BiSeries<S> s1 = w(2, 0, 2, 1) * three;
  const BiSeries<S> s2 = w(1, 1, 3, 0) * two;
  f.B = s1 * s1 * two - s2 * s2 * two + k11_20 * six * (w(1, 1, 4, 0) + w(2, 0, 3, 1) * two);
  f.C = w(2, 0, 4, 0) * k11_20 * three - w(2, 0, 3, 0) * two * m1;
  return f;
}

template <class S>
BiSeries<S> discriminant_series(const BDEField<S>& f) {
  return f.B * f.B - f.A * f.C * S(4);
}

template <class S>
S discriminant(const BDEField<S>& f, const S& u, const S& v) {
  const S A = f.A.evaluate(u, v), B = f.B.evaluate(u, v), C = f.C.evaluate(u, v);
  return B * B - S(4) * A * C;
}

namespace {

template <class S>
BiSeries<S> linear(const std::type_identity_t<S>& c, const std::type_identity_t<S>& cu,
                   const std::type_identity_t<S>& cv) {
  BiSeries<S> r(1);
  r.set(0, 0, c);
  r.set(1, 0, cu);
  r.set(0, 1, cv);
  return r;
}

}  // namespace

template <class S>
BDEField<S> normal_form_bde(const NormalForm5<S>& nf) {
  BDEField<S> f;
  f.A = linear<S>(nf.gamma31, S(4) * nf.gamma41, S(2) * nf.gamma32);
  f.B = linear<S>(nf.gamma40, S(5) * nf.gamma50 - S(4) * nf.theta41, nf.gamma41);
  f.C = linear<S>(S(-nf.theta40), S(-5) * nf.theta50, S(-nf.theta41));
  return f;
}

template <class S>
BDEField<S> legacy_bde_field(const NormalForm5<S>& nf) {
  BDEField<S> f;
  f.A = linear<S>(nf.gamma31, S(4) * nf.gamma41, S(2) * nf.gamma32);
  f.B = linear<S>(S(-2) * nf.gamma40, S(-10) * nf.gamma50 + S(8) * nf.theta41, S(-2) * nf.gamma41);
  f.C = linear<S>(S(-nf.theta40), S(-5) * nf.theta50, S(-nf.theta41));
  return f;
}

namespace {

ButterflyClass class_from(ZeroTest z, int sign) {
  if (z == ZeroTest::Uncertain) return ButterflyClass::Uncertain;
  if (z == ZeroTest::Zero) return ButterflyClass::Parabolic;
  return sign > 0 ? ButterflyClass::Hyperbolic : ButterflyClass::Elliptic;
}

template <class S>
double nf4_scale(const NormalForm4<S>& nf) {
  const double s = std::max({std::abs(to_double(nf.gamma40)), std::abs(to_double(nf.gamma31)),
                             std::abs(to_double(nf.theta40))});
  return s * s;
}

}  // namespace

template <class S>
S butterfly_discriminant(const NormalForm4<S>& nf) {
  return nf.gamma40 * nf.gamma40 + S(4) * nf.gamma31 * nf.theta40;
}

template <class S>
ButterflyClass classify_butterfly_point(const NormalForm4<S>& nf) {
  const S d = butterfly_discriminant(nf);
  const double s = nf4_scale(nf);
  return class_from(zero_test(d, s), sign_of(d, s));
}

template <class S>
S legacy_butterfly_indicator(const NormalForm4<S>& nf) {
  return nf.gamma40 * nf.gamma40 + nf.gamma31 * nf.theta40;
}

template <class S>
S legacy_xi(const NormalForm5<S>& n) {
  return S(5) * n.gamma31 * n.gamma31 * n.theta50 + S(10) * n.gamma31 * n.gamma40 * n.gamma50 -
         S(8) * n.gamma31 * n.gamma40 * n.theta41 - S(4) * n.gamma40 * n.gamma40 * n.gamma41;
}

template <class S>
S xi_transform(const NormalForm5<S>& n) {
  return S(20) * n.gamma31 * n.gamma31 * n.theta50 + S(10) * n.gamma31 * n.gamma40 * n.gamma50 -
         S(8) * n.gamma31 * n.gamma40 * n.theta41 - S(4) * n.gamma40 * n.gamma40 * n.gamma41;
}

template <class S>
ButterflyClass classify_butterfly_field(const BDEField<S>& f, const S& u, const S& v) {
  const S A = f.A.evaluate(u, v), B = f.B.evaluate(u, v), C = f.C.evaluate(u, v);
  const S d = B * B - S(4) * A * C;
  const double s = std::pow(std::max({std::abs(to_double(A)), std::abs(to_double(B)), std::abs(to_double(C))}), 2);
  return class_from(zero_test(d, s), sign_of(d, s));
}

namespace {

struct Local {
  double A, B, C;
  double Au, Av, Bu, Bv, Cu, Cv;
  double Auu, Auv, Avv, Buu, Buv, Bvv, Cuu, Cuv, Cvv;
};

Local local_at(const BDEField<double>& f, double u, double v) {
  auto eval = [&](const BiSeries<double>& s, int i, int j) {
    BiSeries<double> d = s;
    for (int k = 0; k < i; ++k) d = d.derivative(0);
    for (int k = 0; k < j; ++k) d = d.derivative(1);
    return (i + j > s.order()) ? 0.0 : d.evaluate(u, v);
  };
  Local l{};
  l.A = eval(f.A, 0, 0), l.B = eval(f.B, 0, 0), l.C = eval(f.C, 0, 0);
  l.Au = eval(f.A, 1, 0), l.Av = eval(f.A, 0, 1);
  l.Bu = eval(f.B, 1, 0), l.Bv = eval(f.B, 0, 1);
  l.Cu = eval(f.C, 1, 0), l.Cv = eval(f.C, 0, 1);
  l.Auu = eval(f.A, 2, 0), l.Auv = eval(f.A, 1, 1), l.Avv = eval(f.A, 0, 2);
  l.Buu = eval(f.B, 2, 0), l.Buv = eval(f.B, 1, 1), l.Bvv = eval(f.B, 0, 2);
  l.Cuu = eval(f.C, 2, 0), l.Cuv = eval(f.C, 1, 1), l.Cvv = eval(f.C, 0, 2);
  return l;
}

}  // namespace

FoldedResult folded_singularity(const BDEField<double>& field, double u, double v) {
  FoldedResult r;
  Local l = local_at(field, u, v);
  BDEField<double> f = field;
  // Work in the chart where the leading coefficient is the larger one.
  if (std::abs(l.A) < std::abs(l.C)) {
    f = field.swapped();
    std::swap(u, v);
    l = local_at(f, u, v);
    r.swapped_chart = true;
  }
  const double scale = std::max({std::abs(l.A), std::abs(l.B), std::abs(l.C), 1e-300});
  const double delta = l.B * l.B - 4 * l.A * l.C;
  if (!is_zero(delta, scale * scale)) throw Error(ErrorKind::NotOnDiscriminant, "discriminant is nonzero at the point");
  const double du = 2 * l.B * l.Bu - 4 * (l.Au * l.C + l.A * l.Cu);
  const double dv = 2 * l.B * l.Bv - 4 * (l.Av * l.C + l.A * l.Cv);
  const double gscale = std::max({std::abs(l.Au), std::abs(l.Av), std::abs(l.Bu), std::abs(l.Bv), std::abs(l.Cu),
                                  std::abs(l.Cv)}) * scale;
  if (is_zero(std::hypot(du, dv), gscale)) throw Error(ErrorKind::NonRegularDiscriminant, "gradient of the discriminant vanishes");

  const double p = -l.B / (2 * l.A);
  r.p0 = p;
  const double Ou = l.Au * p * p + l.Bu * p + l.Cu;
  const double Ov = l.Av * p * p + l.Bv * p + l.Cv;
  r.transversality = Ou + p * Ov;
  const double tscale = std::max({std::abs(l.Au), std::abs(l.Av), std::abs(l.Bu), std::abs(l.Bv), std::abs(l.Cu),
                                  std::abs(l.Cv)}) * std::max(1.0, p * p);
  if (!is_zero(r.transversality, tscale)) {
    r.type = FoldedType::WellFoldedTransverse;
    return r;
  }
  if (f.order() < 2) {
    r.note = "coefficient 2-jets required for the folded type";
    r.type = FoldedType::Degenerate;
    return r;
  }
  // Linearisation of xi = (Omega_p, p Omega_p, -(Omega_u + p Omega_v)).
  const double Op = 2 * l.A * p + l.B;  // 0 here
  const double Oup = 2 * l.Au * p + l.Bu, Ovp = 2 * l.Av * p + l.Bv;
  const double Ouu = l.Auu * p * p + l.Buu * p + l.Cuu;
  const double Ouv = l.Auv * p * p + l.Buv * p + l.Cuv;
  const double Ovv = l.Avv * p * p + l.Bvv * p + l.Cvv;
  const double J[3][3] = {
      {Oup, Ovp, 2 * l.A},
      {p * Oup, p * Ovp, Op + 2 * l.A * p},
      {-(Ouu + p * Ouv), -(Ouv + p * Ovv), -(Oup + Ov + p * Ovp)},
  };
  // Tangent plane of Omega = 0: t = (-Omega_v, Omega_u, 0) and e_p.
  const double t[3] = {-Ov, Ou, 0.0};
  const double tt = t[0] * t[0] + t[1] * t[1];
  auto apply = [&](const double* x, double* y) {
    for (int i = 0; i < 3; ++i) y[i] = J[i][0] * x[0] + J[i][1] * x[1] + J[i][2] * x[2];
  };
  double Jt[3], Jp[3];
  const double ep[3] = {0.0, 0.0, 1.0};
  apply(t, Jt);
  apply(ep, Jp);
  const double m11 = (Jt[0] * t[0] + Jt[1] * t[1]) / tt, m21 = Jt[2];
  const double m12 = (Jp[0] * t[0] + Jp[1] * t[1]) / tt, m22 = Jp[2];
  r.det = m11 * m22 - m12 * m21;
  r.trace = m11 + m22;
  const double disc = r.trace * r.trace - 4 * r.det;
  const double mscale = std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
  r.lambda_estimate = r.trace != 0.0 ? r.det / (4 * r.trace * r.trace) : INFINITY;
  if (is_zero(r.det, mscale * mscale) || is_zero(disc, mscale * mscale)) {
    r.type = FoldedType::Degenerate;
    return r;
  }
  if (r.det < 0)
    r.type = FoldedType::FoldedSaddle;
  else
    r.type = disc > 0 ? FoldedType::FoldedNode : FoldedType::FoldedFocus;
  return r;
}

template <class S>
TransversalityResult<S> inflection_transversality(const MongeForm<S>& mf) {
  TransversalityResult<S> r;
  const InflectionJet<S> ij = inflection_curve_jet(mf);  // throws NotInflection
  r.c1 = ij.c1;
  r.c2 = ij.c2;
  // Side condition with derivative fields (i! j! a_ij).
  r.side = S(2) * (mf.a(1, 1) * S(6) * mf.b(3, 0) - S(6) * mf.a(3, 0) * mf.b(1, 1)) +
           S(3) * (S(2) * mf.a(2, 1) * S(2) * mf.b(2, 0) - S(2) * mf.a(2, 0) * S(2) * mf.b(2, 1));
  const double scale = std::max(mf.f1.max_abs(), mf.f2.max_abs());
  if (is_zero(r.side, scale * scale)) throw Error(ErrorKind::SideConditionViolated, "side condition vanishes");
  const BiSeries<S> delta = discriminant_series(butterfly_bde(mf, 1));
  r.C1 = delta(1, 0);
  r.C2 = delta(0, 1);
  const double dscale = delta.max_abs();
  if (is_zero(r.C1, dscale) && is_zero(r.C2, dscale))
    throw Error(ErrorKind::NonRegularDiscriminant, "discriminant has zero 1-jet");
  const S cross = S(r.C1 * r.c2 - r.C2 * r.c1);
  const double cscale = std::max(std::abs(to_double(r.C1)), std::abs(to_double(r.C2))) *
                        std::max(std::abs(to_double(r.c1)), std::abs(to_double(r.c2)));
  r.transverse = !is_zero(cross, cscale);
  return r;
}

#define RULED4_INSTANTIATE(S)                                                          \
  template BDEField<S> butterfly_bde(const MongeForm<S>&, int);                        \
  template BiSeries<S> discriminant_series(const BDEField<S>&);                        \
  template S discriminant(const BDEField<S>&, const S&, const S&);                     \
  template BDEField<S> normal_form_bde(const NormalForm5<S>&);                         \
  template BDEField<S> legacy_bde_field(const NormalForm5<S>&);                          \
  template ButterflyClass classify_butterfly_point(const NormalForm4<S>&);             \
  template S butterfly_discriminant(const NormalForm4<S>&);                            \
  template S legacy_butterfly_indicator(const NormalForm4<S>&);                         \
  template S legacy_xi(const NormalForm5<S>&);                                          \
  template S xi_transform(const NormalForm5<S>&);                                      \
  template ButterflyClass classify_butterfly_field(const BDEField<S>&, const S&, const S&); \
  template TransversalityResult<S> inflection_transversality(const MongeForm<S>&);

RULED4_INSTANTIATE(Rational)
RULED4_INSTANTIATE(double)

}  // namespace ruled4
