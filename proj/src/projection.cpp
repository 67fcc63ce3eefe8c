#include "ruled4/projection.hpp"

#include <cmath>
#include <sstream>

namespace ruled4 {

const char* label_tag_name(LabelTag t) {
  switch (t) {
    case LabelTag::Immersion: return "Immersion";
    case LabelTag::Fold: return "Fold";
    case LabelTag::Cusp: return "Cusp";
    case LabelTag::Lips: return "Lips";
    case LabelTag::Beaks: return "Beaks";
    case LabelTag::Swallowtail: return "Swallowtail";
    case LabelTag::Butterfly6: return "Butterfly6";
    case LabelTag::Type7: return "Type7";
    case LabelTag::DegenerateXk: return "DegenerateXk";
    case LabelTag::Gulls11_5: return "Gulls11_5";
    case LabelTag::Type11_7: return "Type11_7";
    case LabelTag::GullsDegenerate: return "GullsDegenerate";
    case LabelTag::DegenerateCorank1: return "DegenerateCorank1";
    case LabelTag::Corank2Parabolic: return "Corank2Parabolic";
    case LabelTag::Corank2Inflection: return "Corank2Inflection";
    case LabelTag::DegenerateCorank2: return "DegenerateCorank2";
    case LabelTag::Uncertain: return "Uncertain";
  }
  return "Unknown";
}

template <class S>
std::string Recognition<S>::label() const {
  if (tag == LabelTag::DegenerateXk) return "DegenerateXk(" + std::to_string(k) + ")";
  return label_tag_name(tag);
}

template <class S>
MapJet<S> project(const MongeForm<S>& mf, const PlaneSpec<S>& pi) {
  if (pi.tangent) return {mf.f1, mf.f2};
  const S den = pi.mu * pi.mu + pi.beta * pi.beta;
  if (den == 0) throw Error(ErrorKind::InvalidPlane, "mu^2 + beta^2 = 0 for a transverse plane");
  const int n = mf.order();
  const BiSeries<S> x = BiSeries<S>::variable(n, 0);
  const BiSeries<S> y = BiSeries<S>::variable(n, 1);
  const S k = pi.lambda / den;
  MapJet<S> r;
  r.p1 = y - x * pi.alpha - (mf.f1 * pi.mu + mf.f2 * pi.beta) * k;
  r.p2 = mf.f1 * pi.beta - mf.f2 * pi.mu;
  return r;
}

template <class S>
BiSeries<S> singular_set_function(const MongeForm<S>& mf, const PlaneSpec<S>& pi) {
  if (pi.tangent) throw Error(ErrorKind::InvalidPlane, "singular set function needs a transverse plane");
  const MapJet<S> p = project(mf, pi);
  return p.p1.derivative(0) * p.p2.derivative(1) - p.p1.derivative(1) * p.p2.derivative(0);
}

template <class S>
GermJet<S> reduce_to_prenormal(const MapJet<S>& jet) {
  BiSeries<S> p1 = jet.p1 - jet.p1(0, 0);
  BiSeries<S> p2 = jet.p2 - jet.p2(0, 0);
  const double scale = std::max(p1.max_abs(), p2.max_abs());
  auto has_linear = [&](const BiSeries<S>& f) { return !is_zero(f(1, 0), scale) || !is_zero(f(0, 1), scale); };
  GermJet<S> germ;
  if (!has_linear(p1)) {
    if (!has_linear(p2)) throw Error(ErrorKind::CorankTwo, "both components have zero linear part");
    std::swap(p1, p2);
    germ.swapped_components = true;
  }
  if (is_zero(p1(0, 1), scale)) {
    p1 = p1.swapped();
    p2 = p2.swapped();
    germ.swapped_variables = true;
  }
  // p1(x, Y(x, s)) = c s, solved with the roles (u, t) = (y, x).
  const int n = p1.order();
  const S c = p1(0, 1);
  const BiSeries<S> Y = invert_series((p1 * (S(1) / c)).swapped()).swapped();
  const BiSeries<S> x = BiSeries<S>::variable(n, 0);
  BiSeries<S> g = p2.compose(x, Y);
  for (int j = 0; j <= n; ++j) g.set(0, j, S(0));
  germ.g = g;
  return germ;
}

namespace {

std::string coeff_key(int i, int j) {
  std::ostringstream os;
  os << "g[" << i << "," << j << "]";
  return os.str();
}

}  // namespace

template <class S>
Recognition<S> recognize_corank1(const GermJet<S>& germ) {
  const BiSeries<S>& g = germ.g;
  // High-order coefficients grow quickly; only the tested range sets the scale.
  const double scale = g.degree_slice(0, 5).max_abs();
  Recognition<S> r;
  // 1 nonzero, 0 zero, -1 inside the float band.
  auto test = [&](int i, int j) {
    const S v = g(i, j);
    r.evidence.emplace_back(coeff_key(i, j), v);
    switch (zero_test(v, scale)) {
      case ZeroTest::NonZero: return 1;
      case ZeroTest::Zero: return 0;
      default: return -1;
    }
  };
  auto test_value = [&](const std::string& name, const S& v, double s) {
    r.evidence.emplace_back(name, v);
    switch (zero_test(v, s)) {
      case ZeroTest::NonZero: return 1;
      case ZeroTest::Zero: return 0;
      default: return -1;
    }
  };
  auto done = [&](LabelTag t) {
    r.tag = t;
    return r;
  };
  int z;
  if ((z = test(1, 0)) != 0) return done(z > 0 ? LabelTag::Immersion : LabelTag::Uncertain);
  if ((z = test(2, 0)) != 0) return done(z > 0 ? LabelTag::Fold : LabelTag::Uncertain);
  if ((z = test(1, 1)) < 0) return done(LabelTag::Uncertain);
  if (z > 0) {
    if ((z = test(3, 0)) != 0) return done(z > 0 ? LabelTag::Cusp : LabelTag::Uncertain);
    if ((z = test(4, 0)) != 0) return done(z > 0 ? LabelTag::Swallowtail : LabelTag::Uncertain);
    if ((z = test(5, 0)) < 0) return done(LabelTag::Uncertain);
    if (z > 0) {
      if (g.order() < 7) return done(LabelTag::Uncertain);
      // Type 7 test on the x^i y^j coefficients c(i,j):
      // (8 c50 c70 - 5 c60^2) c11^2 + 2 c50 (c21 c60 - 20 c31 c50) c11 + 35 c21^2 c50^2.
      const S c11 = g(1, 1), c21 = g(2, 1), c31 = g(3, 1), c50 = g(5, 0), c60 = g(6, 0), c70 = g(7, 0);
      const S t7 = (S(8) * c50 * c70 - S(5) * c60 * c60) * c11 * c11 +
                   S(2) * c50 * (c21 * c60 - S(20) * c31 * c50) * c11 + S(35) * c21 * c21 * c50 * c50;
      r.evidence.emplace_back(coeff_key(2, 1), c21);
      r.evidence.emplace_back(coeff_key(3, 1), c31);
      r.evidence.emplace_back(coeff_key(6, 0), c60);
      r.evidence.emplace_back(coeff_key(7, 0), c70);
      auto d = [](const S& v) { return std::abs(to_double(v)); };
      const double s4 = d(c11) * d(c11) * (8 * d(c50) * d(c70) + 5 * d(c60) * d(c60)) +
                        2 * d(c50) * d(c11) * (d(c21) * d(c60) + 20 * d(c31) * d(c50)) +
                        35 * d(c21) * d(c21) * d(c50) * d(c50);
      if ((z = test_value("type7", t7, s4)) < 0) return done(LabelTag::Uncertain);
      return done(z == 0 ? LabelTag::Type7 : LabelTag::Butterfly6);
    }
    for (int k = 6; k <= g.order(); ++k) {
      if ((z = test(k, 0)) < 0) return done(LabelTag::Uncertain);
      if (z > 0) {
        r.k = k;
        return done(LabelTag::DegenerateXk);
      }
    }
    r.k = g.order() + 1;
    return done(LabelTag::DegenerateXk);
  }
  // Zero 2-jet.
  if ((z = test(3, 0)) < 0) return done(LabelTag::Uncertain);
  if (z > 0) {
    const S c30 = g(3, 0), c21 = g(2, 1), c12 = g(1, 2);
    const S disc = c21 * c21 - S(3) * c12 * c30;
    r.evidence.emplace_back(coeff_key(2, 1), c21);
    r.evidence.emplace_back(coeff_key(1, 2), c12);
    const double s2 = std::abs(to_double(c21)) * std::abs(to_double(c21)) +
                      3 * std::abs(to_double(c12)) * std::abs(to_double(c30));
    if ((z = test_value("beaks", disc, s2)) < 0) return done(LabelTag::Uncertain);
    if (z == 0) return done(LabelTag::DegenerateCorank1);
    return done(sign_of(disc, s2) > 0 ? LabelTag::Beaks : LabelTag::Lips);
  }
  if ((z = test(2, 1)) < 0) return done(LabelTag::Uncertain);
  if (z == 0) return done(LabelTag::DegenerateCorank1);
  if ((z = test(4, 0)) < 0) return done(LabelTag::Uncertain);
  if (z == 0) return done(LabelTag::GullsDegenerate);
  {
    const S c21 = g(2, 1), c40 = g(4, 0), c50 = g(5, 0), c31 = g(3, 1), c12 = g(1, 2);
    // Invariant separating 11_5 from 11_7 at weighted degree 5.
    const S i5 = c21 * c21 * c50 - S(2) * c21 * c40 * c31 + S(4) * c40 * c40 * c12;
    r.evidence.emplace_back(coeff_key(5, 0), c50);
    r.evidence.emplace_back(coeff_key(3, 1), c31);
    r.evidence.emplace_back(coeff_key(1, 2), c12);
    auto d = [](const S& v) { return std::abs(to_double(v)); };
    const double s3 = d(c21) * d(c21) * d(c50) + 2 * d(c21) * d(c40) * d(c31) + 4 * d(c40) * d(c40) * d(c12);
    if ((z = test_value("gulls", i5, s3)) < 0) return done(LabelTag::Uncertain);
    return done(z > 0 ? LabelTag::Gulls11_5 : LabelTag::Type11_7);
  }
}

template <class S>
Recognition<S> recognize_corank2(const MapJet<S>& jet, PointTag point_class) {
  std::array<std::array<S, 3>, 2> rows{};
  rows[0] = {jet.p1(2, 0), jet.p1(1, 1), jet.p1(0, 2)};
  rows[1] = {jet.p2(2, 0), jet.p2(1, 1), jet.p2(0, 2)};
  Recognition<S> r;
  const char* names[3] = {"[2,0]", "[1,1]", "[0,2]"};
  for (int c = 0; c < 3; ++c) r.evidence.emplace_back(std::string("p1") + names[c], rows[0][c]);
  for (int c = 0; c < 3; ++c) r.evidence.emplace_back(std::string("p2") + names[c], rows[1][c]);
  const int rank = rank_of(rows);
  r.tag = rank == 2 ? LabelTag::Corank2Parabolic : rank == 1 ? LabelTag::Corank2Inflection : LabelTag::DegenerateCorank2;
  // A rank that contradicts the point class means the float test was unreliable.
  if ((r.tag == LabelTag::Corank2Parabolic && point_class == PointTag::InflectionReal) ||
      (r.tag == LabelTag::Corank2Inflection && point_class == PointTag::Parabolic))
    r.tag = LabelTag::Uncertain;
  return r;
}

template <class S>
Recognition<S> recognize_projection(const MongeForm<S>& mf, const PlaneSpec<S>& pi) {
  const MapJet<S> jet = project(mf, pi);
  if (!pi.tangent) {
    try {
      return recognize_corank1(reduce_to_prenormal(jet));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CorankTwo) throw;
    }
  }
  PointTag cls = PointTag::Uncertain;
  try {
    cls = classify_point(mf);
  } catch (const Error&) {
  }
  return recognize_corank2(jet, cls);
}

template <class S>
std::vector<double> real_roots(const Quadratic<S>& q) {
  const double a = to_double(q.a2), b = to_double(q.a1), c = to_double(q.a0);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  std::vector<double> roots;
  if (is_zero(q.a2, scale)) {
    if (is_zero(q.a1, scale)) return roots;
    roots.push_back(-c / b);
    return roots;
  }
  const S disc = q.discriminant();
  const int s = sign_of(disc, scale * scale);
  if (s < 0) return roots;
  if (s == 0) {
    roots.push_back(-b / (2 * a));
    return roots;
  }
  const double sq = std::sqrt(to_double(disc));
  const double t = -0.5 * (b + (b >= 0 ? sq : -sq));
  double r1 = t / a, r2 = c / t;
  if (r1 > r2) std::swap(r1, r2);
  roots.push_back(r1);
  roots.push_back(r2);
  return roots;
}

template <class S>
Quadratic<S> butterfly_quadratic(const MongeForm<S>& m) {
  const S A = m.a(3, 1) - m.a(2, 1) * m.a(3, 0) - m.a(2, 1) * m.b(2, 1) - m.b(2, 2);
  const S B = m.a(4, 0) - m.a(3, 0) * m.a(3, 0) + m.b(2, 1) * m.b(2, 1) - m.b(3, 1);
  const S C = m.b(4, 0) - m.b(2, 1) * m.b(3, 0) - m.a(3, 0) * m.b(3, 0);
  return {A, B, -C};
}

template <class S>
Quadratic<S> legacy_quadratic(const MongeForm<S>& m) {
  Quadratic<S> q = butterfly_quadratic(m);
  q.a1 = q.a1 * S(-2);
  return q;
}

template <class S>
S lambda_on_c(const MongeForm<S>& m, const S& alpha) {
  return m.a(2, 1) * alpha + m.a(3, 0) - m.b(2, 1) - m.b(3, 0) / alpha;
}

template <class S>
ButterflyPlanes<S> butterfly_planes(const MongeForm<S>& m) {
  const Quadratic<S> q = butterfly_quadratic(m);
  ButterflyPlanes<S> r;
  r.A = q.a2;
  r.B = q.a1;
  r.C = -q.a0;
  r.discriminant = r.B * r.B + S(4) * r.A * r.C;
  const double scale = std::max({std::abs(to_double(r.A)), std::abs(to_double(r.B)), std::abs(to_double(r.C))});
  if (is_zero(r.A, scale)) {
    if (is_zero(r.B, scale)) throw Error(ErrorKind::DegenerateQuadratic, "A = B = 0");
  } else {
    const int s = sign_of(r.discriminant, scale * scale);
    if (s < 0) throw Error(ErrorKind::EllipticPoint, "no real butterfly directions");
    if (s == 0) throw Error(ErrorKind::ParabolicTangency, "double butterfly direction");
  }
  for (double alpha : real_roots(q)) {
    if (alpha == 0.0) continue;  // mu = 1/alpha is undefined; the plane is not on C
    r.roots.push_back(alpha);
    const MongeForm<double> md = m.template cast<double>();
    r.planes.push_back(PlaneSpec<double>::make(alpha, 1.0, lambda_on_c(md, alpha), 1.0 / alpha));
  }
  return r;
}

template <class S>
std::vector<SpecialPlane<S>> special_planes_at_inflection(const MongeForm<S>& mf) {
  const SecondFundamental<S> sf = second_fundamental(mf);
  double scale = 0.0;
  for (const S* v : {&sf.a, &sf.b, &sf.l, &sf.m}) scale = std::max(scale, std::abs(to_double(*v)));
  if (!is_zero(point_invariants(sf).kappa, scale * scale))
    throw Error(ErrorKind::NotInflection, "basepoint is parabolic");
  std::vector<SpecialPlane<S>> out;
  const std::pair<S, S> candidates[2] = {{mf.b(2, 0), mf.a(2, 0)}, {mf.b(1, 1), mf.a(1, 1)}};
  bool any = false;
  for (int branch = 1; branch <= 2; ++branch) {
    SpecialPlane<S> sp;
    sp.branch = branch;
    sp.beta = candidates[branch - 1].first;
    sp.mu = candidates[branch - 1].second;
    if (is_zero(sp.beta, scale) && is_zero(sp.mu, scale)) {
      sp.degenerate = true;
      sp.D = S(0);
      out.push_back(sp);
      continue;
    }
    // The quadratic part of g does not depend on alpha or lambda here.
    const BiSeries<S> g = singular_set_function(mf, PlaneSpec<S>::make(S(0), sp.beta, S(0), sp.mu));
    sp.D = g(1, 1) * g(1, 1) - S(4) * g(2, 0) * g(0, 2);
    sp.degenerate = sign_of(sp.D, std::pow(g.max_abs(), 2)) <= 0;
    any = any || !sp.degenerate;
    out.push_back(sp);
  }
  if (!any) throw Error(ErrorKind::BothBranchesDegenerate, "no special plane with a Morse singular set");
  return out;
}

#define RULED4_INSTANTIATE(S)                                                                 \
  template struct Recognition<S>;                                                             \
  template MapJet<S> project(const MongeForm<S>&, const PlaneSpec<S>&);                       \
  template BiSeries<S> singular_set_function(const MongeForm<S>&, const PlaneSpec<S>&);       \
  template GermJet<S> reduce_to_prenormal(const MapJet<S>&);                                  \
  template Recognition<S> recognize_corank1(const GermJet<S>&);                               \
  template Recognition<S> recognize_corank2(const MapJet<S>&, PointTag);                      \
  template Recognition<S> recognize_projection(const MongeForm<S>&, const PlaneSpec<S>&);     \
  template std::vector<double> real_roots(const Quadratic<S>&);                               \
  template Quadratic<S> butterfly_quadratic(const MongeForm<S>&);                             \
  template Quadratic<S> legacy_quadratic(const MongeForm<S>&);                              \
  template S lambda_on_c(const MongeForm<S>&, const S&);                                      \
  template ButterflyPlanes<S> butterfly_planes(const MongeForm<S>&);                          \
  template std::vector<SpecialPlane<S>> special_planes_at_inflection(const MongeForm<S>&);

RULED4_INSTANTIATE(Rational)
RULED4_INSTANTIATE(double)

}  // namespace ruled4
