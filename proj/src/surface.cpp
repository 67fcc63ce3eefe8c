#include "ruled4/surface.hpp"

namespace ruled4 {

template <class S>
RuledSurface<S> RuledSurface<S>::from_coefficients(const std::array<std::vector<S>, 4>& x,
                                                   const std::array<std::vector<S>, 4>& e) {
  RuledSurface s;
  for (int i = 0; i < 4; ++i) {
    s.base[i] = UniSeries<S>::polynomial(x[i].empty() ? std::vector<S>{S(0)} : x[i]);
    s.director[i] = UniSeries<S>::polynomial(e[i].empty() ? std::vector<S>{S(0)} : e[i]);
  }
  return s;
}

template <class S>
int RuledSurface<S>::degree() const {
  int d = 0;
  for (int i = 0; i < 4; ++i) d = std::max({d, base[i].order(), director[i].order()});
  return d;
}

template <class S>
Vec4<S> RuledSurface<S>::x_at(const S& u) const {
  Vec4<S> r;
  for (int i = 0; i < 4; ++i) r[i] = base[i].evaluate(u);
  return r;
}

template <class S>
Vec4<S> RuledSurface<S>::e_at(const S& u) const {
  Vec4<S> r;
  for (int i = 0; i < 4; ++i) r[i] = director[i].evaluate(u);
  return r;
}

template <class S>
Vec4<S> RuledSurface<S>::point(const S& u, const S& t) const {
  Vec4<S> r;
  for (int i = 0; i < 4; ++i) r[i] = base[i].evaluate(u) + t * director[i].evaluate(u);
  return r;
}

namespace {

template <class S>
Vec4<S> derivative_at(const std::array<UniSeries<S>, 4>& c, const S& u, int k) {
  Vec4<S> r;
  for (int i = 0; i < 4; ++i) {
    UniSeries<S> f = c[i];
    for (int j = 0; j < k; ++j) f = f.derivative();
    r[i] = f.evaluate(u);
  }
  return r;
}

template <class S>
bool independent(const Vec4<S>& a, const Vec4<S>& b) {
  std::array<std::array<S, 4>, 2> rows{a, b};
  return rank_of(rows) == 2;
}

template <class S>
bool is_null(const Vec4<S>& v) {
  double scale = 0.0;
  for (const S& c : v) scale = std::max(scale, std::abs(to_double(c)));
  for (const S& c : v)
    if (!is_zero(c, scale)) return false;
  return true;
}

}  // namespace

template <class S>
Vec4<S> RuledSurface<S>::x_derivative(const S& u, int k) const {
  return derivative_at(base, u, k);
}

template <class S>
Vec4<S> RuledSurface<S>::e_derivative(const S& u, int k) const {
  return derivative_at(director, u, k);
}

template <class S>
template <class T>
RuledSurface<T> RuledSurface<S>::cast() const {
  RuledSurface<T> r;
  for (int i = 0; i < 4; ++i) {
    r.base[i] = base[i].template cast<T>();
    r.director[i] = director[i].template cast<T>();
  }
  return r;
}

template <class S>
AdaptedChart<S> AdaptedChart<S>::from_coefficients(int order, const std::vector<S>& l, const std::vector<S>& d,
                                                   const std::vector<S>& m, const std::vector<S>& n,
                                                   const std::vector<S>& q) {
  AdaptedChart c;
  c.order = order;
  c.l = UniSeries<S>(order, l);
  c.d = UniSeries<S>(order, d);
  c.m = UniSeries<S>(order, m);
  c.n = UniSeries<S>(order, n);
  c.q = UniSeries<S>(order, q);
  return c;
}

template <class S>
RuledSurface<S> AdaptedChart<S>::surface() const {
  RuledSurface<S> s;
  s.base[0] = UniSeries<S>::variable(order);
  s.base[1] = UniSeries<S>(order);
  s.base[2] = l;
  s.base[3] = d;
  s.director[0] = m;
  s.director[1] = UniSeries<S>(order, {S(1)});
  s.director[2] = n;
  s.director[3] = q;
  return s;
}

template <class S>
template <class T>
MongeForm<T> MongeForm<S>::cast() const {
  MongeForm<T> r;
  r.f1 = f1.template cast<T>();
  r.f2 = f2.template cast<T>();
  r.u0 = convert_scalar<T>(u0);
  r.t0 = convert_scalar<T>(t0);
  if (frame) {
    Frame<T> f;
    for (int i = 0; i < 4; ++i) {
      f.origin[i] = convert_scalar<T>(frame->origin[i]);
      for (int j = 0; j < 4; ++j) f.linear[i][j] = convert_scalar<T>(frame->linear[i][j]);
    }
    r.frame = f;
  }
  return r;
}

template <class S>
BiSeries<S> compose_uni(const UniSeries<S>& f, const BiSeries<S>& u) {
  const int n = u.order();
  BiSeries<S> r(n);
  for (int k = std::min(n, f.order()); k >= 0; --k) r = r * u + f[k];
  return r;
}

template <class S>
AdaptedChart<S> adapt_chart(const RuledSurface<S>& s, const S& u0, int order) {
  const int n = std::max(order, 2);
  std::array<UniSeries<S>, 4> X, E;
  for (int i = 0; i < 4; ++i) {
    X[i] = s.base[i].shifted(u0).with_order(n);
    X[i].set(0, S(0));
    E[i] = s.director[i].shifted(u0).with_order(n);
  }
  Vec4<S> x1, e0, e1;
  for (int i = 0; i < 4; ++i) {
    x1[i] = X[i][1];
    e0[i] = E[i][0];
    e1[i] = E[i][1];
  }
  if (is_null(e0)) throw Error(ErrorKind::SingularRuling, "director vanishes at u0");
  if (!independent(x1, e0)) {
    if (is_null(x1) && is_null(e1)) throw Error(ErrorKind::SingularRuling, "x'(u0) = e'(u0) = 0");
    throw Error(ErrorKind::DependentFrame, "x'(u0) is parallel to e(u0)");
  }

  // Columns x'(0), e(0), then standard vectors completing a basis.
  std::array<Vec4<S>, 4> cols{x1, e0, Vec4<S>{}, Vec4<S>{}};
  int filled = 2;
  for (int cand : {2, 3, 0, 1}) {
    if (filled == 4) break;
    Vec4<S> std_vec{};
    std_vec[cand] = S(1);
    std::array<std::array<S, 4>, 4> rows{};
    for (int k = 0; k < filled; ++k) rows[k] = cols[k];
    rows[filled] = std_vec;
    for (int k = filled + 1; k < 4; ++k) rows[k] = Vec4<S>{};
    if (rank_of(rows) == filled + 1) cols[filled++] = std_vec;
  }
  Mat4<S> M{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M[i][j] = cols[j][i];
  auto Linv = invert(M);
  if (!Linv) throw Error(ErrorKind::DependentFrame, "could not complete the frame");
  const Mat4<S>& L = *Linv;

  std::array<UniSeries<S>, 4> Xy, Ey;
  for (int i = 0; i < 4; ++i) {
    Xy[i] = UniSeries<S>(n);
    Ey[i] = UniSeries<S>(n);
    for (int j = 0; j < 4; ++j) {
      Xy[i] = Xy[i] + X[j] * L[i][j];
      Ey[i] = Ey[i] + E[j] * L[i][j];
    }
  }
  // Exact values fixed by construction (removes float residue).
  Xy[0].set(1, S(1));
  for (int i = 1; i < 4; ++i) Xy[i].set(1, S(0));
  for (int i = 0; i < 4; ++i) Ey[i].set(0, S(i == 1 ? 1 : 0));

  // e~ = e / e_2, x~ = x - x_2 e~.
  const UniSeries<S> r = Ey[1].reciprocal();
  std::array<UniSeries<S>, 4> Et, Xt;
  for (int i = 0; i < 4; ++i) Et[i] = Ey[i] * r;
  Et[1] = UniSeries<S>(n, {S(1)});
  for (int i = 0; i < 4; ++i) Xt[i] = Xy[i] - Xy[1] * Et[i];
  Xt[1] = UniSeries<S>(n);

  // Shear of the xzw-hyperplane removing m_1.
  S c3(0), c4(0);
  const S m1 = Et[0][1], n1 = Et[2][1], q1 = Et[3][1];
  if (m1 != 0) {
    const S den = n1 * n1 + q1 * q1;
    if (is_zero(den, std::max(1.0, std::abs(to_double(m1))))) {
      throw Error(ErrorKind::SingularRuling, "e'(u0) is parallel to x'(u0) (n1 = q1 = 0)");
    }
    c3 = m1 * n1 / den;
    c4 = m1 * q1 / den;
  }
  UniSeries<S> X1 = Xt[0] - Xt[2] * c3 - Xt[3] * c4;
  UniSeries<S> em = Et[0] - Et[2] * c3 - Et[3] * c4;
  X1.set(0, S(0));
  X1.set(1, S(1));
  em.set(0, S(0));
  em.set(1, S(0));

  // Reparametrise so that x_1(u) = u.
  const UniSeries<S> phi = X1.revert();
  AdaptedChart<S> chart;
  chart.order = n;
  chart.u0 = u0;
  chart.l = Xt[2].compose(phi);
  chart.d = Xt[3].compose(phi);
  chart.m = em.compose(phi);
  chart.n = Et[2].compose(phi);
  chart.q = Et[3].compose(phi);
  for (UniSeries<S>* f : {&chart.l, &chart.d}) {
    f->set(0, S(0));
    f->set(1, S(0));
  }
  for (UniSeries<S>* f : {&chart.m, &chart.n, &chart.q}) f->set(0, S(0));
  chart.m.set(1, S(0));

  Mat4<S> Hinv = identity4<S>();
  Hinv[0][2] = c3;
  Hinv[0][3] = c4;
  chart.frame.origin = s.x_at(u0);
  chart.frame.linear = mat_mul(M, Hinv);
  return chart;
}

template <class S>
MongeForm<S> monge_form(const AdaptedChart<S>& chart, const S& t0, int order) {
  const int n = order;
  const BiSeries<S> x = BiSeries<S>::variable(n, 0);
  const BiSeries<S> y = BiSeries<S>::variable(n, 1);
  const BiSeries<S> t = y + t0;
  const UniSeries<S> m = chart.m.with_order(n);
  const UniSeries<S> nn = chart.n.with_order(n);
  const UniSeries<S> q = chart.q.with_order(n);
  const UniSeries<S> l = chart.l.with_order(n);
  const UniSeries<S> d = chart.d.with_order(n);
  if (m[0] != 0 || nn[0] != 0 || q[0] != 0 || l[0] != 0 || d[0] != 0 || l[1] != 0 || d[1] != 0)
    throw Error(ErrorKind::DependentFrame, "chart is not in adapted form");

  // X = u + t m(u) in the variables (u, y); invert for u(x, y).
  BiSeries<S> x_of_u = x + t * compose_uni(m, x);
  const S lin = x_of_u(1, 0);
  if (is_zero(lin)) throw Error(ErrorKind::NotSmooth, "F_u and F_t are dependent at (0, t0)");
  if (lin != 1) throw Error(ErrorKind::DependentFrame, "chart is not in adapted form (m1 != 0)");
  const BiSeries<S> U = invert_series(x_of_u);

  const BiSeries<S> g1 = compose_uni(l, U) + t * compose_uni(nn, U);
  const BiSeries<S> g2 = compose_uni(d, U) + t * compose_uni(q, U);

  MongeForm<S> mf;
  mf.f1 = g1.degree_slice(2, n);
  mf.f2 = g2.degree_slice(2, n);
  mf.u0 = chart.u0;
  mf.t0 = t0;

  // Monge (x, y, z, w) -> chart (x, y + t0, z + lin(g1), w + lin(g2)).
  Mat4<S> K = identity4<S>();
  K[2][0] = g1(1, 0);
  K[2][1] = g1(0, 1);
  K[3][0] = g2(1, 0);
  K[3][1] = g2(0, 1);
  Vec4<S> shift{S(0), t0, g1(0, 0), g2(0, 0)};
  mf.frame = chart.frame.compose(K, shift);
  return mf;
}

template <class S>
bool is_smooth_point(const RuledSurface<S>& s, const S& u0, const S& t0) {
  Vec4<S> fu = s.x_derivative(u0, 1);
  Vec4<S> de = s.e_derivative(u0, 1);
  for (int i = 0; i < 4; ++i) fu[i] += t0 * de[i];
  return independent(fu, s.e_at(u0));
}

template <class S>
std::pair<AdaptedChart<S>, S> chart_at(const RuledSurface<S>& s, const S& u0, const S& t0, int order) {
  if (!is_smooth_point(s, u0, t0)) throw Error(ErrorKind::NotSmooth, "F is not immersive at the requested point");
  try {
    return {adapt_chart(s, u0, order), t0};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DependentFrame) throw;
  }
  RuledSurface<S> r = s;
  for (int i = 0; i < 4; ++i) {
    UniSeries<S> base = s.base[i];
    UniSeries<S> dir = s.director[i];
    const int deg = std::max(base.order(), dir.order());
    r.base[i] = base.with_order(deg) + dir.with_order(deg) * t0;
  }
  return {adapt_chart(r, u0, order), S(0)};
}

#define RULED4_INSTANTIATE(S)                                                                          \
  template struct RuledSurface<S>;                                                                     \
  template struct AdaptedChart<S>;                                                                     \
  template struct MongeForm<S>;                                                                        \
  template AdaptedChart<S> adapt_chart(const RuledSurface<S>&, const S&, int);                         \
  template MongeForm<S> monge_form(const AdaptedChart<S>&, const S&, int);                             \
  template bool is_smooth_point(const RuledSurface<S>&, const S&, const S&);                           \
  template std::pair<AdaptedChart<S>, S> chart_at(const RuledSurface<S>&, const S&, const S&, int);    \
  template BiSeries<S> compose_uni(const UniSeries<S>&, const BiSeries<S>&);

RULED4_INSTANTIATE(Rational)
RULED4_INSTANTIATE(double)

template RuledSurface<double> RuledSurface<Rational>::cast<double>() const;
template RuledSurface<Rational> RuledSurface<Rational>::cast<Rational>() const;
template MongeForm<double> MongeForm<Rational>::cast<double>() const;
template MongeForm<double> MongeForm<double>::cast<double>() const;

}  // namespace ruled4
