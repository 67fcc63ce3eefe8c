#pragma once

// Shared generators and independent oracles for the unit tests.

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "ruled4/classify.hpp"
#include "ruled4/projection.hpp"
#include "ruled4/surface.hpp"

namespace testing {

using Q = ruled4::Rational;
using ruled4::AdaptedChart;
using ruled4::BiSeries;
using ruled4::MongeForm;
using ruled4::RuledSurface;

/// Seeded generator of small rationals and reals.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  /// p/q in [-bound, bound] with q <= den.
  Q rational(int bound = 2, int den = 4) {
    const int q = integer(1, den);
    Q r(integer(-bound * q, bound * q), q);
    r.canonicalize();
    return r;
  }
  Q nonzero_rational(int bound = 2, int den = 4) {
    for (;;) {
      Q r = rational(bound, den);
      if (r != 0) return r;
    }
  }
};

/// Dense map-based bivariate polynomial, truncated at `order`. Deliberately
/// naive: it is the reference the series engine is checked against.
struct NPoly {
  int order;
  std::map<std::pair<int, int>, Q> c;

  explicit NPoly(int n) : order(n) {}
  static NPoly var(int n, int v) {
    NPoly p(n);
    p.c[v == 0 ? std::make_pair(1, 0) : std::make_pair(0, 1)] = 1;
    return p;
  }
  static NPoly constant(int n, const Q& v) {
    NPoly p(n);
    p.c[{0, 0}] = v;
    return p;
  }
  Q at(int i, int j) const {
    auto it = c.find({i, j});
    return it == c.end() ? Q(0) : it->second;
  }
  NPoly operator+(const NPoly& o) const {
    NPoly r = *this;
    for (const auto& [k, v] : o.c) r.c[k] += v;
    return r;
  }
  NPoly operator-(const NPoly& o) const {
    NPoly r = *this;
    for (const auto& [k, v] : o.c) r.c[k] -= v;
    return r;
  }
  NPoly operator*(const Q& s) const {
    NPoly r = *this;
    for (auto& [k, v] : r.c) v *= s;
    return r;
  }
  NPoly operator*(const NPoly& o) const {
    NPoly r(order);
    for (const auto& [ka, va] : c)
      for (const auto& [kb, vb] : o.c) {
        const int i = ka.first + kb.first, j = ka.second + kb.second;
        if (i + j <= order) r.c[{i, j}] += va * vb;
      }
    return r;
  }
  /// Univariate polynomial in `x` (coefficient list) evaluated on this.
  static NPoly apply(const std::vector<Q>& coeffs, const NPoly& x) {
    NPoly r(x.order), pw = constant(x.order, 1);
    for (const Q& a : coeffs) {
      r = r + pw * a;
      pw = pw * x;
    }
    return r;
  }
  /// this(u, v) by repeated multiplication.
  NPoly compose(const NPoly& u, const NPoly& v) const {
    NPoly r(order);
    for (const auto& [k, a] : c) {
      NPoly term = constant(order, a);
      for (int s = 0; s < k.first; ++s) term = term * u;
      for (int s = 0; s < k.second; ++s) term = term * v;
      r = r + term;
    }
    return r;
  }
  template <class S>
  BiSeries<S> to_series() const {
    BiSeries<S> s(order);
    for (const auto& [k, v] : c)
      if (k.first + k.second <= order) s.set(k.first, k.second, ruled4::from_rational<S>(v));
    return s;
  }
  static NPoly from_series(const BiSeries<Q>& s) {
    NPoly p(s.order());
    for (int i = 0; i <= s.order(); ++i)
      for (int j = 0; i + j <= s.order(); ++j)
        if (s(i, j) != 0) p.c[{i, j}] = s(i, j);
    return p;
  }
  NPoly slice_from(int lo) const {
    NPoly r(order);
    for (const auto& [k, v] : c)
      if (k.first + k.second >= lo) r.c[k] = v;
    return r;
  }
  bool operator==(const NPoly& o) const {
    NPoly d = *this - o;
    for (const auto& [k, v] : d.c)
      if (v != 0) return false;
    return true;
  }
};

/// Named chart coefficients; index = power of u.
struct ChartSpec {
  Q l2, l3, d2, d3, m2, m3, n1, n2, n3, q1, q2, q3;
};

inline AdaptedChart<Q> make_chart(const ChartSpec& c, int order = ruled4::kDefaultOrder) {
  return AdaptedChart<Q>::from_coefficients(order, {0, 0, c.l2, c.l3}, {0, 0, c.d2, c.d3}, {0, 0, c.m2, c.m3},
                                            {0, c.n1, c.n2, c.n3}, {0, c.q1, c.q2, c.q3});
}

inline ChartSpec random_chart_spec(Gen& g) {
  ChartSpec c;
  for (Q* v : {&c.l2, &c.l3, &c.d2, &c.d3, &c.m2, &c.m3, &c.n1, &c.n2, &c.n3, &c.q1, &c.q2, &c.q3}) *v = g.rational();
  if (c.n1 == 0 && c.q1 == 0) c.q1 = 1;
  return c;
}

/// Monge form of a chart at (0, t0) by the direct route: invert
/// x = u + t m(u) by fixed point, substitute, drop terms below degree 2.
inline std::pair<NPoly, NPoly> monge_oracle(const ChartSpec& c, const Q& t0, int order) {
  const NPoly x = NPoly::var(order, 0), y = NPoly::var(order, 1);
  const NPoly t = y + NPoly::constant(order, t0);
  const std::vector<Q> m{0, 0, c.m2, c.m3}, l{0, 0, c.l2, c.l3}, d{0, 0, c.d2, c.d3};
  const std::vector<Q> n{0, c.n1, c.n2, c.n3}, q{0, c.q1, c.q2, c.q3};
  NPoly u = x;
  for (int it = 0; it <= order + 1; ++it) u = x - t * NPoly::apply(m, u);
  const NPoly f1 = NPoly::apply(l, u) + t * NPoly::apply(n, u);
  const NPoly f2 = NPoly::apply(d, u) + t * NPoly::apply(q, u);
  return {f1.slice_from(2), f2.slice_from(2)};
}

/// Random ruled surface with polynomial curves of degree <= deg and
/// coefficients in [-2, 2].
inline RuledSurface<Q> random_surface(Gen& g, int deg = 5) {
  std::array<std::vector<Q>, 4> x, e;
  for (int i = 0; i < 4; ++i) {
    const int dx = g.integer(1, deg), de = g.integer(1, deg);
    for (int k = 0; k <= dx; ++k) x[i].push_back(g.rational());
    for (int k = 0; k <= de; ++k) e[i].push_back(g.rational());
  }
  return RuledSurface<Q>::from_coefficients(x, e);
}

/// x^4 coefficient of the prenormal germ for the plane on C with direction alpha.
inline Q x4_on_c(const MongeForm<Q>& red, const Q& alpha) {
  const auto pl = ruled4::PlaneSpec<Q>::make(alpha, Q(1), ruled4::lambda_on_c(red, alpha), Q(1) / alpha);
  return ruled4::reduce_to_prenormal(ruled4::project(red, pl)).g(4, 0);
}

/// The quadratic alpha * x4(alpha), interpolated from the composed jets at
/// alpha = 1, -1, 2. No closed form is used.
inline std::array<Q, 3> oracle_quadratic(const MongeForm<Q>& red) {
  const Q y1 = x4_on_c(red, Q(1)), ym = -x4_on_c(red, Q(-1)), y2 = 2 * x4_on_c(red, Q(2));
  // y = a2 al^2 + a1 al + a0 through (1, y1), (-1, ym), (2, y2).
  const Q a1 = (y1 - ym) / 2;
  const Q s = (y1 + ym) / 2;  // a2 + a0
  const Q a2 = (y2 - 2 * a1 - s) / 3;
  return {a2, a1, s - a2};
}

/// Number of distinct real roots of a2 x^2 + a1 x + a0 (exact).
inline int real_root_count(const std::array<Q, 3>& q) {
  if (q[0] == 0) return q[1] != 0 ? 1 : 0;
  const Q d = q[1] * q[1] - 4 * q[0] * q[2];
  return d > 0 ? 2 : d == 0 ? 1 : 0;
}

}  // namespace testing
