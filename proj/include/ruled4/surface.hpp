#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ruled4/jet.hpp"
#include "ruled4/linalg.hpp"

namespace ruled4 {

/// F(u,t) = x(u) + t e(u) with polynomial base and director curves.
template <class S>
struct RuledSurface {
  std::array<UniSeries<S>, 4> base;
  std::array<UniSeries<S>, 4> director;

  static RuledSurface from_coefficients(const std::array<std::vector<S>, 4>& x,
                                        const std::array<std::vector<S>, 4>& e);

  int degree() const;
  Vec4<S> x_at(const S& u) const;
  Vec4<S> e_at(const S& u) const;
  Vec4<S> point(const S& u, const S& t) const;
  /// k-th derivative of x and e at u.
  Vec4<S> x_derivative(const S& u, int k) const;
  Vec4<S> e_derivative(const S& u, int k) const;

  template <class T>
  RuledSurface<T> cast() const;
};

/// Coefficient lists of the adapted chart,
///   x(u) = (u, 0, l(u), d(u)),  e(u) = (m(u), 1, n(u), q(u)),
/// with l, d = O(u^2) and m, n, q = O(u) and m_1 = 0. Index k holds the
/// coefficient of u^k. The frame maps chart coordinates to the original R^4.
template <class S>
struct AdaptedChart {
  int order = kDefaultOrder;
  UniSeries<S> l, d, m, n, q;
  Frame<S> frame;
  S u0{};

  /// Chart with identity frame built from coefficient lists (index = power of u).
  static AdaptedChart from_coefficients(int order, const std::vector<S>& l, const std::vector<S>& d,
                                        const std::vector<S>& m, const std::vector<S>& n,
                                        const std::vector<S>& q);
  /// The chart's curves as a ruled surface (truncated at the chart order).
  RuledSurface<S> surface() const;
};

/// Monge form z = f1(x,y), w = f2(x,y) at the chart point (0, t0).
template <class S>
struct MongeForm {
  BiSeries<S> f1, f2;
  S u0{}, t0{};
  /// Maps Monge coordinates (x, y, z, w) to the original R^4 when known.
  std::optional<Frame<S>> frame;

  int order() const { return f1.order(); }
  S a(int i, int j) const { return f1(i, j); }
  S b(int i, int j) const { return f2(i, j); }

  static MongeForm from_series(const BiSeries<S>& f1, const BiSeries<S>& f2) {
    MongeForm mf;
    mf.f1 = f1;
    mf.f2 = f2;
    return mf;
  }

  template <class T>
  MongeForm<T> cast() const;
};

template <class S>
AdaptedChart<S> adapt_chart(const RuledSurface<S>& s, const S& u0, int order = kDefaultOrder);

template <class S>
MongeForm<S> monge_form(const AdaptedChart<S>& chart, const S& t0, int order = kDefaultOrder);

template <class S>
bool is_smooth_point(const RuledSurface<S>& s, const S& u0, const S& t0);

/// adapt_chart at u0, falling back to the directrix x + t0 e when x'(u0) is
/// parallel to e(u0). Returns the chart and the point's t in chart terms.
template <class S>
std::pair<AdaptedChart<S>, S> chart_at(const RuledSurface<S>& s, const S& u0, const S& t0,
                                       int order = kDefaultOrder);

/// f(U) for a univariate f and a bivariate U with zero constant term.
template <class S>
BiSeries<S> compose_uni(const UniSeries<S>& f, const BiSeries<S>& u);

}  // namespace ruled4
