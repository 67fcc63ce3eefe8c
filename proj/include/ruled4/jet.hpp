#pragma once

// Truncated power series in one and two variables.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ruled4/error.hpp"
#include "ruled4/scalar.hpp"

namespace ruled4 {

inline constexpr int kDefaultOrder = 7;

template <class S>
class UniSeries {
 public:
  UniSeries() : UniSeries(kDefaultOrder) {}
  explicit UniSeries(int order) : order_(order), c_(static_cast<std::size_t>(order) + 1) {}
  UniSeries(int order, const std::vector<S>& coeffs) : UniSeries(order) {
    for (std::size_t k = 0; k < coeffs.size() && k <= static_cast<std::size_t>(order); ++k) c_[k] = coeffs[k];
  }

  /// Polynomial with its own degree as truncation order (exact).
  static UniSeries polynomial(const std::vector<S>& coeffs) {
    return UniSeries(std::max<int>(0, static_cast<int>(coeffs.size()) - 1), coeffs);
  }
  static UniSeries variable(int order) {
    UniSeries r(order);
    if (order >= 1) r.c_[1] = S(1);
    return r;
  }

  int order() const { return order_; }
  S operator[](int k) const { return k >= 0 && k <= order_ ? c_[k] : S(0); }
  void set(int k, const S& v) {
    if (k < 0 || k > order_) throw Error(ErrorKind::OrderMismatch, "index beyond truncation order");
    c_[k] = v;
  }
  const std::vector<S>& coeffs() const { return c_; }

  /// Re-truncates to a new order; raising the order pads with zeros.
  UniSeries with_order(int order) const { return UniSeries(order, c_); }

  UniSeries operator+(const UniSeries& o) const {
    check(o);
    UniSeries r(order_);
    for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
  }
  UniSeries operator-(const UniSeries& o) const {
    check(o);
    UniSeries r(order_);
    for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
  }
  UniSeries operator-() const {
    UniSeries r(order_);
    for (int k = 0; k <= order_; ++k) r.c_[k] = -c_[k];
    return r;
  }
  UniSeries operator*(const S& s) const {
    UniSeries r(order_);
    for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] * s;
    return r;
  }
  UniSeries operator*(const UniSeries& o) const {
    check(o);
    UniSeries r(order_);
    for (int i = 0; i <= order_; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; i + j <= order_; ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
  }

  S evaluate(const S& u) const {
    S acc(0);
    for (int k = order_; k >= 0; --k) acc = acc * u + c_[k];
    return acc;
  }

  UniSeries derivative() const {
    UniSeries r(std::max(order_ - 1, 0));
    for (int k = 1; k <= order_; ++k) r.c_[k - 1] = c_[k] * S(k);
    return r;
  }

  /// f(g) with g(0) = 0.
  UniSeries compose(const UniSeries& g) const {
    check(g);
    if (g.c_[0] != 0) throw Error(ErrorKind::NonzeroConstant, "inner series has a constant term");
    UniSeries r(order_);
    for (int k = order_; k >= 0; --k) {
      r = r * g;
      r.c_[0] += c_[k];
    }
    return r;
  }

  /// 1/f for f(0) != 0.
  UniSeries reciprocal() const {
    if (c_[0] == 0) throw Error(ErrorKind::NonzeroConstant, "reciprocal of a series without constant term");
    UniSeries r(order_);
    S inv0 = S(1) / c_[0];
    r.c_[0] = inv0;
    for (int k = 1; k <= order_; ++k) {
      S acc(0);
      for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -acc * inv0;
    }
    return r;
  }

  /// Compositional inverse of f = a1 u + ..., a1 != 0, f(0) = 0.
  UniSeries revert() const {
    if (c_[0] != 0) throw Error(ErrorKind::NonzeroConstant, "reversion needs f(0) = 0");
    if (order_ < 1 || c_[1] == 0) throw Error(ErrorKind::NonUnitLinear, "reversion needs an invertible linear term");
    S inv1 = S(1) / c_[1];
    UniSeries h = *this * inv1;  // u + ...
    UniSeries x = variable(order_);
    UniSeries g = x;
    for (int it = 0; it <= order_; ++it) g = x - (h - x).compose(g);
    return g.compose(x * inv1);
  }

  /// Exact Taylor shift p(u + u0) for polynomial data.
  UniSeries shifted(const S& u0) const {
    UniSeries r(order_);
    // Horner with (u + u0).
    for (int k = order_; k >= 0; --k) {
      UniSeries t(order_);
      for (int j = 0; j <= order_; ++j) {
        t.c_[j] += r.c_[j] * u0;
        if (j + 1 <= order_) t.c_[j + 1] += r.c_[j];
      }
      t.c_[0] += c_[k];
      r = t;
    }
    return r;
  }

  bool operator==(const UniSeries& o) const { return order_ == o.order_ && c_ == o.c_; }

  template <class T>
  UniSeries<T> cast() const {
    UniSeries<T> r(order_);
    for (int k = 0; k <= order_; ++k) r.set(k, convert_scalar<T>(c_[k]));
    return r;
  }

 private:
  void check(const UniSeries& o) const {
    if (o.order_ != order_) throw Error(ErrorKind::OrderMismatch, "series orders differ");
  }

  int order_;
  std::vector<S> c_;
};

template <class S>
class BiSeries {
 public:
  BiSeries() : BiSeries(kDefaultOrder) {}
  explicit BiSeries(int order) : order_(order < 0 ? 0 : order), c_(size_for(order_)) {}

  static BiSeries constant(int order, const S& v) {
    BiSeries r(order);
    r.c_[0] = v;
    return r;
  }
  /// var 0 is the first variable (x or u), var 1 the second (y, t or v).
  static BiSeries variable(int order, int var) {
    BiSeries r(order);
    if (order >= 1) r.set(var == 0 ? 1 : 0, var == 0 ? 0 : 1, S(1));
    return r;
  }
  static BiSeries monomial(int order, int i, int j, const S& v) {
    BiSeries r(order);
    if (i + j <= order) r.set(i, j, v);
    return r;
  }
  static BiSeries from_uni(const UniSeries<S>& f, int var, int order) {
    BiSeries r(order);
    for (int k = 0; k <= std::min(order, f.order()); ++k) r.set(var == 0 ? k : 0, var == 0 ? 0 : k, f[k]);
    return r;
  }

  int order() const { return order_; }

  /// Coefficient of x^i y^j; zero outside the stored triangle.
  S operator()(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) return S(0);
    return c_[index(i, j)];
  }
  void set(int i, int j, const S& v) {
    if (i < 0 || j < 0 || i + j > order_) throw Error(ErrorKind::OrderMismatch, "index beyond truncation order");
    c_[index(i, j)] = v;
  }
  void add_to(int i, int j, const S& v) {
    if (i + j <= order_) c_[index(i, j)] += v;
  }

  BiSeries with_order(int order) const {
    BiSeries r(order);
    for (int d = 0; d <= std::min(order, order_); ++d)
      for (int j = 0; j <= d; ++j) r.c_[index(d - j, j)] = c_[index(d - j, j)];
    return r;
  }

  /// Keeps only total degrees in [lo, hi].
  BiSeries degree_slice(int lo, int hi) const {
    BiSeries r(order_);
    for (int d = std::max(lo, 0); d <= std::min(hi, order_); ++d)
      for (int j = 0; j <= d; ++j) r.c_[index(d - j, j)] = c_[index(d - j, j)];
    return r;
  }

  /// f(y, x).
  BiSeries swapped() const {
    BiSeries r(order_);
    for (int d = 0; d <= order_; ++d)
      for (int j = 0; j <= d; ++j) r.c_[index(j, d - j)] = c_[index(d - j, j)];
    return r;
  }

  BiSeries operator+(const BiSeries& o) const {
    check(o);
    BiSeries r(order_);
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
  }
  BiSeries operator-(const BiSeries& o) const {
    check(o);
    BiSeries r(order_);
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
  }
  BiSeries operator-() const {
    BiSeries r(order_);
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = -c_[k];
    return r;
  }
  BiSeries operator+(const S& s) const {
    BiSeries r = *this;
    r.c_[0] += s;
    return r;
  }
  BiSeries operator-(const S& s) const {
    BiSeries r = *this;
    r.c_[0] -= s;
    return r;
  }
  BiSeries operator*(const S& s) const {
    BiSeries r(order_);
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] * s;
    return r;
  }
  BiSeries operator*(const BiSeries& o) const {
    check(o);
    BiSeries r(order_);
    for (int d1 = 0; d1 <= order_; ++d1) {
      for (int j1 = 0; j1 <= d1; ++j1) {
        const S& a = c_[index(d1 - j1, j1)];
        if (a == 0) continue;
        for (int d2 = 0; d1 + d2 <= order_; ++d2) {
          for (int j2 = 0; j2 <= d2; ++j2) {
            const S& b = o.c_[index(d2 - j2, j2)];
            if (b == 0) continue;
            r.c_[index(d1 - j1 + d2 - j2, j1 + j2)] += a * b;
          }
        }
      }
    }
    return r;
  }
  BiSeries& operator+=(const BiSeries& o) { return *this = *this + o; }
  BiSeries& operator-=(const BiSeries& o) { return *this = *this - o; }
  BiSeries& operator*=(const S& s) { return *this = *this * s; }

  /// 1/f for f(0,0) != 0.
  BiSeries reciprocal() const {
    if (c_[0] == 0) throw Error(ErrorKind::NonzeroConstant, "reciprocal of a series without constant term");
    S inv0 = S(1) / c_[0];
    BiSeries h = constant(order_, S(1)) - *this * inv0;  // zero constant
    BiSeries r = constant(order_, S(1));
    BiSeries p = r;
    for (int k = 1; k <= order_; ++k) {
      p = p * h;
      r += p;
    }
    return r * inv0;
  }

  /// Formal partial derivative; var 0 = first variable. Order drops by one.
  BiSeries derivative(int var) const {
    BiSeries r(std::max(order_ - 1, 0));
    if (order_ == 0) return r;
    for (int d = 1; d <= order_; ++d) {
      for (int j = 0; j <= d; ++j) {
        int i = d - j;
        if (var == 0 && i > 0) r.c_[index(i - 1, j)] = c_[index(i, j)] * S(i);
        if (var == 1 && j > 0) r.c_[index(i, j - 1)] = c_[index(i, j)] * S(j);
      }
    }
    return r;
  }

  /// f(u(x,y), v(x,y)) truncated at the order of u, v (which must agree).
  BiSeries compose(const BiSeries& u, const BiSeries& v) const {
    u.check(v);
    if (u.c_[0] != 0 || v.c_[0] != 0)
      throw Error(ErrorKind::NonzeroConstant, "substituted series must have zero constant term");
    const int n = u.order_;
    const int top = std::min(order_, n);
    std::vector<BiSeries> up(top + 1, BiSeries(n)), vp(top + 1, BiSeries(n));
    up[0] = constant(n, S(1));
    vp[0] = constant(n, S(1));
    for (int k = 1; k <= top; ++k) {
      up[k] = up[k - 1] * u;
      vp[k] = vp[k - 1] * v;
    }
    BiSeries r(n);
    for (int d = 0; d <= top; ++d) {
      for (int j = 0; j <= d; ++j) {
        const S& a = c_[index(d - j, j)];
        if (a == 0) continue;
        r += (up[d - j] * vp[j]) * a;
      }
    }
    return r;
  }

  S evaluate(const S& x, const S& y) const {
    // Horner in y inside Horner in x.
    S acc(0);
    for (int i = order_; i >= 0; --i) {
      S inner(0);
      for (int j = order_ - i; j >= 0; --j) inner = inner * y + c_[index(i, j)];
      acc = acc * x + inner;
    }
    return acc;
  }

  double max_abs() const {
    double m = 0.0;
    for (const S& v : c_) m = std::max(m, std::abs(to_double(v)));
    return m;
  }

  bool is_zero_series() const {
    for (const S& v : c_)
      if (v != 0) return false;
    return true;
  }

  bool operator==(const BiSeries& o) const { return order_ == o.order_ && c_ == o.c_; }
  bool operator!=(const BiSeries& o) const { return !(*this == o); }

  template <class T>
  BiSeries<T> cast() const {
    BiSeries<T> r(order_);
    for (int d = 0; d <= order_; ++d)
      for (int j = 0; j <= d; ++j) {
        r.set(d - j, j, convert_scalar<T>(c_[index(d - j, j)]));
      }
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d <= order_; ++d)
      for (int j = 0; j <= d; ++j) {
        const S& a = c_[index(d - j, j)];
        if (a == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << a << ")";
        if (d - j > 0) os << "x^" << d - j;
        if (j > 0) os << "y^" << j;
      }
    if (first) os << "0";
    return os.str();
  }

 private:
  static std::size_t size_for(int n) { return static_cast<std::size_t>((n + 1) * (n + 2) / 2); }
  static std::size_t index(int i, int j) {
    int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }
  void check(const BiSeries& o) const {
    if (o.order_ != order_) throw Error(ErrorKind::OrderMismatch, "series orders differ");
  }

  int order_;
  std::vector<S> c_;
};

template <class S>
BiSeries<S> operator*(const S& s, const BiSeries<S>& f) {
  return f * s;
}

template <class S>
std::ostream& operator<<(std::ostream& os, const BiSeries<S>& f) {
  return os << f.str();
}

template <class S>
BiSeries<S> series_mul(const BiSeries<S>& a, const BiSeries<S>& b) {
  return a * b;
}

template <class S>
BiSeries<S> series_compose(const BiSeries<S>& f, const BiSeries<S>& u, const BiSeries<S>& v) {
  return f.compose(u, v);
}

template <class S>
BiSeries<S> partial_derivative(const BiSeries<S>& f, int var) {
  return f.derivative(var);
}

/// Given x(u,t) = u + h(u,t) with h free of constant and u-linear terms,
/// returns u(x,t) with x(u(x,t),t) = x + o(N).
template <class S>
BiSeries<S> invert_series(const BiSeries<S>& x_of_u) {
  const int n = x_of_u.order();
  if (x_of_u(0, 0) != 0) throw Error(ErrorKind::NonzeroConstant, "series to invert has a constant term");
  if (x_of_u(1, 0) != 1) throw Error(ErrorKind::NonUnitLinear, "linear coefficient of u must be 1");
  const BiSeries<S> x = BiSeries<S>::variable(n, 0);
  const BiSeries<S> t = BiSeries<S>::variable(n, 1);
  const BiSeries<S> h = x_of_u - x;
  BiSeries<S> u = x;
  for (int it = 0; it <= n; ++it) u = x - h.compose(u, t);
  return u;
}

}  // namespace ruled4
