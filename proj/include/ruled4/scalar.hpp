#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <type_traits>

namespace ruled4 {

using Rational = mpq_class;

/// Zero-test tolerance for float mode. Defaults to 1e-9, overridden by the
/// RULED4_TOL environment variable on first use.
double tolerance();
void set_tolerance(double tau);

/// Width of the Uncertain band, as a multiple of tau.
inline constexpr double kUncertainBand = 1000.0;

enum class ZeroTest { Zero, NonZero, Uncertain };

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <class S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return q;
  } else {
    return q.get_d();
  }
}

template <class T, class S>
T convert_scalar(const S& v) {
  if constexpr (std::is_same_v<T, double>) {
    return to_double(v);
  } else {
    return T(v);
  }
}

template <class S>
S from_int(long v) {
  return S(v);
}

template <class S>
const char* scalar_mode_name() {
  if constexpr (is_exact_v<S>) {
    return "rational";
  } else {
    return "f64";
  }
}

/// Exact mode (including GMP expressions) compares with zero. Float mode scales tau by max(1, scale).
template <class S>
ZeroTest zero_test(const S& c, double scale = 1.0) {
  if constexpr (!std::is_arithmetic_v<S>) {
    return sgn(Rational(c)) == 0 ? ZeroTest::Zero : ZeroTest::NonZero;
  } else {
    double s = std::max(1.0, std::abs(scale));
    double a = std::abs(c);
    if (!(a == a)) return ZeroTest::Uncertain;
    if (a <= tolerance() * s) return ZeroTest::Zero;
    if (a <= kUncertainBand * tolerance() * s) return ZeroTest::Uncertain;
    return ZeroTest::NonZero;
  }
}

/// Collapses the three-valued test: only a clear Zero counts.
template <class S>
bool is_zero(const S& c, double scale = 1.0) {
  return zero_test(c, scale) == ZeroTest::Zero;
}

template <class S>
bool is_nonzero(const S& c, double scale = 1.0) {
  return zero_test(c, scale) == ZeroTest::NonZero;
}

/// -1, 0, +1 with tolerance; float values inside the band count as 0.
template <class S>
int sign_of(const S& c, double scale = 1.0) {
  if (zero_test(c, scale) != ZeroTest::NonZero) return 0;
  if constexpr (!std::is_arithmetic_v<S>) {
    return sgn(Rational(c));
  } else {
    return c > 0 ? 1 : -1;
  }
}

template <class S>
S abs_of(const S& c) {
  if constexpr (is_exact_v<S>) {
    return abs(c);
  } else {
    return std::abs(c);
  }
}

/// Parses "3", "-1/2", "0.25" or "1e-3" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);
std::string to_string(double v);

}  // namespace ruled4
