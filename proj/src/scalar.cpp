#include "ruled4/scalar.hpp"

#include <atomic>
#include <cstdlib>
#include <cstdio>
#include <stdexcept>

#include "ruled4/error.hpp"

namespace ruled4 {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("RULED4_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-9;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> tau{initial_tolerance()};
  return tau;
}

}  // namespace

double tolerance() { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tolerance must be positive");
  tolerance_slot().store(tau, std::memory_order_relaxed);
}

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ' && c != '_') text.push_back(c);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty number");
  if (text.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw Error(ErrorKind::Parse, "bad rational '" + raw + "'");
    if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + raw + "'");
    q.canonicalize();
    return q;
  }
  // Decimal with optional exponent, converted exactly.
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') neg = text[pos++] == '-';
  mpz_class digits = 0;
  long scale = 0;
  bool any = false, dot = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (dot) --scale;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw Error(ErrorKind::Parse, "bad number '" + raw + "'");
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw Error(ErrorKind::Parse, "bad number '" + raw + "'");
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad exponent in '" + raw + "'");
    }
    if (pos + 1 + used != text.size() || e > 4000 || e < -4000)
      throw Error(ErrorKind::Parse, "bad exponent in '" + raw + "'");
    scale += e;
  }
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale >= 0 ? Rational(digits * ten_pow) : Rational(digits, ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace ruled4
