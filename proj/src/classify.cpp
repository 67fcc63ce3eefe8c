#include "ruled4/classify.hpp"

namespace ruled4 {

const char* point_tag_name(PointTag t) {
  switch (t) {
    case PointTag::Parabolic: return "Parabolic";
    case PointTag::InflectionReal: return "InflectionReal";
    case PointTag::InflectionFlat: return "InflectionFlat";
    case PointTag::InflectionImaginary: return "InflectionImaginary";
    case PointTag::Uncertain: return "Uncertain";
  }
  return "Unknown";
}

template <class S>
SecondFundamental<S> second_fundamental(const MongeForm<S>& mf) {
  SecondFundamental<S> sf;
  sf.a = mf.b(2, 0);
  sf.b = mf.b(1, 1) / S(2);
  sf.c = mf.b(0, 2);
  sf.l = mf.a(2, 0);
  sf.m = mf.a(1, 1) / S(2);
  sf.n = mf.a(0, 2);
  return sf;
}

template <class S>
PointInvariants<S> point_invariants(const SecondFundamental<S>& sf) {
  PointInvariants<S> r;
  const S an_cl = sf.a * sf.n - sf.c * sf.l;
  r.delta = an_cl * an_cl - S(4) * (sf.a * sf.m - sf.b * sf.l) * (sf.b * sf.n - sf.c * sf.m);
  r.K = sf.a * sf.c - sf.b * sf.b + sf.l * sf.n - sf.m * sf.m;
  r.kappa = (sf.a - sf.c) * sf.m - (sf.l - sf.n) * sf.b;
  return r;
}

namespace {

template <class S>
double second_order_scale(const SecondFundamental<S>& sf) {
  double s = 0.0;
  for (const S* v : {&sf.a, &sf.b, &sf.c, &sf.l, &sf.m, &sf.n}) s = std::max(s, std::abs(to_double(*v)));
  return s * s;
}

}  // namespace

template <class S>
PointTag classify_point(const MongeForm<S>& mf) {
  const SecondFundamental<S> sf = second_fundamental(mf);
  const PointInvariants<S> inv = point_invariants(sf);
  const double scale = second_order_scale(sf);
  if (sign_of(inv.K, scale) >= 0) throw Error(ErrorKind::UnexpectedClass, "K >= 0: the ruling is not regular");
  switch (zero_test(inv.kappa, scale)) {
    case ZeroTest::Zero: return PointTag::InflectionReal;
    case ZeroTest::Uncertain: return PointTag::Uncertain;
    case ZeroTest::NonZero: return PointTag::Parabolic;
  }
  return PointTag::Uncertain;
}

template <class S>
S inflection_on_ruling(const AdaptedChart<S>& c) {
  const S det = c.n[1] * c.q[2] - c.n[2] * c.q[1];
  double scale = 0.0;
  for (int k = 1; k <= 2; ++k)
    scale = std::max({scale, std::abs(to_double(c.n[k])), std::abs(to_double(c.q[k]))});
  if (is_zero(det, scale * scale))
    throw Error(ErrorKind::DegenerateRuling, "n1 q2 - n2 q1 = 0");
  return -(c.d[2] * c.n[1] - c.l[2] * c.q[1]) / det;
}

template <class S>
InflectionJet<S> inflection_curve_jet(const MongeForm<S>& mf) {
  const SecondFundamental<S> sf = second_fundamental(mf);
  const PointInvariants<S> inv = point_invariants(sf);
  if (!is_zero(inv.kappa, second_order_scale(sf)))
    throw Error(ErrorKind::NotInflection, "basepoint is not an inflection point");
  InflectionJet<S> j;
  j.c1 = S(2) * (mf.a(2, 0) * mf.b(2, 1) - mf.a(2, 1) * mf.b(2, 0)) +
         S(3) * (mf.a(3, 0) * mf.b(1, 1) - mf.a(1, 1) * mf.b(3, 0));
  j.c2 = mf.a(2, 1) * mf.b(1, 1) - mf.a(1, 1) * mf.b(2, 1);
  return j;
}

template <class S>
BiSeries<S> kappa_field(const MongeForm<S>& mf) {
  const S half = S(1) / S(2);
  auto d2 = [](const BiSeries<S>& f, int v1, int v2) { return f.derivative(v1).derivative(v2); };
  const BiSeries<S> a = d2(mf.f2, 0, 0) * half, b = d2(mf.f2, 0, 1) * half, c = d2(mf.f2, 1, 1) * half;
  const BiSeries<S> l = d2(mf.f1, 0, 0) * half, m = d2(mf.f1, 0, 1) * half, n = d2(mf.f1, 1, 1) * half;
  return (a - c) * m - (l - n) * b;
}

template <class S>
std::array<S, 3> asymptotic_directions(const SecondFundamental<S>& sf) {
  return {sf.a * sf.m - sf.b * sf.l, sf.a * sf.n - sf.c * sf.l, sf.b * sf.n - sf.c * sf.m};
}

#define RULED4_INSTANTIATE(S)                                                       \
  template SecondFundamental<S> second_fundamental(const MongeForm<S>&);            \
  template PointInvariants<S> point_invariants(const SecondFundamental<S>&);        \
  template PointTag classify_point(const MongeForm<S>&);                            \
  template S inflection_on_ruling(const AdaptedChart<S>&);                          \
  template InflectionJet<S> inflection_curve_jet(const MongeForm<S>&);              \
  template BiSeries<S> kappa_field(const MongeForm<S>&);                            \
  template std::array<S, 3> asymptotic_directions(const SecondFundamental<S>&);

RULED4_INSTANTIATE(Rational)
RULED4_INSTANTIATE(double)

}  // namespace ruled4
