#include <cmath>

#include "ruled4/normalform.hpp"
#include "ruled4/projection.hpp"
#include "support.hpp"

using namespace ruled4;
using testing::ChartSpec;
using testing::Gen;
using testing::make_chart;
using testing::NPoly;
using testing::Q;

namespace {

struct Terms {
  std::vector<std::tuple<int, int, Q>> a, b;
};

MongeForm<Q> jet(int n, const Terms& t) {
  BiSeries<Q> f1(n), f2(n);
  for (const auto& [i, j, v] : t.a) f1.set(i, j, v);
  for (const auto& [i, j, v] : t.b) f2.set(i, j, v);
  return MongeForm<Q>::from_series(f1, f2);
}

// 4-jet normal form plus the given degree-5 terms.
MongeForm<Q> nf4_with(int n, const Q& g40, const Q& g31, const Q& t40, const Terms& extra) {
  Terms t{{{2, 0, Q(1)}, {4, 0, g40}, {3, 1, g31}}, {{1, 1, Q(1)}, {4, 0, t40}}};
  t.a.insert(t.a.end(), extra.a.begin(), extra.a.end());
  t.b.insert(t.b.end(), extra.b.begin(), extra.b.end());
  return jet(n, t);
}

MongeForm<Q> random_reduced(Gen& g, int order) {
  for (;;) {
    const ChartSpec cs = testing::random_chart_spec(g);
    const MongeForm<Q> mf = monge_form(make_chart(cs, order), g.rational(), order);
    if (classify_point(mf) != PointTag::Parabolic) continue;
    return reduce_parabolic(mf);
  }
}

MongeForm<Q> random_nf4_jet(Gen& g, int order) {
  Terms extra;
  for (int d = 5; d <= order; ++d)
    for (int j = 0; j <= d; ++j) {
      extra.a.emplace_back(d - j, j, g.rational());
      extra.b.emplace_back(d - j, j, g.rational());
    }
  return nf4_with(order, g.rational(), g.nonzero_rational(), g.rational(), extra);
}

}  // namespace

TEST_CASE("apply_projective: identity leaves the jet unchanged") {
  Gen g(51);
  const MongeForm<Q> mf = random_reduced(g, 5);
  const MongeForm<Q> out = apply_projective(mf, ProjectiveTransform<Q>::identity(), 5);
  CHECK(out.f1 == mf.f1);
  CHECK(out.f2 == mf.f2);
}

TEST_CASE("apply_projective: projective shear against substitution") {
  // T sends new coordinates to old ones: (X, Y, Z, W) / (1 + c X) lies on
  // the old graph, so g(X, Y) = f(X / (1 + c X), Y / (1 + c X)) (1 + c X).
  Gen g(52);
  const int n = 4;
  for (int trial = 0; trial < 10; ++trial) {
    const MongeForm<Q> mf = random_reduced(g, n);
    const Q c = g.nonzero_rational();
    ProjectiveTransform<Q> T;
    T.p1 = c;
    const MongeForm<Q> out = apply_projective(mf, T, n);

    const NPoly X = NPoly::var(n, 0), Y = NPoly::var(n, 1);
    NPoly inv = NPoly::constant(n, 1), pw = NPoly::constant(n, 1);
    for (int k = 1; k <= n; ++k) {
      pw = pw * X * (-c);
      inv = inv + pw;
    }
    const NPoly p = NPoly::constant(n, 1) + X * c;
    const NPoly x = X * inv, y = Y * inv;
    CHECK(NPoly::from_series(out.f1) == NPoly::from_series(mf.f1).compose(x, y) * p);
    CHECK(NPoly::from_series(out.f2) == NPoly::from_series(mf.f2).compose(x, y) * p);
  }
}

TEST_CASE("property: T maps the new graph onto the old one") {
  Gen g(53);
  const int n = 9;
  for (int trial = 0; trial < 10; ++trial) {
    const MongeForm<double> mf = random_reduced(g, n).cast<double>();
    ProjectiveTransform<double> T;
    T.q11 = 1 + g.real(-0.3, 0.3);
    T.q12 = g.real(-0.3, 0.3);
    T.q21 = g.real(-0.3, 0.3);
    T.q22 = 1 + g.real(-0.3, 0.3);
    T.q13 = g.real(-1, 1);
    T.q14 = g.real(-1, 1);
    T.q23 = g.real(-1, 1);
    T.q24 = g.real(-1, 1);
    T.q33 = 1 + g.real(-0.3, 0.3);
    T.q34 = g.real(-0.3, 0.3);
    T.q43 = g.real(-0.3, 0.3);
    T.q44 = 1 + g.real(-0.3, 0.3);
    T.p1 = g.real(-1, 1);
    T.p2 = g.real(-1, 1);
    T.p3 = g.real(-1, 1);
    T.p4 = g.real(-1, 1);
    const MongeForm<double> out = apply_projective(mf, T, n);
    for (int k = 0; k < 5; ++k) {
      const double x = g.real(-0.01, 0.01), y = g.real(-0.01, 0.01);
      const double z = out.f1.evaluate(x, y), w = out.f2.evaluate(x, y);
      const double p = 1 + T.p1 * x + T.p2 * y + T.p3 * z + T.p4 * w;
      const double X = (T.q11 * x + T.q12 * y + T.q13 * z + T.q14 * w) / p;
      const double Y = (T.q21 * x + T.q22 * y + T.q23 * z + T.q24 * w) / p;
      const double Z = (T.q33 * z + T.q34 * w) / p, W = (T.q43 * z + T.q44 * w) / p;
      CHECK(std::abs(mf.f1.evaluate(X, Y) - Z) <= 1e-10);
      CHECK(std::abs(mf.f2.evaluate(X, Y) - W) <= 1e-10);
    }
  }
}

TEST_CASE("apply_projective rejects degenerate transforms") {
  Gen g(54);
  const MongeForm<Q> mf = random_reduced(g, 4);
  ProjectiveTransform<Q> T;
  T.q22 = 0;
  CHECK_THROWS_AS(apply_projective(mf, T, 4), Error);
  ProjectiveTransform<Q> U;
  U.q33 = 0;
  CHECK_THROWS_AS(apply_projective(mf, U, 4), Error);
}

TEST_CASE("reduce_parabolic examples") {
  ChartSpec a{};
  a.l2 = 1;
  a.q1 = 1;
  const MongeForm<Q> ma = monge_form(make_chart(a), Q(0));
  const MongeForm<Q> ra = reduce_parabolic(ma);
  CHECK(ra.f1 == ma.f1);
  CHECK(ra.f2 == ma.f2);

  ChartSpec b{};
  b.n1 = 1;
  b.q1 = 1;
  b.d2 = 1;
  const MongeForm<Q> rb = reduce_parabolic(monge_form(make_chart(b), Q(0)));
  CHECK(rb.a(2, 0) == 1);
  CHECK(rb.a(1, 1) == 0);
  CHECK(rb.b(2, 0) == 0);
  CHECK(rb.b(1, 1) == 1);

  ChartSpec c{};
  c.q1 = 1;
  c.q2 = 1;
  c.m2 = 1;
  c.l2 = 1;
  const MongeForm<Q> rc = reduce_parabolic(monge_form(make_chart(c), Q(1)));
  CHECK(rc.b(2, 1) == -1);

  ChartSpec infl{};
  infl.n1 = 1;
  infl.q2 = 1;
  CHECK_THROWS_AS(reduce_parabolic(monge_form(make_chart(infl), Q(0))), Error);

  // q1 = 0 with n1 != 0 swaps the normal components.
  ChartSpec sw{};
  sw.n1 = 1;
  sw.d2 = 1;
  const MongeForm<Q> rs = reduce_parabolic(monge_form(make_chart(sw), Q(0)));
  CHECK(rs.b(1, 1) == 1);
  CHECK(rs.a(2, 0) == 1);
}

TEST_CASE("property: reduce_parabolic vanishing pattern") {
  Gen g(55);
  for (int trial = 0; trial < 30; ++trial) {
    const ChartSpec cs = testing::random_chart_spec(g);
    const Q t0 = g.rational();
    const MongeForm<Q> mf = monge_form(make_chart(cs, 5), t0, 5);
    if (classify_point(mf) != PointTag::Parabolic) continue;
    const MongeForm<Q> r = reduce_parabolic(mf);
    CHECK(r.a(2, 0) == 1);
    CHECK(r.a(1, 1) == 0);
    CHECK(r.b(2, 0) == 0);
    CHECK(r.b(1, 1) == 1);
    for (int i = 0; i <= 5; ++i)
      for (int j = i + 1; i + j <= 5; ++j) {
          CHECK(r.a(i, j) == 0);
          CHECK(r.b(i, j) == 0);
        }
    // b21 closed form after normalising q1 to 1.
    if (cs.q1 != 0) CHECK(r.b(2, 1) == (cs.q2 - 2 * cs.m2 * cs.q1 * t0) / cs.q1);
  }
}

TEST_CASE("reduce_4jet closed-form examples") {
  const MongeForm<Q> zero = jet(6, {{{2, 0, Q(1)}}, {{1, 1, Q(1)}}});
  const NormalForm4<Q> nz = reduce_4jet(zero).nf;
  CHECK((nz.gamma40 == 0 && nz.gamma31 == 0 && nz.theta40 == 0));

  const MongeForm<Q> e1 = jet(6, {{{2, 0, Q(1)}, {3, 0, Q(1)}}, {{1, 1, Q(1)}, {2, 1, Q(1)}}});
  const NormalForm4<Q> n1 = reduce_4jet(e1).nf;
  CHECK(n1.gamma40 == 0);
  CHECK(n1.gamma31 == 0);
  CHECK(n1.theta40 == 0);

  const MongeForm<Q> e2 = jet(6, {{{2, 0, Q(1)}, {3, 1, Q(2)}, {2, 1, Q(1)}}, {{1, 1, Q(1)}, {2, 1, Q(1)}}});
  CHECK(reduce_4jet(e2).nf.gamma31 == 1);
  CHECK(normal_form4_closed(e2).gamma31 == 1);
}

TEST_CASE("property: 4-jet normal form is exact and matches the closed forms") {
  Gen g(56);
  for (int trial = 0; trial < 50; ++trial) {
    const MongeForm<Q> red = random_reduced(g, 5);
    const Reduction4<Q> r = reduce_4jet(red);
    CHECK(has_nf4_shape(r.jet));
    for (int d = 2; d <= 4; ++d)
      for (int j = 0; j <= d; ++j) {
        const int i = d - j;
        const bool s1 = (i == 2 && j == 0) || (i == 4 && j == 0) || (i == 3 && j == 1);
        const bool s2 = (i == 1 && j == 1) || (i == 4 && j == 0);
        if (!s1) CHECK(r.jet.a(i, j) == 0);
        if (!s2) CHECK(r.jet.b(i, j) == 0);
      }
    const NormalForm4<Q> c = normal_form4_closed(red);
    CHECK(c.gamma40 == r.nf.gamma40);
    CHECK(c.gamma31 == r.nf.gamma31);
    CHECK(c.theta40 == r.nf.theta40);
    // The transform is the identity on the tangent plane, so the butterfly
    // quadratic is unchanged and reads (G31, G40, T40) after reduction.
    const Quadratic<Q> before = butterfly_quadratic(red), after = butterfly_quadratic(r.jet);
    CHECK(before.a2 == after.a2);
    CHECK(before.a1 == after.a1);
    CHECK(before.a0 == after.a0);
    CHECK(after.a2 == r.nf.gamma31);
    CHECK(after.a1 == r.nf.gamma40);
    CHECK(after.a0 == -r.nf.theta40);
  }
}

TEST_CASE("reduce_5jet examples") {
  SUBCASE("B32 = 0 gives the identity transform") {
    const MongeForm<Q> m = nf4_with(6, Q(1), Q(2), Q(3), {{{5, 0, Q(4)}}, {{5, 0, Q(5)}, {4, 1, Q(6)}}});
    const Reduction5<Q> r = reduce_5jet(m);
    CHECK(r.jet.f1 == m.f1);
    CHECK(r.jet.f2 == m.f2);
    CHECK(r.nf.theta50 == 5);
    CHECK(r.nf.theta41 == 6);
  }
  SUBCASE("Theta50 = 2") {
    const MongeForm<Q> m = nf4_with(6, Q(0), Q(1), Q(2), {{}, {{3, 2, Q(1)}}});
    CHECK(theta50_formula(m) == 2);
    const Reduction5<Q> r = reduce_5jet(m);
    CHECK(r.nf.theta50 == 2);
    CHECK(r.jet.b(3, 2) == 0);
  }
  SUBCASE("Theta41: legacy fraction against the transform") {
    const MongeForm<Q> m = nf4_with(6, Q(1), Q(2), Q(0), {{}, {{3, 2, Q(2)}}});
    CHECK(theta41_formula_legacy(m) == 1);
    CHECK(theta41_formula_transform(m) == -1);
    CHECK(reduce_5jet(m).nf.theta41 == -1);
  }
  SUBCASE("Gamma31 = 0") {
    const MongeForm<Q> m = nf4_with(6, Q(1), Q(0), Q(1), {{}, {{3, 2, Q(1)}}});
    CHECK_THROWS_AS(reduce_5jet(m), Error);
  }
}

TEST_CASE("property: 5-jet reduction") {
  Gen g(57);
  int legacy_disagree = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const MongeForm<Q> m = random_nf4_jet(g, 6);
    const Reduction5<Q> r = reduce_5jet(m);
    CHECK(r.jet.b(3, 2) == 0);
    CHECK(has_nf4_shape(r.jet));
    CHECK(r.nf.gamma50 == m.a(5, 0));
    CHECK(r.nf.gamma41 == m.a(4, 1));
    CHECK(r.nf.gamma32 == m.a(3, 2));
    CHECK(r.nf.theta50 == theta50_formula(m));
    CHECK(r.nf.theta41 == theta41_formula_transform(m));
    if (r.nf.theta41 != theta41_formula_legacy(m)) ++legacy_disagree;
  }
  CHECK(legacy_disagree > 20);
}

TEST_CASE("normal_form5 runs the full chain") {
  Gen g(58);
  int done = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const ChartSpec cs = testing::random_chart_spec(g);
    const MongeForm<Q> mf = monge_form(make_chart(cs, 6), g.rational(), 6);
    if (classify_point(mf) != PointTag::Parabolic) continue;
    const MongeForm<Q> red = reduce_parabolic(mf);
    if (normal_form4_closed(red).gamma31 == 0) continue;
    const Reduction5<Q> r = normal_form5(mf);
    CHECK(r.jet.b(3, 2) == 0);
    CHECK(r.nf.gamma31 == normal_form4_closed(red).gamma31);
    ++done;
  }
  CHECK(done > 5);
}
