#include <algorithm>
#include <cmath>
#include <limits>

#include "ruled4/foliation.hpp"
#include "support.hpp"

using namespace ruled4;
using testing::Gen;
using testing::Q;

namespace {

BDEField<double> constant_field(int n, double A, double B, double C) {
  return {BiSeries<double>::constant(n, A), BiSeries<double>::constant(n, B), BiSeries<double>::constant(n, C)};
}

// dv^2 + u du^2.
BDEField<double> cusp_model() {
  BDEField<double> f = constant_field(2, 1.0, 0.0, 0.0);
  f.C.set(1, 0, 1.0);
  return f;
}

double omega(const BDEField<double>& f, double u, double v, double p) {
  return (f.A.evaluate(u, v) * p + f.B.evaluate(u, v)) * p + f.C.evaluate(u, v);
}

// v on the polyline at the first crossing of u = u*.
double v_at(const Polyline& line, double ustar) {
  for (std::size_t k = 1; k < line.size(); ++k) {
    const auto& a = line[k - 1];
    const auto& b = line[k];
    if ((a[0] - ustar) * (b[0] - ustar) <= 0 && a[0] != b[0]) {
      const double t = (ustar - a[0]) / (b[0] - a[0]);
      return a[1] + t * (b[1] - a[1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double distance_to(const Polyline& line, std::array<double, 2> p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < line.size(); ++k) {
    const double ax = line[k - 1][0], ay = line[k - 1][1];
    const double dx = line[k][0] - ax, dy = line[k][1] - ay;
    const double l2 = dx * dx + dy * dy;
    double t = l2 > 0 ? ((p[0] - ax) * dx + (p[1] - ay) * dy) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(p[0] - ax - t * dx, p[1] - ay - t * dy));
  }
  return best;
}

std::size_t seed_index(const IntegralCurve& c, std::array<double, 2> seed) {
  for (std::size_t k = 0; k < c.points.size(); ++k)
    if (c.points[k] == seed) return k;
  return c.points.size();
}

// Butterfly-hyperbolic 1-jet fields near the origin.
BDEField<double> random_hyperbolic(Gen& g) {
  for (;;) {
    NormalForm5<Q> nf;
    nf.gamma31 = g.nonzero_rational();
    nf.gamma40 = g.rational();
    nf.theta40 = g.rational();
    nf.gamma41 = g.rational();
    nf.gamma32 = g.rational();
    nf.gamma50 = g.rational();
    nf.theta50 = g.rational();
    nf.theta41 = g.rational();
    const auto f = normal_form_bde(nf);
    if (discriminant(f, Q(0), Q(0)) > Q(1, 4)) return f.cast<double>();
  }
}

}  // namespace

TEST_CASE("lifted_field_eval examples") {
  const auto f = cusp_model();
  const auto a = lifted_field_eval(f, {-0.25, 0.3, 0.5, false});
  CHECK(a.du == doctest::Approx(1.0));
  CHECK(a.dv == doctest::Approx(0.5));
  CHECK(a.dp == doctest::Approx(-1.0));

  const auto sq = constant_field(1, 1.0, 0.0, 0.0);
  const auto b = lifted_field_eval(sq, {0.1, 0.2, 0.0, false});
  CHECK((b.du == 0.0 && b.dv == 0.0 && b.dp == 0.0));
  const auto c = lifted_field_eval(sq, {0.1, 0.2, 2.0, false});
  CHECK(c.du == doctest::Approx(4.0));
  CHECK(c.dv == doctest::Approx(8.0));
  CHECK(c.dp == 0.0);
}

TEST_CASE("property: the lifted field is tangent to Omega = 0") {
  Gen g(71);
  for (int trial = 0; trial < 50; ++trial) {
    BDEField<double> f{BiSeries<double>(2), BiSeries<double>(2), BiSeries<double>(2)};
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) {
        f.A.set(i, j, g.real(-1, 1));
        f.B.set(i, j, g.real(-1, 1));
        f.C.set(i, j, g.real(-1, 1));
      }
    const double u = g.real(-0.3, 0.3), v = g.real(-0.3, 0.3), p = g.real(-2, 2);
    const auto F = lifted_field_eval(f, {u, v, p, false});
    // dOmega . F vanishes identically.
    const double h = 1e-6;
    const double Ou = (omega(f, u + h, v, p) - omega(f, u - h, v, p)) / (2 * h);
    const double Ov = (omega(f, u, v + h, p) - omega(f, u, v - h, p)) / (2 * h);
    const double Op = (omega(f, u, v, p + h) - omega(f, u, v, p - h)) / (2 * h);
    CHECK(std::abs(Ou * F.du + Ov * F.dv + Op * F.dp) < 1e-7);
  }
}

TEST_CASE("integrate_foliation: constant field gives straight lines") {
  const auto f = constant_field(1, 1.0, 0.0, -1.0);
  const auto curves = integrate_foliation(f, {-1, 1, -1, 1}, {{0.0, 0.0}});
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].branch == Branch::Plus);
  CHECK(curves[1].branch == Branch::Minus);
  for (const auto& c : curves) {
    CHECK(c.points.size() > 1000);
    CHECK_FALSE(c.hits_discriminant);
    const double sgn = c.branch == Branch::Plus ? 1.0 : -1.0;
    double worst = 0;
    for (const auto& p : c.points) worst = std::max(worst, std::abs(p[1] - sgn * p[0]));
    CHECK(worst < 1e-10);
  }

  // Seeds away from the origin: v = +-u + c.
  const auto off = integrate_foliation(constant_field(1, 2.0, 0.0, -2.0), {-1, 1, -1, 1}, {{0.2, -0.1}});
  for (const auto& c : off) {
    const double sgn = c.branch == Branch::Plus ? 1.0 : -1.0;
    for (const auto& p : c.points) CHECK(std::abs(p[1] + 0.1 - sgn * (p[0] - 0.2)) < 1e-10);
  }
}

TEST_CASE("integrate_foliation: cusp model matches the closed form") {
  const auto curves = integrate_foliation(cusp_model(), {-2, 1, -2, 2}, {{-1.0, 0.0}});
  REQUIRE(curves.size() == 2);
  for (const auto& c : curves) {
    // dv/du = +-sqrt(-u): v = +-(2/3)(1 - (-u)^{3/2}) through (-1, 0).
    const double v = v_at(c.points, -0.25);
    REQUIRE_FALSE(std::isnan(v));
    CHECK(std::abs(std::abs(v) - (2.0 / 3.0) * (1.0 - std::pow(0.25, 1.5))) < 1e-4);
    CHECK(c.hits_discriminant);
    // The traced end stops just short of the discriminant u = 0.
    const auto& last = c.points.back()[0] > c.points.front()[0] ? c.points.back() : c.points.front();
    CHECK(last[0] < 0.0);
    CHECK(last[0] > -1e-3);
  }
  // The two branches are mirror images.
  CHECK(v_at(curves[0].points, -0.25) == doctest::Approx(-v_at(curves[1].points, -0.25)).epsilon(1e-8));
}

TEST_CASE("integrate_foliation: butterfly-hyperbolic normal form has slopes +-1 at the origin") {
  NormalForm5<Q> nf;
  nf.gamma31 = 1;
  nf.theta40 = 1;
  const auto f = legacy_bde_field(nf).cast<double>();
  const auto curves = integrate_foliation(f, {-0.1, 0.1, -0.1, 0.1}, {{0.0, 0.0}});
  REQUIRE(curves.size() == 2);
  std::vector<double> slopes;
  for (const auto& c : curves) {
    const std::size_t k = seed_index(c, {0.0, 0.0});
    REQUIRE(k > 0);
    REQUIRE(k + 1 < c.points.size());
    slopes.push_back((c.points[k + 1][1] - c.points[k - 1][1]) / (c.points[k + 1][0] - c.points[k - 1][0]));
  }
  std::sort(slopes.begin(), slopes.end());
  CHECK(slopes[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(slopes[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate_foliation errors and chart switching") {
  CHECK_THROWS_AS(integrate_foliation(cusp_model(), {-1, 1, -1, 1}, {{0.5, 0.0}}), Error);
  try {
    (void)integrate_foliation(cusp_model(), {-1, 1, -1, 1}, {{0.0, 0.0}});
    FAIL("expected SeedOnDiscriminant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeedOnDiscriminant);
  }

  // du dv = 0: one family is vertical, so the p-chart cannot hold it.
  const auto f = constant_field(1, 0.0, 1.0, 0.0);
  const auto curves = integrate_foliation(f, {-1, 1, -1, 1}, {{0.1, 0.2}});
  REQUIRE(curves.size() == 2);
  int vertical = 0, horizontal = 0;
  for (const auto& c : curves) {
    double du = 0, dv = 0;
    for (const auto& p : c.points) {
      du = std::max(du, std::abs(p[0] - 0.1));
      dv = std::max(dv, std::abs(p[1] - 0.2));
    }
    if (du < 1e-10 && dv > 0.5) ++vertical;
    if (dv < 1e-10 && du > 0.5) ++horizontal;
  }
  CHECK(vertical == 1);
  CHECK(horizontal == 1);
}

TEST_CASE("property: curve chords satisfy Omega, branches separate, integration reverses") {
  Gen g(72);
  const Region region{-0.05, 0.05, -0.05, 0.05};
  for (int trial = 0; trial < 8; ++trial) {
    const auto f = random_hyperbolic(g);
    const std::array<double, 2> seed{g.real(-0.01, 0.01), g.real(-0.01, 0.01)};
    const auto curves = integrate_foliation(f, region, {seed});
    REQUIRE(curves.size() == 2);

    std::array<double, 2> slope{};
    for (std::size_t b = 0; b < 2; ++b) {
      const auto& c = curves[b];
      CHECK(c.seed == 0);
      // Chord slopes (or inverse slopes near vertical) solve Omega to O(h^2).
      for (std::size_t k = 1; k < c.points.size(); ++k) {
        const double mu = (c.points[k][0] + c.points[k - 1][0]) / 2, mv = (c.points[k][1] + c.points[k - 1][1]) / 2;
        const double du = c.points[k][0] - c.points[k - 1][0], dv = c.points[k][1] - c.points[k - 1][1];
        const double r = f.A.evaluate(mu, mv) * dv * dv + f.B.evaluate(mu, mv) * du * dv + f.C.evaluate(mu, mv) * du * du;
        CHECK(std::abs(r) / (du * du + dv * dv) < 1e-6);
      }
      const std::size_t k = seed_index(c, seed);
      REQUIRE(k > 0);
      REQUIRE(k + 1 < c.points.size());
      slope[b] = (c.points[k + 1][1] - c.points[k - 1][1]) / (c.points[k + 1][0] - c.points[k - 1][0]);

      // Restart from a point 200 steps along and come back through the seed.
      const std::size_t j = std::min(k + 200, c.points.size() - 1);
      const auto back = integrate_foliation(f, region, {c.points[j]});
      double best = std::numeric_limits<double>::infinity();
      for (const auto& bc : back) best = std::min(best, distance_to(bc.points, seed));
      CHECK(best < 1e-6);
    }
    const double A = f.A.evaluate(seed[0], seed[1]);
    const double d = discriminant(f, seed[0], seed[1]);
    CHECK(std::abs(slope[0] - slope[1]) >= std::sqrt(d) / std::abs(A) - 1e-5);
  }
}

TEST_CASE("property: seeds are processed in order and the run is deterministic") {
  Gen g(73);
  const auto f = random_hyperbolic(g);
  const std::vector<std::array<double, 2>> seeds{{0.0, 0.0}, {0.01, -0.01}, {-0.01, 0.005}};
  const auto a = integrate_foliation(f, {-0.03, 0.03, -0.03, 0.03}, seeds);
  const auto b = integrate_foliation(f, {-0.03, 0.03, -0.03, 0.03}, seeds);
  REQUIRE(a.size() == 6);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].seed == k / 2);
    CHECK(a[k].branch == (k % 2 == 0 ? Branch::Plus : Branch::Minus));
    CHECK(a[k].points == b[k].points);
  }
}

TEST_CASE("trace_discriminant examples") {
  const auto lines = trace_discriminant(cusp_model(), {-1, 1, -1, 1}, 41, 41);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].size() >= 40);
  for (const auto& p : lines[0]) CHECK(std::abs(p[0]) < 1e-12);

  try {
    (void)trace_discriminant(constant_field(1, 1.0, 0.0, -1.0), {-1, 1, -1, 1}, 21, 21);
    FAIL("expected EmptyCurve");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyCurve);
  }
  CHECK(trace_zero_set(BiSeries<double>::constant(2, 1.0), {-1, 1, -1, 1}, 5, 5).empty());

  // u^2 + v^2 - 1/4: a closed circle.
  BiSeries<double> circ(2);
  circ.set(2, 0, 1.0);
  circ.set(0, 2, 1.0);
  circ.set(0, 0, -0.25);
  const auto c = trace_zero_set(circ, {-1, 1, -1, 1}, 51, 51);
  REQUIRE(c.size() == 1);
  // One Newton step from the interpolated edge point.
  for (const auto& p : c[0]) CHECK(std::abs(std::hypot(p[0], p[1]) - 0.5) < 1e-5);
}

TEST_CASE("property: discriminant contour of the legacy field has the expected slope at the origin") {
  Gen g(74);
  for (int trial = 0; trial < 20; ++trial) {
    NormalForm5<Q> nf;
    nf.gamma31 = g.nonzero_rational();
    nf.gamma40 = g.rational();
    nf.gamma50 = g.rational();
    nf.gamma41 = g.rational();
    nf.gamma32 = g.rational();
    nf.theta50 = g.rational();
    nf.theta41 = g.rational();
    // Origin on the zero set of the legacy discriminant.
    nf.theta40 = -nf.gamma40 * nf.gamma40 / nf.gamma31;
    const auto lit = legacy_bde_field(nf);
    const auto D = discriminant_series(lit);
    REQUIRE(D(0, 0) == 0);
    const Q du = 4 * legacy_xi(nf) / nf.gamma31;
    const Q dv = 8 * nf.gamma40 * nf.gamma41 + 4 * nf.gamma31 * nf.theta41 -
                 8 * nf.gamma32 * nf.gamma40 * nf.gamma40 / nf.gamma31;
    CHECK(D(1, 0) == du);
    CHECK(D(0, 1) == dv);
    if (du == 0 && dv == 0) continue;

    const auto lines = trace_discriminant(lit.cast<double>(), {-1e-3, 1e-3, -1e-3, 1e-3}, 21, 21);
    REQUIRE(!lines.empty());
    const auto& line = lines[0];
    const double tx = line.back()[0] - line.front()[0], ty = line.back()[1] - line.front()[1];
    // Tangent is orthogonal to (du, dv).
    const double gu = to_double(du), gv = to_double(dv);
    CHECK(std::abs(tx * gu + ty * gv) / (std::hypot(tx, ty) * std::hypot(gu, gv)) < 1e-6);
  }
}
