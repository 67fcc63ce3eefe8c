#include "ruled4/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ruled4 {

namespace {

/// Coefficients and first partials of a field, in one chart.
struct Prepared {
  BiSeries<double> A, B, C, Aa, Ab, Ba, Bb, Ca, Cb;

  explicit Prepared(const BDEField<double>& f)
      : A(f.A), B(f.B), C(f.C),
        Aa(f.A.derivative(0)), Ab(f.A.derivative(1)),
        Ba(f.B.derivative(0)), Bb(f.B.derivative(1)),
        Ca(f.C.derivative(0)), Cb(f.C.derivative(1)) {}

  double omega(double a, double b, double p) const {
    return (A.evaluate(a, b) * p + B.evaluate(a, b)) * p + C.evaluate(a, b);
  }
  double omega_p(double a, double b, double p) const { return 2 * A.evaluate(a, b) * p + B.evaluate(a, b); }

  /// Lifted field in chart coordinates (a, b, p).
  std::array<double, 3> field(double a, double b, double p) const {
    const double Op = omega_p(a, b, p);
    const double Oa = (Aa.evaluate(a, b) * p + Ba.evaluate(a, b)) * p + Ca.evaluate(a, b);
    const double Ob = (Ab.evaluate(a, b) * p + Bb.evaluate(a, b)) * p + Cb.evaluate(a, b);
    return {Op, p * Op, -(Oa + p * Ob)};
  }

  double delta(double a, double b) const {
    const double av = A.evaluate(a, b), bv = B.evaluate(a, b), cv = C.evaluate(a, b);
    return bv * bv - 4 * av * cv;
  }
};

struct Charts {
  Prepared direct, swapped;
  explicit Charts(const BDEField<double>& f) : direct(f), swapped(f.swapped()) {}
  const Prepared& of(bool s) const { return s ? swapped : direct; }
};

/// Unit lifted field in (u, v, p) with the chart's (a, b) mapped to (u, v).
std::array<double, 3> unit_field(const Charts& ch, const LiftedPoint& lp) {
  const double a = lp.swapped ? lp.v : lp.u, b = lp.swapped ? lp.u : lp.v;
  auto F = ch.of(lp.swapped).field(a, b, lp.p);
  if (lp.swapped) std::swap(F[0], F[1]);
  const double n = std::sqrt(F[0] * F[0] + F[1] * F[1] + F[2] * F[2]);
  if (n == 0.0) return {0.0, 0.0, 0.0};
  return {F[0] / n, F[1] / n, F[2] / n};
}

void project_to_surface(const Charts& ch, LiftedPoint& lp) {
  const Prepared& P = ch.of(lp.swapped);
  const double a = lp.swapped ? lp.v : lp.u, b = lp.swapped ? lp.u : lp.v;
  const double Op = P.omega_p(a, b, lp.p);
  if (std::abs(Op) > 1e-14) lp.p -= P.omega(a, b, lp.p) / Op;
}

void maybe_switch_chart(LiftedPoint& lp) {
  if (std::abs(lp.p) > 10.0) {
    lp.p = 1.0 / lp.p;
    lp.swapped = !lp.swapped;
  }
}

struct Trace {
  std::vector<std::array<double, 2>> points;
  bool hit = false;
};

Trace trace_one(const Charts& ch, const Region& region, LiftedPoint lp, double sign, const FoliationOptions& opt) {
  Trace out;
  double pu = 0.0, pv = 0.0;  // previous (u, v) direction
  {
    const auto F = unit_field(ch, lp);
    pu = sign * F[0];
    pv = sign * F[1];
  }
  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    const double h = opt.step;
    auto F0 = unit_field(ch, lp);
    // Keep the (u, v) heading continuous across chart switches.
    double s = (F0[0] * pu + F0[1] * pv) < 0 ? -1.0 : 1.0;
    auto eval = [&](double du, double dv, double dp) {
      LiftedPoint q = lp;
      q.u += du;
      q.v += dv;
      q.p += dp;
      auto F = unit_field(ch, q);
      return std::array<double, 3>{s * F[0], s * F[1], s * F[2]};
    };
    const std::array<double, 3> k1{s * F0[0], s * F0[1], s * F0[2]};
    const auto k2 = eval(h / 2 * k1[0], h / 2 * k1[1], h / 2 * k1[2]);
    const auto k3 = eval(h / 2 * k2[0], h / 2 * k2[1], h / 2 * k2[2]);
    const auto k4 = eval(h * k3[0], h * k3[1], h * k3[2]);
    LiftedPoint next = lp;
    next.u += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    next.v += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    next.p += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
    project_to_surface(ch, next);
    if (!std::isfinite(next.u) || !std::isfinite(next.v) || !std::isfinite(next.p)) break;
    if (!region.contains(next.u, next.v)) break;
    pu = next.u - lp.u;
    pv = next.v - lp.v;
    lp = next;
    maybe_switch_chart(lp);
    out.points.push_back({lp.u, lp.v});
    if (ch.direct.delta(lp.u, lp.v) < opt.stop_delta) {
      out.hit = true;
      break;
    }
  }
  return out;
}

}  // namespace

LiftedVector lifted_field_eval(const BDEField<double>& f, const LiftedPoint& lp) {
  const Prepared P(lp.swapped ? f.swapped() : f);
  const double a = lp.swapped ? lp.v : lp.u, b = lp.swapped ? lp.u : lp.v;
  const auto F = P.field(a, b, lp.p);
  if (lp.swapped) return {F[1], F[0], F[2]};
  return {F[0], F[1], F[2]};
}

std::vector<IntegralCurve> integrate_foliation(const BDEField<double>& f, const Region& region,
                                               const std::vector<std::array<double, 2>>& seeds,
                                               const FoliationOptions& opt) {
  const Charts ch(f);
  std::vector<IntegralCurve> curves;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    const double u = seeds[si][0], v = seeds[si][1];
    const double A = f.A.evaluate(u, v), B = f.B.evaluate(u, v), C = f.C.evaluate(u, v);
    const double delta = B * B - 4 * A * C;
    const double scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
    if (delta <= tolerance() * std::max(1.0, scale * scale))
      throw Error(ErrorKind::SeedOnDiscriminant, "seed is not in the region with two directions");
    const bool swapped = std::abs(A) < std::abs(C);
    const double lead = swapped ? C : A, tail = swapped ? A : C;
    for (Branch br : {Branch::Plus, Branch::Minus}) {
      const double sq = br == Branch::Plus ? std::sqrt(delta) : -std::sqrt(delta);
      // (-B + sq) / (2 lead) = 2 tail / (-B - sq); use the larger denominator.
      const double d1 = 2 * lead, d2 = -B - sq;
      LiftedPoint lp{u, v, 0.0, swapped};
      if (std::abs(d1) >= std::abs(d2) && d1 != 0.0)
        lp.p = (-B + sq) / d1;
      else if (d2 != 0.0)
        lp.p = 2 * tail / d2;
      else
        lp.swapped = !swapped;  // the root is at infinity: p = 0 in the other chart
      maybe_switch_chart(lp);
      Trace fwd = trace_one(ch, region, lp, 1.0, opt);
      Trace bwd = trace_one(ch, region, lp, -1.0, opt);
      IntegralCurve c;
      c.branch = br;
      c.seed = si;
      c.hits_discriminant = fwd.hit || bwd.hit;
      c.points.assign(bwd.points.rbegin(), bwd.points.rend());
      c.points.push_back({u, v});
      c.points.insert(c.points.end(), fwd.points.begin(), fwd.points.end());
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

std::vector<Polyline> trace_discriminant(const BDEField<double>& f, const Region& region, int nu, int nv) {
  std::vector<Polyline> lines = trace_zero_set(discriminant_series(f), region, nu, nv);
  if (lines.empty()) throw Error(ErrorKind::EmptyCurve, "discriminant has no zero in the region");
  return lines;
}

std::vector<Polyline> trace_zero_set(const BiSeries<double>& D, const Region& region, int nu, int nv) {
  if (nu < 2 || nv < 2) throw Error(ErrorKind::Parse, "resolution must be at least 2");
  const BiSeries<double> Du = D.derivative(0), Dv = D.derivative(1);
  const double hu = (region.u1 - region.u0) / (nu - 1), hv = (region.v1 - region.v0) / (nv - 1);
  auto U = [&](int i) { return region.u0 + i * hu; };
  auto V = [&](int j) { return region.v0 + j * hv; };
  std::vector<double> val(static_cast<std::size_t>(nu) * nv);
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) val[j * nu + i] = D.evaluate(U(i), V(j));
  auto at = [&](int i, int j) { return val[j * nu + i]; };

  // Edge keys: 2*(j*nu+i) horizontal from (i,j), +1 vertical from (i,j).
  std::map<long, std::array<double, 2>> vertex;
  auto edge_point = [&](long key) {
    auto it = vertex.find(key);
    if (it != vertex.end()) return;
    const long base = key / 2;
    const int i = static_cast<int>(base % nu), j = static_cast<int>(base / nu);
    const bool vert = key % 2 == 1;
    const int i1 = vert ? i : i + 1, j1 = vert ? j + 1 : j;
    const double d0 = at(i, j), d1 = at(i1, j1);
    const double t = d0 == d1 ? 0.5 : d0 / (d0 - d1);
    double u = U(i) + t * (U(i1) - U(i)), v = V(j) + t * (V(j1) - V(j));
    const double du = Du.evaluate(u, v), dv = Dv.evaluate(u, v), g2 = du * du + dv * dv;
    if (g2 > 0.0) {
      const double d = D.evaluate(u, v);
      u -= d * du / g2;
      v -= d * dv / g2;
    }
    vertex[key] = {u, v};
  };

  std::vector<std::array<long, 2>> segs;
  for (int j = 0; j + 1 < nv; ++j) {
    for (int i = 0; i + 1 < nu; ++i) {
      const bool s0 = at(i, j) > 0, s1 = at(i + 1, j) > 0, s2 = at(i + 1, j + 1) > 0, s3 = at(i, j + 1) > 0;
      const long bottom = 2L * (j * nu + i), top = 2L * ((j + 1) * nu + i);
      const long left = 2L * (j * nu + i) + 1, right = 2L * (j * nu + i + 1) + 1;
      std::vector<long> cut;
      if (s0 != s1) cut.push_back(bottom);
      if (s1 != s2) cut.push_back(right);
      if (s2 != s3) cut.push_back(top);
      if (s3 != s0) cut.push_back(left);
      for (long k : cut) edge_point(k);
      if (cut.size() == 2) {
        segs.push_back({cut[0], cut[1]});
      } else if (cut.size() == 4) {
        const double centre = D.evaluate(U(i) + hu / 2, V(j) + hv / 2);
        if ((centre > 0) == s0) {
          segs.push_back({bottom, right});
          segs.push_back({top, left});
        } else {
          segs.push_back({bottom, left});
          segs.push_back({right, top});
        }
      }
    }
  }

  std::map<long, std::vector<std::size_t>> adj;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    adj[segs[s][0]].push_back(s);
    adj[segs[s][1]].push_back(s);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<Polyline> lines;
  auto walk = [&](long start) {
    Polyline line{vertex[start]};
    long cur = start;
    for (;;) {
      std::size_t next = segs.size();
      for (std::size_t s : adj[cur])
        if (!used[s]) {
          next = s;
          break;
        }
      if (next == segs.size()) break;
      used[next] = true;
      cur = segs[next][0] == cur ? segs[next][1] : segs[next][0];
      line.push_back(vertex[cur]);
    }
    lines.push_back(std::move(line));
  };
  for (const auto& [key, list] : adj)
    if (list.size() == 1 && !used[list[0]]) walk(key);
  for (std::size_t s = 0; s < segs.size(); ++s)
    if (!used[s]) walk(segs[s][0]);
  return lines;
}

}  // namespace ruled4
