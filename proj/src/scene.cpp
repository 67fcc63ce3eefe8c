#include "ruled4/scene.hpp"

#include <cmath>
#include <cstdio>

namespace ruled4 {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

}  // namespace

Scene build_scene(const MongeForm<double>& mf, const SceneSpec& spec) {
  if (spec.nu < 2 || spec.nv < 2) throw Error(ErrorKind::Parse, "resolution must be at least 2");
  const Region& R = spec.region;
  if (!(R.u1 > R.u0) || !(R.v1 > R.v0)) throw Error(ErrorKind::Parse, "region bounds are empty");
  Scene sc;
  sc.spec = spec;
  const BiSeries<double> kappa = kappa_field(mf);
  const BDEField<double> bde = butterfly_bde(mf, mf.order() - 4);
  const double kscale = std::pow(std::max(mf.f1.max_abs(), mf.f2.max_abs()), 2);
  for (int j = 0; j < spec.nv; ++j) {
    for (int i = 0; i < spec.nu; ++i) {
      SceneCell c;
      c.u = R.u0 + (R.u1 - R.u0) * i / (spec.nu - 1);
      c.v = R.v0 + (R.v1 - R.v0) * j / (spec.nv - 1);
      switch (zero_test(kappa.evaluate(c.u, c.v), kscale)) {
        case ZeroTest::NonZero: c.point = PointTag::Parabolic; break;
        case ZeroTest::Zero: c.point = PointTag::InflectionReal; break;
        case ZeroTest::Uncertain: c.point = PointTag::Uncertain; break;
      }
      c.butterfly = classify_butterfly_field(bde, c.u, c.v);
      c.delta = discriminant(bde, c.u, c.v);
      sc.cells.push_back(c);
    }
  }
  if (spec.layers.discriminant) sc.discriminant = trace_zero_set(discriminant_series(bde), R, spec.nu, spec.nv);
  if (spec.layers.inflection) sc.inflection = trace_zero_set(kappa, R, spec.nu, spec.nv);
  if (spec.layers.ruling && R.u0 <= 0.0 && R.u1 >= 0.0) sc.ruling.push_back({{0.0, R.v0}, {0.0, R.v1}});
  if (spec.layers.foliation) {
    const double gap = spec.seed_spacing > 0 ? spec.seed_spacing : (R.u1 - R.u0) / 8;
    std::vector<std::array<double, 2>> seeds;
    for (double v = R.v0 + gap / 2; v < R.v1; v += gap)
      for (double u = R.u0 + gap / 2; u < R.u1; u += gap)
        if (classify_butterfly_field(bde, u, v) == ButterflyClass::Hyperbolic) seeds.push_back({u, v});
    FoliationOptions opt;
    opt.step = spec.step;
    opt.max_steps = static_cast<std::size_t>(4 * std::hypot(R.u1 - R.u0, R.v1 - R.v0) / spec.step) + 10;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      try {
        for (IntegralCurve& c : integrate_foliation(bde, R, {seeds[k]}, opt)) {
          c.seed = k;
          sc.foliation.push_back(std::move(c));
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SeedOnDiscriminant) throw;
      }
    }
  }
  return sc;
}

std::string scene_csv(const Scene& scene) {
  std::string out = "u,v,point_class,butterfly_class,delta\n";
  for (const SceneCell& c : scene.cells) {
    out += fmt("%.6f", c.u) + "," + fmt("%.6f", c.v) + "," + point_tag_name(c.point) + "," +
           butterfly_class_name(c.butterfly) + "," + fmt("%.9e", c.delta) + "\n";
  }
  return out;
}

std::string scene_svg(const Scene& scene) {
  const Region& R = scene.spec.region;
  const double W = 800.0;
  const double H = W * (R.v1 - R.v0) / (R.u1 - R.u0);
  auto X = [&](double u) { return fmt("%.3f", (u - R.u0) / (R.u1 - R.u0) * W); };
  auto Y = [&](double v) { return fmt("%.3f", (R.v1 - v) / (R.v1 - R.v0) * H); };
  auto poly = [&](const Polyline& line, const char* stroke) {
    std::string s = "    <polyline fill=\"none\" stroke=\"";
    s += stroke;
    s += "\" points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k) s += ' ';
      s += X(line[k][0]) + "," + Y(line[k][1]);
    }
    return s + "\"/>\n";
  };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", W) + "\" height=\"" +
                    fmt("%.0f", H) + "\" viewBox=\"0 0 " + fmt("%.3f", W) + " " + fmt("%.3f", H) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto layer = [&](const char* id, const std::vector<Polyline>& lines, const char* stroke) {
    out += std::string("  <g id=\"") + id + "\" stroke-width=\"1\">\n";
    for (const Polyline& l : lines) out += poly(l, stroke);
    out += "  </g>\n";
  };
  std::vector<Polyline> plus, minus;
  for (const IntegralCurve& c : scene.foliation) (c.branch == Branch::Plus ? plus : minus).push_back(c.points);
  layer("foliation-plus", plus, "#1f77b4");
  layer("foliation-minus", minus, "#ff7f0e");
  layer("discriminant", scene.discriminant, "#d62728");
  layer("inflection", scene.inflection, "#2ca02c");
  layer("ruling", scene.ruling, "#000000");
  out += "</svg>\n";
  return out;
}

}  // namespace ruled4
