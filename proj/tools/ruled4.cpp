// ruled4: command-line front end for the ruled-surface library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ruled4/bde.hpp"
#include "ruled4/classify.hpp"
#include "ruled4/normalform.hpp"
#include "ruled4/projection.hpp"
#include "ruled4/report.hpp"
#include "ruled4/scene.hpp"
#include "ruled4/surface_file.hpp"

using namespace ruled4;
using nlohmann::json;

namespace {

std::vector<Rational> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.size() != count)
    throw Error(ErrorKind::Parse, std::string(what) + " needs " + std::to_string(count) + " comma-separated values");
  return out;
}

template <class S>
struct Context {
  SurfaceFile file;
  RuledSurface<S> surface;
  S u0, t0;
  int order;
  MongeForm<S> mf;
};

template <class S>
Context<S> make_context(const SurfaceFile& file, const Rational& u0, const Rational& t0, int order) {
  Context<S> c{file, file.surface().template cast<S>(), from_rational<S>(u0), from_rational<S>(t0), order, {}};
  auto [chart, t] = chart_at(c.surface, c.u0, c.t0, order);
  c.mf = monge_form(chart, t, order);
  return c;
}

template <class S>
json basepoint(const Context<S>& c) {
  return {{"u", tagged(c.u0)}, {"t", tagged(c.t0)}};
}

template <class S>
json nf4_json(const NormalForm4<S>& nf) {
  return {{"gamma40", tagged(nf.gamma40)}, {"gamma31", tagged(nf.gamma31)}, {"theta40", tagged(nf.theta40)}};
}

template <class S>
json nf5_json(const NormalForm5<S>& nf) {
  return {{"gamma40", tagged(nf.gamma40)}, {"gamma31", tagged(nf.gamma31)}, {"gamma50", tagged(nf.gamma50)},
          {"gamma41", tagged(nf.gamma41)}, {"gamma32", tagged(nf.gamma32)}, {"theta40", tagged(nf.theta40)},
          {"theta50", tagged(nf.theta50)}, {"theta41", tagged(nf.theta41)}};
}

template <class S>
json plane_json(const PlaneSpec<S>& p) {
  if (p.tangent) return {{"tangent", true}};
  return {{"tangent", false},
          {"alpha", tagged(p.alpha)},
          {"beta", tagged(p.beta)},
          {"lambda", tagged(p.lambda)},
          {"mu", tagged(p.mu)}};
}

template <class S>
json label_json(const PlaneSpec<S>& plane, const Recognition<S>& r) {
  json ev = json::array();
  for (const auto& [key, value] : r.evidence) ev.push_back({{"key", key}, {"value", tagged(value)}});
  return {{"plane", plane_json(plane)}, {"label", r.label()}, {"evidence", ev}};
}

template <class S>
json butterfly_json(const MongeForm<S>& mf) {
  const MongeForm<S> reduced = reduce_parabolic(mf);
  json out;
  out["coordinates"] = "reduced";
  try {
    const Reduction4<S> r4 = reduce_4jet(reduced);
    out["class"] = butterfly_class_name(classify_butterfly_point(r4.nf));
    out["discriminant"] = tagged(butterfly_discriminant(r4.nf));
  } catch (const Error& e) {
    out["class_error"] = e.what();
  }
  try {
    const ButterflyPlanes<S> bp = butterfly_planes(reduced);
    out["A"] = tagged(bp.A);
    out["B"] = tagged(bp.B);
    out["C"] = tagged(bp.C);
    out["quadratic_discriminant"] = tagged(bp.discriminant);
    json roots = json::array(), planes = json::array();
    for (double a : bp.roots) roots.push_back(tagged(a));
    const MongeForm<double> rd = reduced.template cast<double>();
    for (const PlaneSpec<double>& p : bp.planes) {
      json entry = plane_json(p);
      try {
        entry["label"] = recognize_projection(rd, p).label();
      } catch (const Error& e) {
        entry["label_error"] = e.what();
      }
      planes.push_back(entry);
    }
    out["roots"] = roots;
    out["planes"] = planes;
  } catch (const Error& e) {
    out["directions_error"] = e.what();
  }
  return out;
}

template <class S>
json run_classify(const Context<S>& c) {
  json r = new_report("classify", c.file.id, scalar_mode_name<S>(), c.order);
  r["basepoint"] = basepoint(c);
  const PointInvariants<S> inv = point_invariants(second_fundamental(c.mf));
  r["invariants"] = {{"delta", tagged(inv.delta)}, {"K", tagged(inv.K)}, {"kappa", tagged(inv.kappa)}};
  const PointTag tag = classify_point(c.mf);
  r["point_class"] = point_tag_name(tag);
  json labels = json::array();
  labels.push_back(label_json(PlaneSpec<S>::tangent_plane(), recognize_projection(c.mf, PlaneSpec<S>::tangent_plane())));
  if (tag == PointTag::Parabolic) {
    try {
      if (c.order >= 5)
        r["normal_form"] = nf5_json(normal_form5(c.mf).nf);
      else
        r["normal_form"] = nf4_json(reduce_4jet(reduce_parabolic(c.mf)).nf);
    } catch (const Error& e) {
      r["normal_form_error"] = e.what();
    }
    r["butterfly"] = butterfly_json(c.mf);
  } else if (tag == PointTag::InflectionReal) {
    const InflectionJet<S> ij = inflection_curve_jet(c.mf);
    r["inflection_curve"] = {{"c1", tagged(ij.c1)}, {"c2", tagged(ij.c2)}};
    json sp = json::array();
    try {
      for (const SpecialPlane<S>& p : special_planes_at_inflection(c.mf))
        sp.push_back({{"branch", p.branch}, {"beta", tagged(p.beta)}, {"mu", tagged(p.mu)}, {"D", tagged(p.D)},
                      {"degenerate", p.degenerate}});
    } catch (const Error& e) {
      r["special_planes_error"] = e.what();
    }
    r["special_planes"] = sp;
  }
  r["labels"] = labels;
  return r;
}

template <class S>
json run_project(const Context<S>& c, const std::optional<std::vector<Rational>>& plane, bool reduced) {
  json r = new_report("project", c.file.id, scalar_mode_name<S>(), c.order);
  r["basepoint"] = basepoint(c);
  const PointTag tag = classify_point(c.mf);
  r["point_class"] = point_tag_name(tag);
  if (reduced && tag != PointTag::Parabolic) throw Error(ErrorKind::NotParabolic, "--reduced needs a parabolic point");
  // Butterfly planes are reported in the parabolic gauge; --reduced reads the plane there.
  const MongeForm<S> mf = reduced ? reduce_parabolic(c.mf) : c.mf;
  r["coordinates"] = reduced ? "reduced" : "monge";
  const PlaneSpec<S> pi = plane ? PlaneSpec<S>::make(from_rational<S>((*plane)[0]), from_rational<S>((*plane)[1]),
                                                      from_rational<S>((*plane)[2]), from_rational<S>((*plane)[3]))
                                : PlaneSpec<S>::tangent_plane();
  r["labels"] = json::array({label_json(pi, recognize_projection(mf, pi))});
  return r;
}

template <class S>
json run_butterfly(const Context<S>& c) {
  json r = new_report("butterfly", c.file.id, scalar_mode_name<S>(), c.order);
  r["basepoint"] = basepoint(c);
  const PointTag tag = classify_point(c.mf);
  r["point_class"] = point_tag_name(tag);
  if (tag != PointTag::Parabolic) throw Error(ErrorKind::NotParabolic, "butterfly directions need a parabolic point");
  r["butterfly"] = butterfly_json(c.mf);
  return r;
}

template <class S>
json transform_json(const ProjectiveTransform<S>& T) {
  return {{"q13", tagged(T.q13)}, {"q14", tagged(T.q14)}, {"q23", tagged(T.q23)}, {"q24", tagged(T.q24)},
          {"p1", tagged(T.p1)},   {"p2", tagged(T.p2)},   {"p3", tagged(T.p3)},   {"p4", tagged(T.p4)}};
}

template <class S>
json run_normalform(const Context<S>& c, int jet) {
  json r = new_report("normalform", c.file.id, scalar_mode_name<S>(), c.order);
  r["basepoint"] = basepoint(c);
  r["point_class"] = point_tag_name(classify_point(c.mf));
  const MongeForm<S> reduced = reduce_parabolic(c.mf);
  const Reduction4<S> r4 = reduce_4jet(reduced);
  if (jet == 4) {
    r["normal_form"] = nf4_json(r4.nf);
    r["transform"] = transform_json(r4.transform);
  } else {
    const Reduction5<S> r5 = reduce_5jet(r4.jet);
    r["normal_form"] = nf5_json(r5.nf);
    r["transform"] = transform_json(r5.transform);
  }
  r["butterfly"] = {{"class", butterfly_class_name(classify_butterfly_point(r4.nf))},
                    {"discriminant", tagged(butterfly_discriminant(r4.nf))}};
  return r;
}

struct Options {
  std::string surface, scalar, point = "0,0", plane, region = "-0.1,0.1,-0.1,0.1", res = "41x41", out, csv;
  std::string u0 = "0", t0 = "0";
  int order = kDefaultOrder, jet = 5;
  bool tangent = false, reduced = false;
  double seed_spacing = 0.0;
  bool no_foliation = false, no_discriminant = false, no_inflection = false, no_ruling = false;
};

template <class S>
json dispatch(const std::string& cmd, const SurfaceFile& file, const Options& o) {
  if (cmd == "classify") {
    return run_classify(make_context<S>(file, parse_rational(o.u0), parse_rational(o.t0), o.order));
  }
  const auto pt = parse_list(o.point, 2, "--point");
  if (cmd == "project") {
    std::optional<std::vector<Rational>> plane;
    if (!o.tangent) plane = parse_list(o.plane, 4, "--plane");
    return run_project(make_context<S>(file, pt[0], pt[1], o.order), plane, o.reduced);
  }
  if (cmd == "butterfly") return run_butterfly(make_context<S>(file, pt[0], pt[1], o.order));
  return run_normalform(make_context<S>(file, pt[0], pt[1], std::max(o.order, o.jet)), o.jet);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << content;
}

json run_scan(const SurfaceFile& file, const Options& o) {
  constexpr int kScanOrder = 9;
  const auto pt = parse_list(o.point, 2, "--point");
  const auto reg = parse_list(o.region, 4, "--region");
  int nu = 0, nv = 0;
  if (std::sscanf(o.res.c_str(), "%dx%d", &nu, &nv) != 2) throw Error(ErrorKind::Parse, "--res expects NxM");
  SceneSpec spec;
  spec.region = {to_double(reg[0]), to_double(reg[1]), to_double(reg[2]), to_double(reg[3])};
  spec.nu = nu;
  spec.nv = nv;
  spec.seed_spacing = o.seed_spacing;
  spec.layers = {!o.no_foliation, !o.no_discriminant, !o.no_inflection, !o.no_ruling};
  const bool exact = (o.scalar.empty() ? file.scalar : o.scalar) == "rational";
  const MongeForm<double> mf = exact ? make_context<Rational>(file, pt[0], pt[1], kScanOrder).mf.template cast<double>()
                                     : make_context<double>(file, pt[0], pt[1], kScanOrder).mf;
  const Scene scene = build_scene(mf, spec);
  write_file(o.out, scene_svg(scene));
  if (!o.csv.empty()) write_file(o.csv, scene_csv(scene));
  json r = new_report("scan", file.id, exact ? "rational" : "f64", kScanOrder);
  r["basepoint"] = {{"u", tagged(pt[0])}, {"t", tagged(pt[1])}};
  r["scene"] = {{"cells", scene.cells.size()},
                {"foliation_curves", scene.foliation.size()},
                {"discriminant_polylines", scene.discriminant.size()},
                {"inflection_polylines", scene.inflection.size()},
                {"svg", o.out},
                {"csv", o.csv}};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local differential geometry of ruled surfaces in R^4"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-s,--surface", o.surface, "surface definition (TOML)")->required();
    sub->add_option("--scalar", o.scalar, "override the file's scalar mode")->check(CLI::IsMember({"rational", "f64"}));
    sub->add_option("--order", o.order, "jet order")->check(CLI::Range(2, 20));
  };

  auto* classify = app.add_subcommand("classify", "point class, invariants, normal form and butterfly data");
  add_common(classify);
  classify->add_option("--u0", o.u0, "ruling parameter");
  classify->add_option("--t0", o.t0, "position on the ruling");

  auto* scan = app.add_subcommand("scan", "grid scan with SVG and CSV output");
  add_common(scan);
  scan->add_option("--point", o.point, "basepoint u,t of the Monge chart");
  scan->add_option("--region", o.region, "u0,u1,v0,v1 in Monge coordinates");
  scan->add_option("--res", o.res, "grid resolution NxM");
  scan->add_option("--out", o.out, "SVG output path")->required();
  scan->add_option("--csv", o.csv, "CSV output path");
  scan->add_option("--seed-spacing", o.seed_spacing, "distance between foliation seeds");
  scan->add_flag("--no-foliation", o.no_foliation);
  scan->add_flag("--no-discriminant", o.no_discriminant);
  scan->add_flag("--no-inflection", o.no_inflection);
  scan->add_flag("--no-ruling", o.no_ruling);

  auto* project = app.add_subcommand("project", "singularity of a parallel projection");
  add_common(project);
  project->add_option("--point", o.point, "basepoint u,t");
  auto* plane_group = project->add_option_group("plane", "projection plane");
  plane_group->add_option("--plane", o.plane, "alpha,beta,lambda,mu");
  plane_group->add_flag("--tangent", o.tangent, "project along the tangent plane");
  plane_group->require_option(1);
  project->add_flag("--reduced", o.reduced, "read the plane in the parabolic gauge used by `butterfly`");

  auto* butterfly = app.add_subcommand("butterfly", "butterfly directions and planes");
  add_common(butterfly);
  butterfly->add_option("--point", o.point, "basepoint u,t");

  auto* normalform = app.add_subcommand("normalform", "projective normal form");
  add_common(normalform);
  normalform->add_option("--point", o.point, "basepoint u,t");
  normalform->add_option("--jet", o.jet, "4 or 5")->check(CLI::IsMember({4, 5}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const SurfaceFile file = load_surface_file(o.surface);
    const std::string cmd = app.get_subcommands().front()->get_name();
    json report;
    if (cmd == "scan") {
      report = run_scan(file, o);
    } else {
      const bool exact = (o.scalar.empty() ? file.scalar : o.scalar) == "rational";
      report = exact ? dispatch<Rational>(cmd, file, o) : dispatch<double>(cmd, file, o);
    }
    std::cout << emit_report(report);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
