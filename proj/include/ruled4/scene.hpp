#pragma once

#include <string>
#include <vector>

#include "ruled4/bde.hpp"
#include "ruled4/classify.hpp"
#include "ruled4/foliation.hpp"

namespace ruled4 {

struct SceneLayers {
  bool foliation = true, discriminant = true, inflection = true, ruling = true;
};

struct SceneSpec {
  Region region{-0.1, 0.1, -0.1, 0.1};
  int nu = 41, nv = 41;
  /// Distance between foliation seeds; 0 picks an eighth of the region width.
  double seed_spacing = 0.0;
  double step = 1e-3;
  SceneLayers layers;
};

struct SceneCell {
  double u = 0.0, v = 0.0;
  PointTag point = PointTag::Uncertain;
  ButterflyClass butterfly = ButterflyClass::Uncertain;
  double delta = 0.0;
};

struct Scene {
  SceneSpec spec;
  std::vector<SceneCell> cells;
  std::vector<IntegralCurve> foliation;
  std::vector<Polyline> discriminant, inflection, ruling;
};

/// Samples the Monge chart of a surface on the spec grid. Point classes use
/// the Hessian kappa field, butterfly classes the butterfly BDE.
Scene build_scene(const MongeForm<double>& mf, const SceneSpec& spec);

/// Fixed-precision renderings; identical input gives identical bytes.
std::string scene_svg(const Scene& scene);
std::string scene_csv(const Scene& scene);

}  // namespace ruled4
