#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ruled4/classify.hpp"
#include "ruled4/surface.hpp"

namespace ruled4 {

/// Plane spanned by u = (1, alpha, 0, 0) and v = (0, lambda, mu, beta),
/// or the tangent plane itself when `tangent` is set.
template <class S>
struct PlaneSpec {
  S alpha{}, beta{}, lambda{}, mu{};
  bool tangent = false;

  static PlaneSpec make(const S& alpha, const S& beta, const S& lambda, const S& mu) {
    PlaneSpec p;
    p.alpha = alpha;
    p.beta = beta;
    p.lambda = lambda;
    p.mu = mu;
    return p;
  }
  static PlaneSpec tangent_plane() {
    PlaneSpec p;
    p.tangent = true;
    return p;
  }
};

template <class S>
struct MapJet {
  BiSeries<S> p1, p2;
};

/// Second component g of a germ A-equivalent to (y, g(x, y)).
template <class S>
struct GermJet {
  BiSeries<S> g;
  bool swapped_components = false;
  bool swapped_variables = false;
};

enum class LabelTag {
  Immersion,
  Fold,
  Cusp,
  Lips,
  Beaks,
  Swallowtail,
  Butterfly6,
  Type7,
  DegenerateXk,
  Gulls11_5,
  Type11_7,
  GullsDegenerate,
  DegenerateCorank1,
  Corank2Parabolic,
  Corank2Inflection,
  DegenerateCorank2,
  Uncertain,
};

const char* label_tag_name(LabelTag t);

template <class S>
struct Recognition {
  LabelTag tag = LabelTag::Uncertain;
  /// For DegenerateXk: smallest k with a nonzero x^k coefficient, or
  /// order + 1 when none is visible at the jet order.
  int k = 0;
  /// Pivotal coefficients in the order they were tested, keyed "g[i,j]"
  /// for the coefficient of x^i y^j.
  std::vector<std::pair<std::string, S>> evidence;

  std::string label() const;
};

template <class S>
MapJet<S> project(const MongeForm<S>& mf, const PlaneSpec<S>& pi);

/// Jacobian determinant of the case-1 projection; its zero set is the
/// singular set of the projection.
template <class S>
BiSeries<S> singular_set_function(const MongeForm<S>& mf, const PlaneSpec<S>& pi);

/// Source change making the first component exactly y, then removal of the
/// pure-y terms of the second component by a target change.
template <class S>
GermJet<S> reduce_to_prenormal(const MapJet<S>& jet);

template <class S>
Recognition<S> recognize_corank1(const GermJet<S>& germ);

template <class S>
Recognition<S> recognize_corank2(const MapJet<S>& jet, PointTag point_class);

/// project + reduce + recognize, dispatching the corank-2 case.
template <class S>
Recognition<S> recognize_projection(const MongeForm<S>& mf, const PlaneSpec<S>& pi);

/// a2 x^2 + a1 x + a0.
template <class S>
struct Quadratic {
  S a2{}, a1{}, a0{};
  S discriminant() const { return a1 * a1 - S(4) * a2 * a0; }
};

/// Real roots by the two-branch formula; a double root is reported once.
template <class S>
std::vector<double> real_roots(const Quadratic<S>& q);

/// A alpha^2 + B alpha - C on a reduced parabolic Monge form.
template <class S>
Quadratic<S> butterfly_quadratic(const MongeForm<S>& reduced);

/// The same directions read off the origin of the legacy field jets:
/// A alpha^2 - 2B alpha - C.
template <class S>
Quadratic<S> legacy_quadratic(const MongeForm<S>& reduced);

template <class S>
struct ButterflyPlanes {
  S A{}, B{}, C{};
  /// B^2 + 4AC.
  S discriminant{};
  std::vector<double> roots;
  std::vector<PlaneSpec<double>> planes;
};

/// lambda on the cusp-degeneration curve for a given alpha (beta = 1, mu = 1/alpha).
template <class S>
S lambda_on_c(const MongeForm<S>& reduced, const S& alpha);

template <class S>
ButterflyPlanes<S> butterfly_planes(const MongeForm<S>& reduced);

template <class S>
struct SpecialPlane {
  S beta{}, mu{};
  /// Discriminant of the quadratic part of the singular-set function.
  S D{};
  /// 1 for (beta, mu) = (b20, a20), 2 for (b11, a11).
  int branch = 0;
  bool degenerate = false;
};

template <class S>
std::vector<SpecialPlane<S>> special_planes_at_inflection(const MongeForm<S>& mf);

}  // namespace ruled4
