#pragma once

#include <array>
#include <string>
#include <vector>

#include "ruled4/scalar.hpp"
#include "ruled4/surface.hpp"

namespace ruled4 {

/// Parsed surface definition. Coefficients are kept exact; f64 mode
/// converts on use.
struct SurfaceFile {
  std::string id;
  std::string scalar = "rational";
  std::array<std::vector<Rational>, 4> base, director;

  RuledSurface<Rational> surface() const { return RuledSurface<Rational>::from_coefficients(base, director); }
};

/// Accepts a small TOML subset: comments, `[base]` / `[director]` tables,
/// `key = "string"` and `key = [n, n, ...]` with integer, decimal or quoted
/// rational entries. Errors carry "line:col".
SurfaceFile parse_surface_toml(const std::string& text);

SurfaceFile load_surface_file(const std::string& path);

}  // namespace ruled4
