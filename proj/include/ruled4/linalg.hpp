#pragma once

// Fixed-size dense linear algebra over exact or float scalars.

#include <array>
#include <cmath>
#include <optional>

#include "ruled4/scalar.hpp"

namespace ruled4 {

template <class S>
using Vec4 = std::array<S, 4>;

template <class S>
using Mat4 = std::array<std::array<S, 4>, 4>;

template <class S>
Mat4<S> identity4() {
  Mat4<S> m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = S(i == j ? 1 : 0);
  return m;
}

template <class S>
Vec4<S> mat_vec(const Mat4<S>& m, const Vec4<S>& v) {
  Vec4<S> r{};
  for (int i = 0; i < 4; ++i) {
    r[i] = S(0);
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
  }
  return r;
}

template <class S>
Mat4<S> mat_mul(const Mat4<S>& a, const Mat4<S>& b) {
  Mat4<S> r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      r[i][j] = S(0);
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

/// Gauss-Jordan inverse; nullopt when singular (exactly, or below tau in float mode).
template <class S, std::size_t N>
std::optional<std::array<std::array<S, N>, N>> invert(std::array<std::array<S, N>, N> a) {
  std::array<std::array<S, N>, N> inv{};
  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      inv[i][j] = S(i == j ? 1 : 0);
      scale = std::max(scale, std::abs(to_double(a[i][j])));
    }
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    if constexpr (is_exact_v<S>) {
      while (piv < N && a[piv][col] == 0) ++piv;
      if (piv == N) return std::nullopt;
    } else {
      for (std::size_t r = col + 1; r < N; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (is_zero(a[piv][col], scale)) return std::nullopt;
    }
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    S p = a[col][col];
    for (std::size_t j = 0; j < N; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col || a[r][col] == 0) continue;
      S f = a[r][col];
      for (std::size_t j = 0; j < N; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Rank of a small row set, with the float zero test relative to the entries.
template <class S, std::size_t R, std::size_t C>
int rank_of(std::array<std::array<S, C>, R> a) {
  double scale = 0.0;
  for (auto& row : a)
    for (auto& v : row) scale = std::max(scale, std::abs(to_double(v)));
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t piv = row;
    if constexpr (is_exact_v<S>) {
      while (piv < R && a[piv][col] == 0) ++piv;
      if (piv == R) continue;
    } else {
      for (std::size_t r = row + 1; r < R; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (is_zero(a[piv][col], scale)) continue;
    }
    std::swap(a[piv], a[row]);
    for (std::size_t r = row + 1; r < R; ++r) {
      S f = a[r][col] / a[row][col];
      for (std::size_t j = col; j < C; ++j) a[r][j] -= f * a[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

/// An affine map local -> world: world = origin + linear * local.
template <class S>
struct Frame {
  Vec4<S> origin{};
  Mat4<S> linear = identity4<S>();

  Vec4<S> apply(const Vec4<S>& local) const {
    Vec4<S> r = mat_vec(linear, local);
    for (int i = 0; i < 4; ++i) r[i] += origin[i];
    return r;
  }
  /// Frame whose local coordinates are mapped through m first.
  Frame compose(const Mat4<S>& m, const Vec4<S>& shift = Vec4<S>{}) const {
    Frame f;
    f.linear = mat_mul(linear, m);
    Vec4<S> s = mat_vec(linear, shift);
    for (int i = 0; i < 4; ++i) f.origin[i] = origin[i] + s[i];
    return f;
  }
};

}  // namespace ruled4
