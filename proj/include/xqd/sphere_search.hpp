#pragma once

// Global maximisation of a function on the unit sphere: a (theta, psi) grid
// scan followed by Nelder-Mead refinement in local tangent coordinates.

#include <functional>
#include <string_view>
#include <vector>

#include "xqd/linalg.hpp"

namespace xqd {

struct GridConfig {
  int n_theta = 64;
  int n_psi = 128;
  int refine_iters = 200;
  int starts = 5;

  /// Throws InvalidParams for grids coarser than 32 x 64 or non-positive
  /// iteration / start counts.
  void validate() const;
};

/// Infinite families of maximisers detected on the grid.
enum class FreeFamily { None, FreePsi, FreeTheta, FreeBoth };

std::string_view to_string(FreeFamily family) noexcept;

/// (sin t cos p, sin t sin p, cos t)
Vec3 bloch_vector(double theta, double psi);

struct SphereMax {
  double value = 0.0;
  /// Distinct maximisers (up to u -> -u) within `kArgmaxTol` of `value`.
  std::vector<Vec3> argmax;
  FreeFamily family = FreeFamily::None;
};

inline constexpr double kArgmaxTol = 1e-7;

using SphereFunction = std::function<double(const Vec3&)>;

SphereMax maximize_on_sphere(const SphereFunction& f, const GridConfig& grid);

}  // namespace xqd
