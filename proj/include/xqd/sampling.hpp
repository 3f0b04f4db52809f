#pragma once

// Seeded random states, unitaries and directions for property checks.

#include <random>

#include "xqd/states.hpp"

namespace xqd {

using Rng = std::mt19937_64;

/// Diagonal uniform on the simplex; |x| uniform in [0, sqrt(bc)], |y| in
/// [0, sqrt(ad)], phases uniform.
XStateParams random_x_state(Rng& rng);

/// a = d, b = c with a uniform in [0, 1/2]; |x| <= b, |y| <= a.
XStateParams random_symmetric_state(Rng& rng);

ClassicalStateParams random_classical_params(Rng& rng);

/// Haar-distributed 2x2 unitary.
Matrix2 random_unitary(Rng& rng);

/// G G^dagger / tr with G a 4 x rank complex Gaussian matrix.
Matrix4 random_density_matrix(Rng& rng, int rank = 4);

/// Rank-deficient X-state meeting the exact degenerate-formula conditions:
/// b = c = |x| or (ad = |y|^2 and bc = |x|^2), picked at random.
XStateParams random_degenerate_x_state(Rng& rng);

/// Uniform on the sphere.
Vec3 random_unit_vector(Rng& rng);

}  // namespace xqd
