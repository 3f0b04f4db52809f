#include <doctest.h>

#include <iomanip>

#include "support.hpp"
#include "xqd/sampling.hpp"

using namespace xqd;
using namespace xqd::test;

namespace {

Matrix4 random_hermitian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m.hermitian_part();
}

CVector<4> ket(std::initializer_list<Complex> v) {
  CVector<4> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace

TEST_CASE("herm_eig agrees with Eigen on random Hermitian matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix4 h = random_hermitian(rng);
    const auto eig = herm_eig(h);
    const auto oracle = eigen_hermitian_values(h);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(eig.values[k] - oracle[k]) < 1e-12);
      const auto v = eig.vector(k);
      const auto hv = h * v;
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(hv[i] - eig.values[k] * v[i]) < 1e-11);
    }
    CHECK(max_diff(eig.vectors.adjoint() * eig.vectors, Matrix4::identity()) < 1e-12);
    CHECK(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
  }
}

TEST_CASE("herm_eig handles repeated eigenvalues and 2x2 input") {
  const auto eig = herm_eig(Matrix4::diagonal({0.5, 0.25, 0.25, 0.0}));
  CHECK(eig.values[0] == doctest::Approx(0.5));
  CHECK(eig.values[1] == doctest::Approx(0.25));
  CHECK(eig.values[2] == doctest::Approx(0.25));
  CHECK(max_diff(eig.vectors.adjoint() * eig.vectors, Matrix4::identity()) < 1e-14);

  const auto two = herm_eig(pauli(2));
  CHECK(two.values[0] == doctest::Approx(1.0));
  CHECK(two.values[1] == doctest::Approx(-1.0));
  CHECK(herm_eigenvalues(Matrix4::identity())[3] == doctest::Approx(1.0));
}

TEST_CASE("herm_eig rejects non-Hermitian and non-finite input") {
  Matrix4 m = Matrix4::identity();
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(m), Error);
  try {
    herm_eig(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  Matrix4 bad = Matrix4::identity();
  bad(2, 2) = std::nan("");
  CHECK_THROWS_AS(herm_eigenvalues(bad), Error);
}

TEST_CASE("psd_sqrt squares back and clamps tiny negative eigenvalues") {
  Rng rng(11);
  for (int rank = 1; rank <= 4; ++rank) {
    const Matrix4 rho = random_density_matrix(rng, rank);
    const Matrix4 s = psd_sqrt(rho);
    CHECK(max_diff(s * s, rho) < 1e-12);
    CHECK(s.hermiticity_defect() < 1e-15);
    CHECK(herm_eigenvalues(s)[3] > -1e-12);
  }
  CHECK_NOTHROW(psd_sqrt(Matrix4::diagonal({1.0, 0.0, 0.0, -1e-11})));
  try {
    psd_sqrt(Matrix4::diagonal({1.0, 0.0, 0.0, -1e-9}));
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPSD);
  }
}

TEST_CASE("fidelity matches the Eigen oracle and its defining properties") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix4 rho = random_density_matrix(rng, 1 + trial % 4);
    const Matrix4 sigma = random_density_matrix(rng, 1 + (trial / 4) % 4);
    const double f = fidelity(rho, sigma);
    CHECK(std::abs(f - eigen_fidelity(rho, sigma)) < 1e-10);
    CHECK(std::abs(f - fidelity(sigma, rho)) < 1e-9);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("fidelity of pure states is the squared overlap") {
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix4 phi = Matrix4::outer(ket({1.0, 0.0, 0.0, 0.0}));
  const Matrix4 plus = Matrix4::outer(ket({r, r, 0.0, 0.0}));
  CHECK(fidelity(phi, plus) == doctest::Approx(0.5));
  CHECK(fidelity(0.25 * Matrix4::identity(), phi) == doctest::Approx(0.25));
  CHECK(bures_distance_sq(phi, phi) == doctest::Approx(0.0));
  CHECK(bures_distance_sq(phi, Matrix4::outer(ket({0.0, 1.0, 0.0, 0.0}))) == doctest::Approx(2.0));
}

TEST_CASE("fidelity rejects a non-PSD second argument hidden in the kernel of rho") {
  const Matrix4 rho = Matrix4::diagonal({1.0, 0.0, 0.0, 0.0});
  const Matrix4 sigma = Matrix4::diagonal({1.0, 0.1, 0.0, -0.1});
  CHECK_THROWS_AS(fidelity(rho, sigma), Error);
}

TEST_CASE("trace norm agrees with Eigen") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix4 h = random_hermitian(rng);
    CHECK(trace_norm(h) == doctest::Approx(eigen_trace_norm(h)).epsilon(1e-12));
  }
}

TEST_CASE("partial traces and entropies") {
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix4 bell = Matrix4::outer(ket({r, 0.0, 0.0, r}));
  CHECK(max_diff(partial_trace_a(bell), 0.5 * Matrix2::identity()) < 1e-15);
  CHECK(max_diff(partial_trace_b(bell), 0.5 * Matrix2::identity()) < 1e-15);
  CHECK(von_neumann_entropy(bell) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(partial_trace_b(bell)) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(0.25 * Matrix4::identity()) == doctest::Approx(2.0));

  Matrix2 a;
  a(0, 0) = 0.7;
  a(1, 1) = 0.3;
  a(0, 1) = Complex(0.1, 0.2);
  a(1, 0) = Complex(0.1, -0.2);
  Matrix2 b;
  b(0, 0) = 0.4;
  b(1, 1) = 0.6;
  const Matrix4 prod = kron(a, b);
  CHECK(max_diff(partial_trace_b(prod), a) < 1e-15);
  CHECK(max_diff(partial_trace_a(prod), b) < 1e-15);
}

TEST_CASE("Pauli algebra") {
  for (int i = 1; i <= 3; ++i) CHECK(max_diff(pauli(i) * pauli(i), Matrix2::identity()) < 1e-15);
  CHECK(max_diff(pauli(1) * pauli(2), Complex(0.0, 1.0) * pauli(3)) < 1e-15);
  const Vec3 u{0.36, 0.48, 0.8};
  CHECK(max_diff(pauli_dot(u), 0.36 * pauli(1) + 0.48 * pauli(2) + 0.8 * pauli(3)) < 1e-15);
  CHECK(max_diff(pauli_dot(u) * pauli_dot(u), Matrix2::identity()) < 1e-15);
  const Matrix4 zz = kron(pauli(3), pauli(3));
  CHECK(zz(0, 0) == Complex(1.0));
  CHECK(zz(1, 1) == Complex(-1.0));
  CHECK(zz(2, 2) == Complex(-1.0));
}
