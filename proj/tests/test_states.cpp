#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "xqd/sampling.hpp"

using namespace xqd;
using namespace xqd::test;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidParams;
}

}  // namespace

TEST_CASE("X-state parameter validation names the violated constraint") {
  XStateParams p = make_x(0.4, 0.3, 0.2, 0.1, 0.05, 0.1);
  CHECK_NOTHROW(p.validate());

  XStateParams bad_trace = p;
  bad_trace.a = 0.5;
  CHECK(kind_of([&] { x_state(bad_trace); }) == ErrorKind::InvalidParams);

  XStateParams bad_x = p;
  bad_x.x = 0.25;  // |x|^2 = 0.0625 > bc = 0.06
  try {
    bad_x.validate();
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("|x|^2") != std::string::npos);
  }

  XStateParams negative = p;
  negative.a = -0.1;
  negative.b = 0.8;
  CHECK_THROWS_AS(negative.validate(), Error);

  XStateParams slack = p;
  slack.y = std::sqrt(p.a * p.d) + 1e-15;
  CHECK_NOTHROW(slack.validate());
}

TEST_CASE("validate_state checks Hermiticity, trace and positivity") {
  Matrix4 m = Matrix4::identity() * 0.25;
  CHECK_NOTHROW(validate_state(m));
  Matrix4 non_herm = m;
  non_herm(0, 1) = 0.1;
  CHECK(kind_of([&] { validate_state(non_herm); }) == ErrorKind::NotHermitian);
  CHECK(kind_of([&] { validate_state(Matrix4::identity()); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([&] { validate_state(Matrix4::diagonal({0.6, 0.6, 0.0, -0.2})); }) ==
        ErrorKind::NotPSD);
}

TEST_CASE("x_state layout and round trip through the matrix") {
  const XStateParams p = make_x(0.4, 0.3, 0.2, 0.1, Complex(0.03, 0.04), Complex(-0.05, 0.06));
  const Matrix4 m = x_state(p);
  CHECK(m(1, 2) == p.x);
  CHECK(m(2, 1) == std::conj(p.x));
  CHECK(m(0, 3) == p.y);
  CHECK(m(3, 0) == std::conj(p.y));
  const auto back = x_params_from_matrix(m);
  REQUIRE(back.has_value());
  CHECK(back->x == p.x);
  CHECK(back->y == p.y);
  CHECK(back->d == p.d);

  Matrix4 not_x = m;
  not_x(0, 1) = 0.01;
  not_x(1, 0) = 0.01;
  CHECK_FALSE(x_params_from_matrix(not_x).has_value());
}

TEST_CASE("Werner parameters") {
  const XStateParams w = werner_params(0.5);
  CHECK(w.a == doctest::Approx(0.375));
  CHECK(w.b == doctest::Approx(0.125));
  CHECK(w.y == Complex(0.25));
  CHECK(w.is_symmetric_family());
  CHECK_THROWS_AS(werner_params(1.5), Error);
  const auto ev = eigen_hermitian_values(x_state(w));
  CHECK(ev[0] == doctest::Approx(0.625));
  CHECK(ev[3] == doctest::Approx(0.125));
}

TEST_CASE("closed-form X spectrum matches Eigen, including zero coherences") {
  Rng rng(3);
  std::vector<XStateParams> cases;
  for (int i = 0; i < 100; ++i) cases.push_back(random_x_state(rng));
  cases.push_back(make_x(0.25, 0.25, 0.25, 0.25, 0.0, 0.0));
  cases.push_back(make_x(0.4, 0.3, 0.2, 0.1, 0.0, 0.0));
  cases.push_back(make_x(0.1, 0.2, 0.3, 0.4, 0.0, 0.0));
  cases.push_back(bell_params());
  for (const auto& p : cases) {
    const Matrix4 rho = x_state(p);
    const XSpectrum s = x_spectrum(p);
    CHECK(s.values[0] <= s.values[1] + 1e-15);
    CHECK(s.values[2] <= s.values[3] + 1e-15);
    std::vector<double> ours(s.values.begin(), s.values.end());
    std::sort(ours.begin(), ours.end(), std::greater<>());
    const auto oracle = eigen_hermitian_values(rho);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ours[k] - oracle[k]) < 1e-12);
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& v = s.vectors[k];
      double norm = 0.0;
      for (const auto& z : v) norm += std::norm(z);
      CHECK(norm == doctest::Approx(1.0));
      const auto rv = rho * v;
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(rv[i] - s.values[k] * v[i]) < 1e-12);
    }
  }
}

TEST_CASE("Bloch form round trip and X-state structure") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Matrix4 rho = random_density_matrix(rng, 1 + i % 4);
    CHECK(max_diff(from_bloch(bloch_form(rho)), rho) < 1e-14);
  }
  const XStateParams p = make_x(0.4, 0.3, 0.2, 0.1, 0.05, 0.1);
  const BlochForm f = bloch_form(x_state(p));
  CHECK(f.c_a[2] == doctest::Approx(p.a + p.b - p.c - p.d));
  CHECK(f.c_b[2] == doctest::Approx(p.a - p.b + p.c - p.d));
  CHECK(f.c_a[0] == doctest::Approx(0.0));
  CHECK(f.t[2][2] == doctest::Approx(p.a - p.b - p.c + p.d));
  CHECK(f.t[0][0] == doctest::Approx(2.0 * (p.x.real() + p.y.real())));
}

TEST_CASE("classical states are valid and block-diagonal in the measured basis") {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const ClassicalStateParams c = random_classical_params(rng);
    const Matrix4 rho = classical_state(c);
    CHECK_NOTHROW(validate_state(rho));
    const Matrix4 proj = kron(0.5 * (Matrix2::identity() + pauli_dot(c.r)), Matrix2::identity());
    CHECK(max_diff(proj * rho, rho * proj) < 1e-14);
  }
  ClassicalStateParams bad;
  bad.r = {1.0, 1.0, 0.0};
  CHECK_THROWS_AS(classical_state(bad), Error);
  bad.r = {0.0, 0.0, 1.0};
  bad.p = 0.7;
  CHECK_THROWS_AS(classical_state(bad), Error);
}

TEST_CASE("local unitaries preserve the spectrum and reject non-unitary input") {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const Matrix4 rho = random_density_matrix(rng);
    const Matrix4 moved = local_unitary(rho, random_unitary(rng), random_unitary(rng));
    const auto a = eigen_hermitian_values(rho);
    const auto b = eigen_hermitian_values(moved);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-13);
  }
  CHECK(kind_of([] {
          local_unitary(0.25 * Matrix4::identity(), 2.0 * Matrix2::identity(), Matrix2::identity());
        }) == ErrorKind::NotUnitary);
}

TEST_CASE("the symmetric family is locally equivalent to its Bell-diagonal triple") {
  Rng rng(23);
  std::vector<XStateParams> cases;
  for (int i = 0; i < 100; ++i) cases.push_back(random_symmetric_state(rng));
  cases.push_back(make_x(0.3, 0.2, 0.2, 0.3, 0.05, std::polar(0.25, 1.0)));  // |x| < |y|
  cases.push_back(werner_params(0.7));
  for (const auto& p : cases) {
    const Vec3 c = symmetric_to_bd(p).c;
    const LocalFrame f = symmetric_bd_frame(p);
    const Matrix4 bd = bell_diagonal_state(c);
    CHECK(max_diff(local_unitary(x_state(p), f.u_a, f.u_b), bd) < 1e-14);

    const auto w = BellDiagonalTriple{c}.weights();
    std::vector<double> weights(w.begin(), w.end());
    std::sort(weights.begin(), weights.end(), std::greater<>());
    const auto spectrum = eigen_hermitian_values(x_state(p));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(weights[k] - spectrum[k]) < 1e-13);
  }
  CHECK(kind_of([] { symmetric_to_bd(make_x(0.4, 0.3, 0.2, 0.1, 0.0, 0.0)); }) ==
        ErrorKind::NotSymmetricFamily);
}
