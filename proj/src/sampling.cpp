#include "xqd/sampling.hpp"

#include <numbers>

namespace xqd {

namespace {

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

Complex random_phase(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi)); }

Vec3 random_in_ball(Rng& rng) {
  const Vec3 u = random_unit_vector(rng);
  const double r = std::cbrt(uniform(rng));
  return {r * u[0], r * u[1], r * u[2]};
}

}  // namespace

XStateParams random_x_state(Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::array<double, 4> w{};
  double total = 0.0;
  for (double& v : w) total += (v = expo(rng));
  XStateParams p;
  p.a = w[0] / total;
  p.b = w[1] / total;
  p.c = w[2] / total;
  p.d = 1.0 - p.a - p.b - p.c;
  if (p.d < 0.0) p.d = 0.0;
  p.x = uniform(rng) * std::sqrt(p.b * p.c) * random_phase(rng);
  p.y = uniform(rng) * std::sqrt(p.a * p.d) * random_phase(rng);
  return p;
}

XStateParams random_symmetric_state(Rng& rng) {
  XStateParams p;
  p.a = p.d = uniform(rng, 0.0, 0.5);
  p.b = p.c = 0.5 - p.a;
  p.x = uniform(rng) * p.b * random_phase(rng);
  p.y = uniform(rng) * p.a * random_phase(rng);
  return p;
}

XStateParams random_degenerate_x_state(Rng& rng) {
  XStateParams p = random_x_state(rng);
  if (uniform(rng) < 0.5) {
    p.c = p.b;
    const double total = p.a + 2.0 * p.b + p.d;
    p.a /= total;
    p.b = p.c = p.b / total;
    p.d = 1.0 - p.a - 2.0 * p.b;
    if (p.d < 0.0) p.d = 0.0;
    p.x = p.b * random_phase(rng);
    p.y = uniform(rng) * std::sqrt(p.a * p.d) * random_phase(rng);
  } else {
    p.x = std::sqrt(p.b * p.c) * random_phase(rng);
    p.y = std::sqrt(p.a * p.d) * random_phase(rng);
  }
  return p;
}

ClassicalStateParams random_classical_params(Rng& rng) {
  ClassicalStateParams c;
  c.p = uniform(rng, 0.0, 0.5);
  c.r = random_unit_vector(rng);
  c.s = random_in_ball(rng);
  c.t = random_in_ball(rng);
  return c;
}

Matrix2 random_unitary(Rng& rng) {
  // unit quaternion -> SU(2), times a global phase
  std::array<double, 4> q{};
  double n = 0.0;
  for (double& v : q) {
    v = normal(rng);
    n += v * v;
  }
  n = std::sqrt(n);
  const Complex alpha(q[0] / n, q[1] / n);
  const Complex beta(q[2] / n, q[3] / n);
  Matrix2 u;
  u(0, 0) = alpha;
  u(0, 1) = -std::conj(beta);
  u(1, 0) = beta;
  u(1, 1) = std::conj(alpha);
  return random_phase(rng) * u;
}

Matrix4 random_density_matrix(Rng& rng, int rank) {
  if (rank < 1 || rank > 4)
    throw Error(ErrorKind::InvalidParams, "rank must lie in 1..4");
  Matrix4 rho;
  for (int k = 0; k < rank; ++k) {
    CVector<4> g;
    for (auto& z : g) z = Complex(normal(rng), normal(rng));
    rho += Matrix4::outer(g);
  }
  return ((1.0 / rho.trace().real()) * rho).hermitian_part();
}

Vec3 random_unit_vector(Rng& rng) {
  Vec3 v{normal(rng), normal(rng), normal(rng)};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace xqd
