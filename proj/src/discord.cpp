#include "xqd/discord.hpp"

#include <numbers>

#include "xqd/states.hpp"

namespace xqd {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kProjectorGap = 1e-10;

// <a| M |a> over subsystem A, leaving an operator on B.
Matrix2 partial_expectation(const Matrix4& m, const CVector<2>& a) {
  Matrix2 out;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          out(k, l) += std::conj(a[i]) * a[j] * m(2 * i + k, 2 * j + l);
  return out;
}

// -mu log2 mu summed over the spectrum of a 2x2 PSD matrix with trace p, minus
// the p log2 p normalisation: p S(X / p).
double weighted_entropy(const Matrix2& x) {
  const double p = x.trace().real();
  if (p <= 0.0) return 0.0;
  const double half = 0.5 * (x(0, 0).real() - x(1, 1).real());
  const double r = std::sqrt(half * half + std::norm(x(0, 1)));
  double s = p * std::log2(p);
  for (double mu : {0.5 * p + r, 0.5 * p - r})
    if (mu > 0.0) s -= mu * std::log2(mu);
  return std::max(s, 0.0);
}

Matrix4 projector_on_a(const CVector<2>& a) {
  return kron(Matrix2::outer(a), Matrix2::identity());
}

}  // namespace

MeasurementDirection::MeasurementDirection(const Vec3& u) : u_(u) {
  const double n = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTol)
    throw Error(ErrorKind::InvalidParams, "measurement direction must be a unit vector");
}

MeasurementDirection MeasurementDirection::from_angles(double theta, double psi) {
  MeasurementDirection d;
  d.u_ = bloch_vector(theta, psi);
  return d;
}

MeasurementDirection MeasurementDirection::normalized(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!std::isfinite(n) || n == 0.0)
    throw Error(ErrorKind::InvalidParams, "direction vector must be finite and non-zero");
  MeasurementDirection d;
  d.u_ = {v[0] / n, v[1] / n, v[2] / n};
  return d;
}

double MeasurementDirection::theta() const {
  return std::acos(std::clamp(u_[2], -1.0, 1.0));
}

double MeasurementDirection::psi() const {
  if (u_[0] == 0.0 && u_[1] == 0.0) return 0.0;
  const double p = std::atan2(u_[1], u_[0]) + 0.0;
  return p < 0.0 ? p + 2.0 * std::numbers::pi : p;
}

std::pair<CVector<2>, CVector<2>> MeasurementDirection::basis() const {
  const double half = 0.5 * theta();
  const Complex phase = std::polar(1.0, psi());
  return {CVector<2>{std::cos(half), phase * std::sin(half)},
          CVector<2>{std::sin(half), -phase * std::cos(half)}};
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Bruteforce: return "bruteforce";
    case Method::SymmetricClosed: return "symmetric_closed";
    case Method::XCandidates: return "x_candidates";
    case Method::Degenerate: return "degenerate";
  }
  return "bruteforce";
}

DiscordResult make_result(double fidelity, std::vector<MeasurementDirection> directions,
                          Method method, FreeFamily family) {
  DiscordResult r;
  r.fidelity = std::clamp(fidelity, 0.0, 1.0);
  r.discord = 2.0 * (1.0 - std::sqrt(r.fidelity));
  r.optimal_directions = std::move(directions);
  r.method = method;
  r.degenerate_family = family;
  return r;
}

Matrix4 lambda_matrix(const Matrix4& rho, const MeasurementDirection& u) {
  validate_state(rho);
  const Matrix4 s = psd_sqrt(rho);
  return (s * kron(pauli_dot(u.vector()), Matrix2::identity()) * s).hermitian_part();
}

FidelityObjective::FidelityObjective(const Matrix4& rho) {
  validate_state(rho);
  sqrt_rho_ = psd_sqrt(rho);
  for (int m = 0; m < 3; ++m) {
    basis_[m] = (sqrt_rho_ * kron(pauli(m + 1), Matrix2::identity()) * sqrt_rho_).hermitian_part();
    traces_[m] = basis_[m].trace().real();
  }
}

Matrix4 FidelityObjective::lambda(const Vec3& u) const {
  return u[0] * basis_[0] + u[1] * basis_[1] + u[2] * basis_[2];
}

double FidelityObjective::operator()(const Vec3& u) const {
  const auto ev = herm_eigenvalues(lambda(u));
  const double tr = u[0] * traces_[0] + u[1] * traces_[1] + u[2] * traces_[2];
  return 0.5 * (1.0 - tr + 2.0 * (ev[0] + ev[1]));
}

double fidelity_at_direction(const Matrix4& rho, const MeasurementDirection& u) {
  return FidelityObjective(rho)(u.vector());
}

DiscordResult max_fidelity_bruteforce(const Matrix4& rho, const GridConfig& grid) {
  const FidelityObjective f(rho);
  const SphereMax best = maximize_on_sphere([&](const Vec3& u) { return f(u); }, grid);
  std::vector<MeasurementDirection> dirs;
  for (const Vec3& u : best.argmax) dirs.push_back(MeasurementDirection::normalized(u));
  return make_result(best.value, std::move(dirs), Method::Bruteforce, best.family);
}

CcsResult ccs_from_measurement(const Matrix4& rho, const MeasurementDirection& u) {
  const FidelityObjective f(rho);
  const auto eig = herm_eig(f.lambda(u.vector()));
  Matrix4 pi;
  for (std::size_t k = 0; k < 2; ++k) pi += Matrix4::outer(eig.vector(k));
  const Matrix4& s = f.sqrt_rho();
  const Matrix4 kept = s * pi * s;
  const Matrix4 rest = s * (Matrix4::identity() - pi) * s;

  const auto [a0, a1] = u.basis();
  const Matrix2 x0 = partial_expectation(kept, a0);
  const Matrix2 x1 = partial_expectation(rest, a1);
  const double norm = (x0.trace() + x1.trace()).real();

  CcsResult out;
  out.ccs = ((1.0 / norm) * (kron(Matrix2::outer(a0), x0) + kron(Matrix2::outer(a1), x1)))
                .hermitian_part();
  out.fidelity_check = fidelity_with_sqrt(s, out.ccs);
  out.degenerate_projector = std::abs(eig.values[1] - eig.values[2]) <= kProjectorGap;
  return out;
}

void QsdEnsemble::validate() const {
  if (!(lambda0 >= 0.0 && lambda1 >= 0.0) || std::abs(lambda0 + lambda1 - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidParams, "priors must be non-negative and sum to 1");
  validate_state(rho0);
  validate_state(rho1);
}

double helstrom_success(const QsdEnsemble& e) {
  e.validate();
  const Matrix4 l = (e.lambda0 * e.rho0 - e.lambda1 * e.rho1).hermitian_part();
  double positive = 0.0;
  for (double v : herm_eigenvalues(l))
    if (v > 0.0) positive += v;
  return 0.5 * (1.0 - (e.lambda0 - e.lambda1)) + positive;
}

QsdEnsemble induced_ensemble(const Matrix4& rho, const MeasurementDirection& u) {
  validate_state(rho);
  const Matrix4 s = psd_sqrt(rho);
  const Matrix2 rho_a = partial_trace_b(rho);
  const auto [a0, a1] = u.basis();

  QsdEnsemble e;
  double* priors[2] = {&e.lambda0, &e.lambda1};
  Matrix4* states[2] = {&e.rho0, &e.rho1};
  const CVector<2>* vecs[2] = {&a0, &a1};
  for (int i = 0; i < 2; ++i) {
    const CVector<2>& a = *vecs[i];
    const double prior = std::max(0.0, (Matrix2::outer(a) * rho_a).trace().real());
    if (prior < kVanishingPrior) {
      *priors[i] = 0.0;
      *states[i] = 0.25 * Matrix4::identity();
      continue;
    }
    *priors[i] = prior;
    *states[i] = ((1.0 / prior) * (s * projector_on_a(a) * s)).hermitian_part();
  }
  // Renormalise so that dropping a vanishing branch keeps the priors summing to 1.
  const double total = e.lambda0 + e.lambda1;
  e.lambda0 /= total;
  e.lambda1 /= total;
  return e;
}

double mutual_information(const Matrix4& rho) {
  validate_state(rho);
  const double i = von_neumann_entropy(partial_trace_b(rho)) +
                   von_neumann_entropy(partial_trace_a(rho)) - von_neumann_entropy(rho);
  return std::max(i, 0.0);
}

EntropicResult entropic_discord(const Matrix4& rho, const GridConfig& grid) {
  validate_state(rho);
  // maximise minus the post-measurement conditional entropy of B
  auto objective = [&](const Vec3& u) {
    const auto [a0, a1] = MeasurementDirection::normalized(u).basis();
    return -(weighted_entropy(partial_expectation(rho, a0)) +
             weighted_entropy(partial_expectation(rho, a1)));
  };
  const SphereMax best = maximize_on_sphere(objective, grid);
  EntropicResult out;
  out.classical_corr = von_neumann_entropy(partial_trace_a(rho)) + best.value;
  out.discord = mutual_information(rho) - out.classical_corr;
  out.optimal_direction = MeasurementDirection::normalized(best.argmax.front());
  return out;
}

}  // namespace xqd
