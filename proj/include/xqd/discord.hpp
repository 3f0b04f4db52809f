#pragma once

// Measurement-level engine: the fidelity objective over von Neumann
// measurements on A, its sphere maximum, closest A-classical states built from
// a measurement, the two-state discrimination picture and entropic quantities.

#include <string_view>
#include <utility>
#include <vector>

#include "xqd/linalg.hpp"
#include "xqd/sphere_search.hpp"

namespace xqd {

/// Unit Bloch vector u; the measurement is {(I + u.sigma)/2, (I - u.sigma)/2}.
class MeasurementDirection {
 public:
  MeasurementDirection() = default;

  /// Throws InvalidParams unless |u| = 1 within 1e-12.
  explicit MeasurementDirection(const Vec3& u);

  static MeasurementDirection from_angles(double theta, double psi);
  /// Rescales any non-zero vector onto the sphere.
  static MeasurementDirection normalized(const Vec3& v);

  const Vec3& vector() const { return u_; }
  double theta() const;
  /// Azimuth in [0, 2 pi); 0 at the poles.
  double psi() const;
  /// cos theta
  double m() const { return u_[2]; }
  /// sin theta e^{i psi}
  Complex n() const { return {u_[0], u_[1]}; }

  /// Eigenvectors of u.sigma for +1 and -1.
  std::pair<CVector<2>, CVector<2>> basis() const;

 private:
  Vec3 u_{0.0, 0.0, 1.0};
};

enum class Method { Bruteforce, SymmetricClosed, XCandidates, Degenerate };

std::string_view to_string(Method method) noexcept;

struct DiscordResult {
  double fidelity = 1.0;
  double discord = 0.0;
  std::vector<MeasurementDirection> optimal_directions;
  Method method = Method::Bruteforce;
  FreeFamily degenerate_family = FreeFamily::None;
};

/// Fills discord = 2(1 - sqrt F).
DiscordResult make_result(double fidelity, std::vector<MeasurementDirection> directions,
                          Method method, FreeFamily family = FreeFamily::None);

/// sqrt(rho) (u.sigma x I) sqrt(rho)
Matrix4 lambda_matrix(const Matrix4& rho, const MeasurementDirection& u);

/// Objective with sqrt(rho) and the three Lambda(e_m) cached, so that each
/// evaluation is a linear combination plus one eigenvalue solve.
class FidelityObjective {
 public:
  /// Validates rho.
  explicit FidelityObjective(const Matrix4& rho);

  double operator()(const Vec3& u) const;
  Matrix4 lambda(const Vec3& u) const;
  const Matrix4& sqrt_rho() const { return sqrt_rho_; }

 private:
  Matrix4 sqrt_rho_;
  std::array<Matrix4, 3> basis_;
  Vec3 traces_{};
};

/// 1/2 (1 - tr Lambda + 2 (lambda_1 + lambda_2)), eigenvalues non-increasing.
double fidelity_at_direction(const Matrix4& rho, const MeasurementDirection& u);

DiscordResult max_fidelity_bruteforce(const Matrix4& rho, const GridConfig& grid = {});

struct CcsResult {
  Matrix4 ccs;
  double fidelity_check = 0.0;
  /// lambda_2 = lambda_3 within 1e-10: the top-two projector is not unique and
  /// the eigensolver's ordering picked one representative.
  bool degenerate_projector = false;
};

CcsResult ccs_from_measurement(const Matrix4& rho, const MeasurementDirection& u);

/// Two-state discrimination problem with priors lambda0, lambda1.
struct QsdEnsemble {
  double lambda0 = 0.5;
  double lambda1 = 0.5;
  Matrix4 rho0;
  Matrix4 rho1;

  /// Priors non-negative and summing to 1 within 1e-10; states valid.
  void validate() const;
};

inline constexpr double kVanishingPrior = 1e-12;

/// 1/2 (1 - tr L) + sum of positive eigenvalues of L = lambda0 rho0 - lambda1 rho1.
double helstrom_success(const QsdEnsemble& ensemble);

/// lambda_i = <a_i|rho_A|a_i>, rho_i = sqrt(rho)(|a_i><a_i| x I)sqrt(rho)/lambda_i.
/// A prior below 1e-12 is set to zero and its state to I/4.
QsdEnsemble induced_ensemble(const Matrix4& rho, const MeasurementDirection& u);

double mutual_information(const Matrix4& rho);

struct EntropicResult {
  double classical_corr = 0.0;
  double discord = 0.0;
  MeasurementDirection optimal_direction;
};

/// Classical correlation J = S(rho_B) - min_u sum_i p_i S(rho_B|i) and
/// discord I - J, both sphere-optimised.
EntropicResult entropic_discord(const Matrix4& rho, const GridConfig& grid = {});

}  // namespace xqd
