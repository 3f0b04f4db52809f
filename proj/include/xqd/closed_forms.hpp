#pragma once

// Closed-form fidelities and closest classical states for X-states: the a=d,
// b=c family (exact), its Bell-diagonal transport, the axial and equatorial
// candidates for general X-states, characteristic-polynomial data and the
// rank-deficient formula.

#include <optional>
#include <vector>

#include "xqd/discord.hpp"
#include "xqd/states.hpp"

namespace xqd {

inline constexpr double kBranchTol = 1e-12;
inline constexpr double kDegeneracyTol = 1e-10;

// ---- a = d, b = c family -------------------------------------------------

/// Axial: |a-b| > |x|+|y|; Equatorial: <; Boundary: equal within 1e-12.
enum class SymmetricCase { Axial, Equatorial, Boundary };

std::string_view to_string(SymmetricCase c) noexcept;

struct SymmetricBranch {
  SymmetricCase kind = SymmetricCase::Axial;
  bool xy_zero = false;
  /// arg(x y), with arg 0 := 0
  double phi = 0.0;
  FreeFamily family = FreeFamily::None;
  double f_axial = 0.0;
  double f_equatorial = 0.0;
};

struct SymmetricSolution {
  DiscordResult result;
  SymmetricBranch branch;
};

/// Throws NotSymmetricFamily.
SymmetricSolution symmetric_fidelity(const XStateParams& params);

/// Which explicit r-family of Bell-diagonal CCS applies.
///   CrossWeights:    p0 p_m* = 0, the other two weights positive; r splits
///                    the anti-aligned terms.
///   AlignedWeights:  p0 p_m* > 0, p1 p2 p3 = 0; r splits the aligned terms.
///   NotPrinted:      anything else.
enum class BdBranch { CrossWeights, AlignedWeights, NotPrinted };

std::string_view to_string(BdBranch b) noexcept;

struct BdTransport {
  Vec3 c{};
  std::array<double, 4> p{};
  /// q_m for m = 1..3 (index m - 1)
  Vec3 q{};
  /// optimal measurement axis m* in 1..3, maximising sqrt(p0 pm) + sqrt(pn pk)
  int axis = 3;
  double fidelity = 1.0;
  BdBranch branch = BdBranch::NotPrinted;
};

/// Any Bell-diagonal correlation triple. Throws InvalidParams if the weights
/// leave [-1e-12, 1].
BdTransport bd_transport(const Vec3& c);

/// A-classical state on the Bell-diagonal side at parameter r in [-1, 1].
/// Throws PreconditionNotMet for BdBranch::NotPrinted.
Matrix4 bd_ccs(const BdTransport& t, double r);

struct SymmetricCcs {
  Matrix4 ccs;
  double fidelity = 0.0;
  BdBranch branch = BdBranch::NotPrinted;
  /// r requested but no explicit family applies; measurement-based fallback used.
  bool branch_not_printed = false;
};

/// With r: the transported r-family when an explicit branch applies. Without r,
/// or as the flagged fallback: ccs_from_measurement at the optimal direction.
SymmetricCcs symmetric_ccs(const XStateParams& params, std::optional<double> r = std::nullopt);

struct ClassicalCorrelation {
  double c_bu = 0.0;
  Matrix4 closest_product;
};

/// C_Bu = 2 - (sqrt(a+|y|) + sqrt(a-|y|) + sqrt(b+|x|) + sqrt(b-|x|)) with
/// closest product state I/4. Throws NotSymmetricFamily.
ClassicalCorrelation classical_correlation_symmetric(const XStateParams& params);

// ---- general X-states ------------------------------------------------------

/// 1/2 (1 + sqrt((b+c)^2 - 4|x|^2) + sqrt((a+d)^2 - 4|y|^2)), the u = e_z value.
double x_fidelity_z(const XStateParams& params);

/// Diagonal CCS for the e_z measurement.
Matrix4 x_ccs_z(const XStateParams& params);

struct EquatorialFidelity {
  double fidelity = 0.0;
  /// -arg(xy)/2 in [0, 2pi); representative 0 when free_psi.
  double psi_opt = 0.0;
  bool free_psi = false;
};

/// 1/2 + sqrt(2|xy| + ac + bd + 2 sqrt(k)), k = (ad - |y|^2)(bc - |x|^2).
EquatorialFidelity x_fidelity_equatorial(const XStateParams& params);

enum class Candidate { Axial, Equatorial };

struct CandidateBreakdown {
  double f_axial = 0.0;
  double f_equatorial = 0.0;
  double h_max = 0.0;
  double k = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
  Candidate chosen = Candidate::Axial;
};

struct CandidateSolution {
  /// max of the two candidates: a lower bound on the optimal fidelity.
  DiscordResult result;
  CandidateBreakdown breakdown;
};

CandidateSolution x_candidate_discord(const XStateParams& params);

struct CharPolyCoeffs {
  double t3 = 0.0;
  double t2 = 0.0;
  double t1 = 0.0;
  double t0 = 0.0;
  double g = 0.0;
  double delta = 0.0;
};

/// Coefficients of det(lambda - Lambda(u)) = l^4 + t3 l^3 + t2 l^2 + t1 l + t0
/// at u with cos theta = m, azimuth psi.
CharPolyCoeffs char_poly_coeffs(const XStateParams& params, double m, double psi);

/// g = 2 sum(a^2) - 1 - 4(|x|^2 + |y|^2 - ad - bc) - 8|xy|
double profile_g(const XStateParams& params);
/// c + d - a - b
double profile_delta(const XStateParams& params);

struct Lambda1Profile {
  double lambda1 = 0.0;
  double g = 0.0;
  double delta = 0.0;
};

/// 2 lambda1(m) = sqrt(m^2 g + 8|xy| + 4ac + 4bd) - m Delta, the profile formula; no
/// claim that this is an eigenvalue outside the rank-deficient regime.
Lambda1Profile lambda1_profile(const XStateParams& params, double m);

enum class ProfileRegime { EndpointOne, EndpointZero, BothEndpoints, Interior };

std::string_view to_string(ProfileRegime r) noexcept;

struct TableOptimum {
  ProfileRegime regime = ProfileRegime::EndpointZero;
  std::vector<double> m;
};

/// m_opt from the sign table of (g, Delta):
///   g >= 0, Delta < 0 -> 1;  g <= 0, Delta >= 0 -> 0;  g > 0, Delta >= 0 -> {0, 1};
///   g < 0, Delta < 0 -> -2 sqrt(2|xy| + ac + bd) Delta / sqrt(g^2 - Delta^2 g).
TableOptimum table_m_opt(const XStateParams& params);

/// Which rank-deficiency condition holds (within 1e-10).
struct DegeneracyConditions {
  bool both_blocks_singular = false;  // ad = |y|^2 and bc = |x|^2
  bool outer_block_flat = false;      // a = d = |y|
  bool inner_block_flat = false;      // b = c = |x|

  bool any() const { return both_blocks_singular || outer_block_flat || inner_block_flat; }
};

DegeneracyConditions degeneracy_conditions(const XStateParams& params);

struct DegenerateSolution {
  double fidelity = 0.0;
  /// cos theta of the maximisers actually attained (0 and/or 1).
  std::vector<double> m_opt;
  std::vector<MeasurementDirection> directions;
  TableOptimum table;
  DegeneracyConditions conditions;
};

/// Exact optimum when det rho = 0 and t1 vanishes identically:
/// F = 1/2 + 1/2 max(sqrt(K), sqrt(g + K), |Delta|), K = 8|xy| + 4ac + 4bd.
/// Throws PreconditionNotMet.
DegenerateSolution degenerate_fidelity(const XStateParams& params);

struct UpperBound {
  double d_upper = 0.0;
  double f_best = 0.0;
  MeasurementDirection witness;
};

/// 2(1 - sqrt F_best) over the axial and equatorial candidates and, when its
/// preconditions hold, the rank-deficient formula.
UpperBound discord_upper_bound(const XStateParams& params);

}  // namespace xqd
