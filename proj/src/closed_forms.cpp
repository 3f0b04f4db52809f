#include "xqd/closed_forms.hpp"

#include <numbers>

namespace xqd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWeightTol = 1e-12;

double arg_or_zero(Complex z) { return z == Complex{} ? 0.0 : std::arg(z); }

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi) + 0.0;  // + 0.0 turns -0 into 0
  return a < 0.0 ? a + 2.0 * kPi : a;
}

double safe_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

void require_symmetric(const XStateParams& p) {
  if (!p.is_symmetric_family())
    throw Error(ErrorKind::NotSymmetricFamily,
                "state is not in the a = d, b = c family");
}

MeasurementDirection pole() { return MeasurementDirection(Vec3{0.0, 0.0, 1.0}); }

MeasurementDirection equator(double psi) {
  return MeasurementDirection::from_angles(0.5 * kPi, psi);
}

double xy_phase(const XStateParams& p) { return arg_or_zero(p.x * p.y); }

bool xy_vanishes(const XStateParams& p) { return std::abs(p.x) * std::abs(p.y) <= kBranchTol; }

// Diagonal of rho psi psi^dagger rho / (psi^dagger rho psi) for the block
// [[p, z], [conj z, q]], psi the eigenvector of diag(1, -1) * block with the
// non-negative eigenvalue.
std::pair<double, double> block_contribution(double p, double q, Complex z) {
  const double lam = 0.5 * (p - q + safe_sqrt((p + q) * (p + q) - 4.0 * std::norm(z)));
  const Complex psi0 = q + lam;
  const Complex psi1 = -std::conj(z);
  const Complex w0 = p * psi0 + z * psi1;
  const Complex w1 = std::conj(z) * psi0 + q * psi1;
  const double weight = (std::conj(psi0) * w0 + std::conj(psi1) * w1).real();
  const double scale = std::norm(psi0) + std::norm(psi1);
  if (weight <= 1e-15 * scale) return {0.0, 0.0};
  return {std::norm(w0) / weight, std::norm(w1) / weight};
}

Matrix2 projector(const CVector<2>& v) { return Matrix2::outer(v); }

}  // namespace

std::string_view to_string(SymmetricCase c) noexcept {
  switch (c) {
    case SymmetricCase::Axial: return "axial";
    case SymmetricCase::Equatorial: return "equatorial";
    case SymmetricCase::Boundary: return "boundary";
  }
  return "axial";
}

std::string_view to_string(BdBranch b) noexcept {
  switch (b) {
    case BdBranch::CrossWeights: return "cross_weights";
    case BdBranch::AlignedWeights: return "aligned_weights";
    case BdBranch::NotPrinted: return "not_printed";
  }
  return "not_printed";
}

std::string_view to_string(ProfileRegime r) noexcept {
  switch (r) {
    case ProfileRegime::EndpointOne: return "endpoint_one";
    case ProfileRegime::EndpointZero: return "endpoint_zero";
    case ProfileRegime::BothEndpoints: return "both_endpoints";
    case ProfileRegime::Interior: return "interior";
  }
  return "endpoint_zero";
}

SymmetricSolution symmetric_fidelity(const XStateParams& p) {
  require_symmetric(p);
  p.validate();
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);

  SymmetricBranch br;
  br.f_axial = 0.5 + safe_sqrt(p.a * p.a - ay * ay) + safe_sqrt(p.b * p.b - ax * ax);
  br.f_equatorial = 0.5 + safe_sqrt((p.a + ay) * (p.b + ax)) + safe_sqrt((p.a - ay) * (p.b - ax));
  br.xy_zero = xy_vanishes(p);
  br.phi = xy_phase(p);
  const double psi_opt = wrap_angle(-0.5 * br.phi);

  const double gap = std::abs(p.a - p.b) - (ax + ay);
  double f = 0.0;
  std::vector<MeasurementDirection> dirs;
  if (std::abs(gap) <= kBranchTol) {
    br.kind = SymmetricCase::Boundary;
    br.family = br.xy_zero ? FreeFamily::FreeBoth : FreeFamily::FreeTheta;
    f = std::max(br.f_axial, br.f_equatorial);
    dirs = {pole(), equator(psi_opt)};
  } else if (gap > 0.0) {
    br.kind = SymmetricCase::Axial;
    f = br.f_axial;
    dirs = {pole()};
  } else {
    br.kind = SymmetricCase::Equatorial;
    br.family = br.xy_zero ? FreeFamily::FreePsi : FreeFamily::None;
    f = br.f_equatorial;
    dirs = {equator(psi_opt)};
  }
  return {make_result(f, std::move(dirs), Method::SymmetricClosed, br.family), br};
}

BdTransport bd_transport(const Vec3& c) {
  BdTransport t;
  t.c = c;
  t.p = BellDiagonalTriple{c}.weights();
  for (double& w : t.p) {
    if (!(w >= -kWeightTol && w <= 1.0 + kWeightTol))
      throw Error(ErrorKind::InvalidParams, "Bell-diagonal weights must lie in [0, 1]");
    w = std::clamp(w, 0.0, 1.0);
  }
  auto others = [](int m) {
    return m == 1 ? std::pair{2, 3} : m == 2 ? std::pair{1, 3} : std::pair{1, 2};
  };
  double best = -1.0;
  for (int m = 1; m <= 3; ++m) {
    const auto [n, k] = others(m);
    const double s0m = std::sqrt(t.p[0] * t.p[m]);
    const double snk = std::sqrt(t.p[n] * t.p[k]);
    t.q[m - 1] = 0.5 + (2.0 * snk - 2.0 * s0m + c[m - 1]) / (4.0 * snk + 4.0 * s0m + 2.0);
    if (s0m + snk > best) {
      best = s0m + snk;
      t.axis = m;
    }
  }
  t.fidelity = std::min(1.0, 0.5 + best);

  const auto [n, k] = others(t.axis);
  const bool aligned_zero = std::min(t.p[0], t.p[t.axis]) <= kWeightTol;
  const bool others_positive = t.p[n] > kWeightTol && t.p[k] > kWeightTol;
  const bool some_zero = std::min({t.p[1], t.p[2], t.p[3]}) <= kWeightTol;
  if (aligned_zero && others_positive)
    t.branch = BdBranch::CrossWeights;
  else if (!aligned_zero && some_zero)
    t.branch = BdBranch::AlignedWeights;
  return t;
}

Matrix4 bd_ccs(const BdTransport& t, double r) {
  if (!(r >= -1.0 && r <= 1.0))
    throw Error(ErrorKind::InvalidParams, "r must lie in [-1, 1]");
  if (t.branch == BdBranch::NotPrinted)
    throw Error(ErrorKind::PreconditionNotMet,
                "no explicit r-family for these Bell-diagonal weights");
  Vec3 axis{0.0, 0.0, 0.0};
  axis[t.axis - 1] = 1.0;
  const auto [v0, v1] = MeasurementDirection(axis).basis();
  const Matrix2 p0 = projector(v0);
  const Matrix2 p1 = projector(v1);
  const double q = t.q[t.axis - 1];
  const bool cross = t.branch == BdBranch::CrossWeights;
  const double w00 = cross ? 1.0 : 1.0 + r;
  const double w11 = cross ? 1.0 : 1.0 - r;
  const double w01 = cross ? 1.0 + r : 1.0;
  const double w10 = cross ? 1.0 - r : 1.0;
  return 0.5 * q * (w00 * kron(p0, p0) + w11 * kron(p1, p1)) +
         0.5 * (1.0 - q) * (w01 * kron(p0, p1) + w10 * kron(p1, p0));
}

SymmetricCcs symmetric_ccs(const XStateParams& p, std::optional<double> r) {
  const SymmetricSolution sol = symmetric_fidelity(p);
  const Matrix4 rho = x_state(p);
  SymmetricCcs out;
  const BdTransport t = bd_transport(symmetric_to_bd(p).c);
  out.branch = t.branch;
  if (r.has_value() && t.branch != BdBranch::NotPrinted) {
    const LocalFrame frame = symmetric_bd_frame(p);
    out.ccs = local_unitary(bd_ccs(t, *r), frame.u_a.adjoint(), frame.u_b.adjoint());
    out.fidelity = fidelity(rho, out.ccs);
    return out;
  }
  out.branch_not_printed = r.has_value();
  const CcsResult c = ccs_from_measurement(rho, sol.result.optimal_directions.front());
  out.ccs = c.ccs;
  out.fidelity = c.fidelity_check;
  return out;
}

ClassicalCorrelation classical_correlation_symmetric(const XStateParams& p) {
  require_symmetric(p);
  p.validate();
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  ClassicalCorrelation out;
  out.c_bu = 2.0 - (safe_sqrt(p.a + ay) + safe_sqrt(p.a - ay) + safe_sqrt(p.b + ax) +
                    safe_sqrt(p.b - ax));
  out.closest_product = 0.25 * Matrix4::identity();
  return out;
}

double x_fidelity_z(const XStateParams& p) {
  p.validate();
  const double tau = (p.b + p.c) * (p.b + p.c) - 4.0 * std::norm(p.x);
  const double kappa = (p.a + p.d) * (p.a + p.d) - 4.0 * std::norm(p.y);
  return std::min(1.0, 0.5 * (1.0 + safe_sqrt(tau) + safe_sqrt(kappa)));
}

Matrix4 x_ccs_z(const XStateParams& p) {
  p.validate();
  const auto [c01, c10] = block_contribution(p.b, p.c, p.x);
  const auto [c00, c11] = block_contribution(p.a, p.d, p.y);
  std::array<double, 4> diag{c00, c01, std::max(p.c - c10, 0.0), std::max(p.d - c11, 0.0)};
  const double total = diag[0] + diag[1] + diag[2] + diag[3];
  for (double& v : diag) v /= total;
  return Matrix4::diagonal(diag);
}

EquatorialFidelity x_fidelity_equatorial(const XStateParams& p) {
  p.validate();
  const double h_max = 2.0 * std::abs(p.x * p.y) + p.a * p.c + p.b * p.d;
  const double k = std::max(p.determinant(), 0.0);
  EquatorialFidelity out;
  out.fidelity = std::min(1.0, 0.5 + safe_sqrt(h_max + 2.0 * std::sqrt(k)));
  out.free_psi = xy_vanishes(p);
  out.psi_opt = out.free_psi ? 0.0 : wrap_angle(-0.5 * xy_phase(p));
  return out;
}

CandidateSolution x_candidate_discord(const XStateParams& p) {
  p.validate();
  CandidateBreakdown b;
  b.tau = (p.b + p.c) * (p.b + p.c) - 4.0 * std::norm(p.x);
  b.kappa = (p.a + p.d) * (p.a + p.d) - 4.0 * std::norm(p.y);
  b.k = p.determinant();
  b.h_max = 2.0 * std::abs(p.x * p.y) + p.a * p.c + p.b * p.d;
  b.f_axial = x_fidelity_z(p);
  const EquatorialFidelity eq = x_fidelity_equatorial(p);
  b.f_equatorial = eq.fidelity;
  b.chosen = b.f_equatorial > b.f_axial ? Candidate::Equatorial : Candidate::Axial;

  std::vector<MeasurementDirection> dirs;
  FreeFamily family = FreeFamily::None;
  const bool tie = std::abs(b.f_axial - b.f_equatorial) <= kBranchTol;
  if (b.chosen == Candidate::Axial || tie) dirs.push_back(pole());
  if (b.chosen == Candidate::Equatorial || tie) {
    dirs.push_back(equator(eq.psi_opt));
    if (eq.free_psi) family = FreeFamily::FreePsi;
  }
  return {make_result(std::max(b.f_axial, b.f_equatorial), std::move(dirs),
                      Method::XCandidates, family),
          b};
}

CharPolyCoeffs char_poly_coeffs(const XStateParams& p, double m, double psi) {
  p.validate();
  if (!(m >= -1.0 && m <= 1.0) || !std::isfinite(psi))
    throw Error(ErrorKind::InvalidParams, "m must lie in [-1, 1] and psi must be finite");
  const Complex n = std::polar(std::sqrt(1.0 - m * m), psi);
  const double x2 = std::norm(p.x);
  const double y2 = std::norm(p.y);
  CharPolyCoeffs t;
  t.t3 = m * (p.c + p.d - p.a - p.b);
  t.t2 = m * m * (p.a * p.b - p.b * p.c - p.a * p.d + p.c * p.d + x2 + y2) -
         (2.0 * (n * n * p.x * p.y).real() + p.a * p.c + p.b * p.d);
  t.t1 = m * ((p.a - p.d) * (p.b * p.c - x2) + (p.b - p.c) * (p.a * p.d - y2));
  t.t0 = p.determinant();
  t.g = profile_g(p);
  t.delta = profile_delta(p);
  return t;
}

double profile_g(const XStateParams& p) {
  const double squares = p.a * p.a + p.b * p.b + p.c * p.c + p.d * p.d;
  return 2.0 * squares - 1.0 -
         4.0 * (std::norm(p.x) + std::norm(p.y) - p.a * p.d - p.b * p.c) -
         8.0 * std::abs(p.x * p.y);
}

double profile_delta(const XStateParams& p) { return p.c + p.d - p.a - p.b; }

Lambda1Profile lambda1_profile(const XStateParams& p, double m) {
  p.validate();
  if (!(m >= -1.0 && m <= 1.0))
    throw Error(ErrorKind::InvalidParams, "m must lie in [-1, 1]");
  Lambda1Profile out;
  out.g = profile_g(p);
  out.delta = profile_delta(p);
  const double k = 8.0 * std::abs(p.x * p.y) + 4.0 * p.a * p.c + 4.0 * p.b * p.d;
  out.lambda1 = 0.5 * (safe_sqrt(m * m * out.g + k) - m * out.delta);
  return out;
}

TableOptimum table_m_opt(const XStateParams& p) {
  p.validate();
  const double g = profile_g(p);
  const double delta = profile_delta(p);
  TableOptimum t;
  if (g < 0.0 && delta < 0.0) {
    t.regime = ProfileRegime::Interior;
    const double h = 2.0 * std::abs(p.x * p.y) + p.a * p.c + p.b * p.d;
    const double m = -2.0 * std::sqrt(h) * delta / std::sqrt(g * g - delta * delta * g);
    t.m = {std::clamp(m, 0.0, 1.0)};
  } else if (delta < 0.0) {
    t.regime = ProfileRegime::EndpointOne;
    t.m = {1.0};
  } else if (g <= 0.0) {
    t.regime = ProfileRegime::EndpointZero;
    t.m = {0.0};
  } else {
    t.regime = ProfileRegime::BothEndpoints;
    t.m = {0.0, 1.0};
  }
  return t;
}

DegeneracyConditions degeneracy_conditions(const XStateParams& p) {
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  DegeneracyConditions c;
  c.both_blocks_singular = std::abs(p.a * p.d - ay * ay) <= kDegeneracyTol &&
                           std::abs(p.b * p.c - ax * ax) <= kDegeneracyTol;
  c.outer_block_flat = std::abs(p.a - p.d) <= kDegeneracyTol && std::abs(p.a - ay) <= kDegeneracyTol;
  c.inner_block_flat = std::abs(p.b - p.c) <= kDegeneracyTol && std::abs(p.b - ax) <= kDegeneracyTol;
  return c;
}

DegenerateSolution degenerate_fidelity(const XStateParams& p) {
  p.validate();
  DegenerateSolution out;
  out.conditions = degeneracy_conditions(p);
  if (!out.conditions.any())
    throw Error(ErrorKind::PreconditionNotMet,
                "rank-deficient formula needs ad = |y|^2 and bc = |x|^2 (fails), "
                "or a = d = |y| (fails), or b = c = |x| (fails)");
  out.table = table_m_opt(p);

  const double g = profile_g(p);
  const double delta = profile_delta(p);
  const double k = 8.0 * std::abs(p.x * p.y) + 4.0 * p.a * p.c + 4.0 * p.b * p.d;
  // With t0 = t1 = 0 the spectrum of Lambda is {0, 0, r+, r-}; the objective
  // is extremal only at m = 0 (equatorial, optimal psi) and m = 1.
  const double at_zero = safe_sqrt(k);
  const double at_one = std::max(safe_sqrt(g + k), std::abs(delta));
  const double best = std::max(at_zero, at_one);
  out.fidelity = std::min(1.0, 0.5 + 0.5 * best);
  if (at_zero >= best - kBranchTol) {
    out.m_opt.push_back(0.0);
    out.directions.push_back(equator(xy_vanishes(p) ? 0.0 : wrap_angle(-0.5 * xy_phase(p))));
  }
  if (at_one >= best - kBranchTol) {
    out.m_opt.push_back(1.0);
    out.directions.push_back(pole());
  }
  return out;
}

UpperBound discord_upper_bound(const XStateParams& p) {
  const CandidateSolution cand = x_candidate_discord(p);
  UpperBound out;
  out.f_best = cand.result.fidelity;
  out.witness = cand.result.optimal_directions.front();
  if (degeneracy_conditions(p).any()) {
    const DegenerateSolution deg = degenerate_fidelity(p);
    if (deg.fidelity > out.f_best) {
      out.f_best = deg.fidelity;
      out.witness = deg.directions.front();
    }
  }
  out.d_upper = 2.0 * (1.0 - std::sqrt(out.f_best));
  return out;
}

}  // namespace xqd
