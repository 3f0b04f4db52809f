#include "xqd/states.hpp"

#include <numbers>
#include <sstream>

namespace xqd {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double arg_or_zero(Complex z) { return z == Complex{} ? 0.0 : std::arg(z); }

// Unit eigenvector pair of a 2x2 Hermitian block given an unnormalised
// candidate for one of them; the partner is the orthogonal complement.
std::pair<CVector<2>, CVector<2>> complete_pair(CVector<2> v) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  v[0] /= n;
  v[1] /= n;
  return {v, CVector<2>{-std::conj(v[1]), std::conj(v[0])}};
}

CVector<4> embed(const CVector<2>& v, std::size_t i, std::size_t j) {
  CVector<4> out{};
  out[i] = v[0];
  out[j] = v[1];
  return out;
}

// Eigenpairs of [[p, z],[conj z, q]] from the unnormalised closed forms
// v_{-+} = (p - q -+ sqrt((p-q)^2 + 4|z|^2), 2 conj z). The larger of the two
// candidates is normalised; the other is its complement, which also covers the
// z = 0 cases where one unnormalised vector vanishes.
void block_spectrum(double p, double q, Complex z, double& low, double& high,
                    CVector<2>& v_low, CVector<2>& v_high) {
  const double root = std::sqrt((p - q) * (p - q) + 4.0 * std::norm(z));
  low = 0.5 * (p + q - root);
  high = 0.5 * (p + q + root);
  const CVector<2> cand_low{p - q - root, 2.0 * std::conj(z)};
  const CVector<2> cand_high{p - q + root, 2.0 * std::conj(z)};
  const double n_low = std::norm(cand_low[0]) + std::norm(cand_low[1]);
  const double n_high = std::norm(cand_high[0]) + std::norm(cand_high[1]);
  if (n_low == 0.0 && n_high == 0.0) {
    v_low = {1.0, 0.0};
    v_high = {0.0, 1.0};
    return;
  }
  if (n_high >= n_low) {
    auto [h, l] = complete_pair(cand_high);
    v_high = h;
    v_low = l;
  } else {
    auto [l, h] = complete_pair(cand_low);
    v_low = l;
    // complement of v_low with sign flipped so that v_high keeps the closed-form
    // orientation when both candidates are usable
    v_high = {-h[0], -h[1]};
  }
}

}  // namespace

double vec_norm(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

void validate_state(const Matrix4& rho) {
  if (!rho.is_finite())
    throw Error(ErrorKind::InvalidParams, "state has non-finite entries");
  if (rho.hermiticity_defect() > kHermitianTol)
    throw Error(ErrorKind::NotHermitian, "state is not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw Error(ErrorKind::InvalidParams, "state trace is " + fmt(tr) + ", expected 1");
  const auto values = herm_eigenvalues(rho);
  if (values[3] < -kPsdClampTol)
    throw Error(ErrorKind::NotPSD,
                "state has negative eigenvalue " + fmt(values[3]));
}

void XStateParams::validate() const {
  for (double v : {a, b, c, d, x.real(), x.imag(), y.real(), y.imag()})
    if (!std::isfinite(v))
      throw Error(ErrorKind::InvalidParams, "X-state parameters must be finite");
  if (a < 0.0 || b < 0.0 || c < 0.0 || d < 0.0)
    throw Error(ErrorKind::InvalidParams,
                "diagonal entries a, b, c, d must be non-negative");
  const double sum = a + b + c + d;
  if (std::abs(sum - 1.0) > kTraceTol)
    throw Error(ErrorKind::InvalidParams,
                "a + b + c + d = " + fmt(sum) + ", expected 1");
  if (std::norm(x) > b * c + kPositivitySlack)
    throw Error(ErrorKind::InvalidParams,
                "positivity violated: |x|^2 = " + fmt(std::norm(x)) +
                    " > b*c = " + fmt(b * c));
  if (std::norm(y) > a * d + kPositivitySlack)
    throw Error(ErrorKind::InvalidParams,
                "positivity violated: |y|^2 = " + fmt(std::norm(y)) +
                    " > a*d = " + fmt(a * d));
}

Matrix4 x_state(const XStateParams& p) {
  p.validate();
  Matrix4 m;
  m(0, 0) = p.a;
  m(1, 1) = p.b;
  m(2, 2) = p.c;
  m(3, 3) = p.d;
  m(0, 3) = p.y;
  m(3, 0) = std::conj(p.y);
  m(1, 2) = p.x;
  m(2, 1) = std::conj(p.x);
  return m;
}

std::optional<XStateParams> x_params_from_matrix(const Matrix4& rho, double tol) {
  static constexpr std::array<std::pair<int, int>, 8> kOffPattern{
      {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
  for (auto [i, j] : kOffPattern)
    if (std::abs(rho(i, j)) > tol) return std::nullopt;
  for (int i = 0; i < 4; ++i)
    if (std::abs(rho(i, i).imag()) > tol) return std::nullopt;
  if (std::abs(rho(0, 3) - std::conj(rho(3, 0))) > tol ||
      std::abs(rho(1, 2) - std::conj(rho(2, 1))) > tol)
    return std::nullopt;
  XStateParams p;
  p.a = rho(0, 0).real();
  p.b = rho(1, 1).real();
  p.c = rho(2, 2).real();
  p.d = rho(3, 3).real();
  p.x = rho(1, 2);
  p.y = rho(0, 3);
  return p;
}

XStateParams werner_params(double w) {
  if (!(w >= 0.0 && w <= 1.0))
    throw Error(ErrorKind::InvalidParams, "Werner weight must lie in [0, 1]");
  XStateParams p;
  p.a = p.d = 0.25 * (1.0 + w);
  p.b = p.c = 0.25 * (1.0 - w);
  p.x = 0.0;
  p.y = 0.5 * w;
  return p;
}

XSpectrum x_spectrum(const XStateParams& p) {
  p.validate();
  XSpectrum out;
  CVector<2> lo, hi;
  block_spectrum(p.b, p.c, p.x, out.values[0], out.values[1], lo, hi);
  out.vectors[0] = embed(lo, 1, 2);
  out.vectors[1] = embed(hi, 1, 2);
  block_spectrum(p.a, p.d, p.y, out.values[2], out.values[3], lo, hi);
  out.vectors[2] = embed(lo, 0, 3);
  out.vectors[3] = embed(hi, 0, 3);
  return out;
}

BlochForm bloch_form(const Matrix4& rho) {
  validate_state(rho);
  BlochForm f;
  const Matrix2& id = pauli(0);
  for (int i = 1; i <= 3; ++i) {
    f.c_a[i - 1] = (rho * kron(pauli(i), id)).trace().real();
    f.c_b[i - 1] = (rho * kron(id, pauli(i))).trace().real();
    for (int j = 1; j <= 3; ++j)
      f.t[i - 1][j - 1] = (rho * kron(pauli(i), pauli(j))).trace().real();
  }
  return f;
}

Matrix4 from_bloch(const BlochForm& f) {
  const Matrix2& id = pauli(0);
  Matrix4 m = Matrix4::identity();
  for (int i = 1; i <= 3; ++i) {
    m += f.c_a[i - 1] * kron(pauli(i), id);
    m += f.c_b[i - 1] * kron(id, pauli(i));
    for (int j = 1; j <= 3; ++j)
      m += f.t[i - 1][j - 1] * kron(pauli(i), pauli(j));
  }
  return 0.25 * m;
}

void ClassicalStateParams::validate() const {
  if (!(p >= 0.0 && p <= 0.5))
    throw Error(ErrorKind::InvalidParams, "classical weight p must lie in [0, 1/2]");
  if (std::abs(vec_norm(r) - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidParams, "measurement axis r must be a unit vector");
  if (vec_norm(s) > 1.0 + 1e-10 || vec_norm(t) > 1.0 + 1e-10)
    throw Error(ErrorKind::InvalidParams,
                "conditional Bloch vectors s, t must have norm <= 1");
}

Matrix4 classical_state(const ClassicalStateParams& cp) {
  cp.validate();
  const Matrix2 id = Matrix2::identity();
  const Matrix2 r_sigma = pauli_dot(cp.r);
  const Matrix2 alpha0 = 0.5 * (id + r_sigma);
  const Matrix2 alpha1 = 0.5 * (id - r_sigma);
  const Matrix2 rho0 = 0.5 * (id + pauli_dot(cp.s));
  const Matrix2 rho1 = 0.5 * (id + pauli_dot(cp.t));
  return cp.p * kron(alpha0, rho0) + (1.0 - cp.p) * kron(alpha1, rho1);
}

Matrix4 local_unitary(const Matrix4& rho, const Matrix2& u_a, const Matrix2& u_b) {
  for (const Matrix2* u : {&u_a, &u_b})
    if ((u->adjoint() * (*u) - Matrix2::identity()).max_abs() > 1e-10)
      throw Error(ErrorKind::NotUnitary, "local operator is not unitary");
  const Matrix4 u = kron(u_a, u_b);
  return u * rho * u.adjoint();
}

std::array<double, 4> BellDiagonalTriple::weights() const {
  const double sum = c[0] + c[1] + c[2];
  return {0.25 * (1.0 - sum), 0.25 * (1.0 + sum - 2.0 * c[0]),
          0.25 * (1.0 + sum - 2.0 * c[1]), 0.25 * (1.0 + sum - 2.0 * c[2])};
}

BellDiagonalTriple symmetric_to_bd(const XStateParams& p) {
  if (!p.is_symmetric_family())
    throw Error(ErrorKind::NotSymmetricFamily,
                "state is not in the a = d, b = c family");
  p.validate();
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  return BellDiagonalTriple{{2.0 * (ax - ay), 2.0 * (ax + ay), 2.0 * (p.a - p.b)}};
}

Matrix4 bell_diagonal_state(const Vec3& c) {
  Matrix4 m = Matrix4::identity();
  for (int i = 1; i <= 3; ++i) m += c[i - 1] * kron(pauli(i), pauli(i));
  return 0.25 * m;
}

LocalFrame symmetric_bd_frame(const XStateParams& p) {
  if (!p.is_symmetric_family())
    throw Error(ErrorKind::NotSymmetricFamily,
                "state is not in the a = d, b = c family");
  // x -> x e^{i(beta - alpha)} = |x|,  y -> y e^{-i(alpha + beta)} = -|y|
  const double eta = arg_or_zero(p.x);
  const double xi = arg_or_zero(p.y);
  const double alpha = 0.5 * (xi - std::numbers::pi + eta);
  const double beta = 0.5 * (xi - std::numbers::pi - eta);
  LocalFrame f;
  f.u_a = Matrix2::identity();
  f.u_a(1, 1) = std::polar(1.0, alpha);
  f.u_b = Matrix2::identity();
  f.u_b(1, 1) = std::polar(1.0, beta);
  return f;
}

}  // namespace xqd
