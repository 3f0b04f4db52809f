#include "xqd/linalg.hpp"

#include <numeric>
#include <string>

namespace xqd {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotSymmetricFamily: return "NotSymmetricFamily";
    case ErrorKind::PreconditionNotMet: return "PreconditionNotMet";
  }
  return "Unknown";
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

template <std::size_t N>
void require_hermitian(const SquareMatrix<N>& h) {
  if (!h.is_finite())
    throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const double defect = h.hermiticity_defect();
  if (defect > kHermitianTol)
    throw Error(ErrorKind::NotHermitian,
                "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
}

template <std::size_t N>
double off_diagonal_norm(const SquareMatrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

template <std::size_t N>
double frobenius_norm(const SquareMatrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Cyclic complex Jacobi. Each (p, q) step applies G = diag(1, e^{-i phi}) * R
// with R the real Jacobi rotation, so that (G^dagger A G)_pq = 0.
template <std::size_t N>
void jacobi_sweeps(SquareMatrix<N>& a, SquareMatrix<N>* v) {
  const double threshold = kOffDiagonalTol * std::max(1.0, frobenius_norm(a));
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) return;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase_conj = std::conj(apq) / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * phase_conj;
        const Complex gqq = c * phase_conj;

        for (std::size_t r = 0; r < N; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * gpp + arq * gqp;
          a(r, q) = arp * gpq + arq * gqq;
        }
        for (std::size_t r = 0; r < N; ++r) {
          const Complex apr = a(p, r);
          const Complex aqr = a(q, r);
          a(p, r) = std::conj(gpp) * apr + std::conj(gqp) * aqr;
          a(q, r) = std::conj(gpq) * apr + std::conj(gqq) * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (v != nullptr) {
          auto& vv = *v;
          for (std::size_t r = 0; r < N; ++r) {
            const Complex vrp = vv(r, p);
            const Complex vrq = vv(r, q);
            vv(r, p) = vrp * gpp + vrq * gqp;
            vv(r, q) = vrp * gpq + vrq * gqq;
          }
        }
      }
    }
  }
  if (off_diagonal_norm(a) >= threshold)
    throw Error(ErrorKind::NoConvergence, "Jacobi eigensolver did not converge");
}

template <std::size_t N>
std::array<std::size_t, N> descending_order(const SquareMatrix<N>& diag) {
  std::array<std::size_t, N> idx;
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) {
    return diag(l, l).real() > diag(r, r).real();
  });
  return idx;
}

}  // namespace

template <std::size_t N>
EigenDecomposition<N> herm_eig(const SquareMatrix<N>& h) {
  require_hermitian(h);
  SquareMatrix<N> a = h.hermitian_part();
  SquareMatrix<N> v = SquareMatrix<N>::identity();
  jacobi_sweeps(a, &v);

  const auto order = descending_order(a);
  EigenDecomposition<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template <std::size_t N>
std::array<double, N> herm_eigenvalues(const SquareMatrix<N>& h) {
  require_hermitian(h);
  SquareMatrix<N> a = h.hermitian_part();
  jacobi_sweeps<N>(a, nullptr);
  std::array<double, N> values;
  for (std::size_t k = 0; k < N; ++k) values[k] = a(k, k).real();
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

template <std::size_t N>
SquareMatrix<N> psd_sqrt(const SquareMatrix<N>& rho) {
  const auto eig = herm_eig(rho);
  if (eig.values[N - 1] < -kPsdClampTol)
    throw Error(ErrorKind::NotPSD, "matrix has eigenvalue " +
                                       std::to_string(eig.values[N - 1]) +
                                       " below -1e-10");
  const double floor = kRankFloor * std::max(std::abs(eig.values[0]), std::abs(eig.values[N - 1]));
  SquareMatrix<N> s;
  for (std::size_t k = 0; k < N; ++k) {
    if (eig.values[k] <= floor) continue;
    const double root = std::sqrt(eig.values[k]);
    const auto vk = eig.vector(k);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        s(i, j) += root * vk[i] * std::conj(vk[j]);
  }
  return s.hermitian_part();
}

double fidelity_with_sqrt(const Matrix4& sqrt_rho, const Matrix4& sigma) {
  require_hermitian(sigma);
  const Matrix4 m = (sqrt_rho * sigma * sqrt_rho).hermitian_part();
  const auto values = herm_eigenvalues(m);
  if (values[3] < -kPsdClampTol)
    throw Error(ErrorKind::NotPSD, "fidelity argument is not positive semidefinite");
  const double floor = kRankFloor * std::max(std::abs(values[0]), std::abs(values[3]));
  double root_sum = 0.0;
  for (double v : values)
    if (v > floor) root_sum += std::sqrt(v);
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double fidelity(const Matrix4& rho, const Matrix4& sigma) {
  // sigma's own PSD check: sqrt(rho) sigma sqrt(rho) can hide negative
  // directions of sigma in the kernel of rho.
  if (herm_eigenvalues(sigma)[3] < -kPsdClampTol)
    throw Error(ErrorKind::NotPSD, "second fidelity argument is not PSD");
  return fidelity_with_sqrt(psd_sqrt(rho), sigma);
}

double bures_distance_sq(const Matrix4& rho, const Matrix4& sigma) {
  const double f = fidelity(rho, sigma);
  return std::clamp(2.0 * (1.0 - std::sqrt(f)), 0.0, 2.0);
}

template <std::size_t N>
double trace_norm(const SquareMatrix<N>& m) {
  double s = 0.0;
  for (double v : herm_eigenvalues(m)) s += std::abs(v);
  return s;
}

Matrix2 partial_trace_b(const Matrix4& rho) {
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return out;
}

Matrix2 partial_trace_a(const Matrix4& rho) {
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out(i, j) = rho(i, j) + rho(2 + i, 2 + j);
  return out;
}

template <std::size_t N>
double von_neumann_entropy(const SquareMatrix<N>& rho) {
  const auto values = herm_eigenvalues(rho);
  if (values[N - 1] < -kPsdClampTol)
    throw Error(ErrorKind::NotPSD, "entropy argument is not positive semidefinite");
  double s = 0.0;
  for (double v : values)
    if (v > 0.0) s -= v * std::log2(v);
  return std::max(s, 0.0);
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

const Matrix2& pauli(int index) {
  static const std::array<Matrix2, 4> table = [] {
    std::array<Matrix2, 4> p;
    p[0] = Matrix2::identity();
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2](0, 1) = Complex(0.0, -1.0);
    p[2](1, 0) = Complex(0.0, 1.0);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return table.at(static_cast<std::size_t>(index));
}

Matrix2 pauli_dot(const Vec3& u) {
  Matrix2 m;
  m(0, 0) = u[2];
  m(1, 1) = -u[2];
  m(0, 1) = Complex(u[0], -u[1]);
  m(1, 0) = Complex(u[0], u[1]);
  return m;
}

template EigenDecomposition<2> herm_eig(const Matrix2&);
template EigenDecomposition<4> herm_eig(const Matrix4&);
template std::array<double, 2> herm_eigenvalues(const Matrix2&);
template std::array<double, 4> herm_eigenvalues(const Matrix4&);
template Matrix2 psd_sqrt(const Matrix2&);
template Matrix4 psd_sqrt(const Matrix4&);
template double trace_norm(const Matrix2&);
template double trace_norm(const Matrix4&);
template double von_neumann_entropy(const Matrix2&);
template double von_neumann_entropy(const Matrix4&);

}  // namespace xqd
