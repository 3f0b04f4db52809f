#pragma once

// Dense complex linear algebra for the fixed sizes that occur in two-qubit
// problems (2x2 and 4x4). Everything here is a pure function of its inputs.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "xqd/error.hpp"

namespace xqd {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

template <std::size_t N>
using CVector = std::array<Complex, N>;

template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr SquareMatrix() = default;

  static SquareMatrix zero() { return SquareMatrix{}; }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(const std::array<double, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// |v><v|
  static SquareMatrix outer(const CVector<N>& v) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * N + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return a_[i * N + j];
  }

  SquareMatrix adjoint() const {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry modulus; the norm used for every tolerance in the library.
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

  /// max_ij |A_ij - conj(A_ji)|
  double hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  /// (A + A^dagger) / 2
  SquareMatrix hermitian_part() const {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
  }

  bool is_finite() const {
    for (const auto& z : a_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] += o.a_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix l, const SquareMatrix& r) {
    return l += r;
  }
  friend SquareMatrix operator-(SquareMatrix l, const SquareMatrix& r) {
    return l -= r;
  }
  friend SquareMatrix operator*(SquareMatrix m, Complex s) { return m *= s; }
  friend SquareMatrix operator*(Complex s, SquareMatrix m) { return m *= s; }
  friend SquareMatrix operator*(SquareMatrix m, double s) { return m *= s; }
  friend SquareMatrix operator*(double s, SquareMatrix m) { return m *= s; }

  friend SquareMatrix operator*(const SquareMatrix& l, const SquareMatrix& r) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex lik = l(i, k);
        if (lik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += lik * r(k, j);
      }
    return m;
  }

  friend CVector<N> operator*(const SquareMatrix& l, const CVector<N>& v) {
    CVector<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out[i] += l(i, j) * v[j];
    return out;
  }

 private:
  std::array<Complex, N * N> a_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

/// Eigenpairs of a Hermitian matrix. Eigenvalues are sorted non-increasing and
/// column k of `vectors` belongs to `values[k]`.
template <std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values{};
  SquareMatrix<N> vectors;

  CVector<N> vector(std::size_t k) const {
    CVector<N> v;
    for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
    return v;
  }
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClampTol = 1e-10;
/// Eigenvalues up to this fraction of the largest magnitude are round-off and
/// count as zero before a square root is taken.
inline constexpr double kRankFloor = 1e-14;

/// Cyclic Jacobi. Throws NotHermitian / NoConvergence.
template <std::size_t N>
EigenDecomposition<N> herm_eig(const SquareMatrix<N>& h);

/// Same sweeps without accumulating eigenvectors; used on hot paths.
template <std::size_t N>
std::array<double, N> herm_eigenvalues(const SquareMatrix<N>& h);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) and those below the
/// rank floor are clamped to zero, anything more negative throws NotPSD.
template <std::size_t N>
SquareMatrix<N> psd_sqrt(const SquareMatrix<N>& rho);

/// Uhlmann fidelity [tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
double fidelity(const Matrix4& rho, const Matrix4& sigma);

/// Fidelity when sqrt(rho) is already known.
double fidelity_with_sqrt(const Matrix4& sqrt_rho, const Matrix4& sigma);

/// d_B^2 = 2 (1 - sqrt(F)).
double bures_distance_sq(const Matrix4& rho, const Matrix4& sigma);

template <std::size_t N>
double trace_norm(const SquareMatrix<N>& m);

Matrix2 partial_trace_a(const Matrix4& rho);
Matrix2 partial_trace_b(const Matrix4& rho);

/// Base-2 entropy with 0 log 0 = 0.
template <std::size_t N>
double von_neumann_entropy(const SquareMatrix<N>& rho);

Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// sigma_0 = I, sigma_1..3 = Pauli X, Y, Z.
const Matrix2& pauli(int index);

/// u . sigma
Matrix2 pauli_dot(const Vec3& u);

}  // namespace xqd
