#pragma once

// Independent oracles built on Eigen, plus small helpers shared by the suites.

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "xqd/linalg.hpp"
#include "xqd/states.hpp"

namespace xqd::test {

using EMat4 = Eigen::Matrix<std::complex<double>, 4, 4>;
using EMat2 = Eigen::Matrix<std::complex<double>, 2, 2>;

template <std::size_t N>
Eigen::Matrix<std::complex<double>, N, N> to_eigen(const SquareMatrix<N>& m) {
  Eigen::Matrix<std::complex<double>, N, N> e;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) e(i, j) = m(i, j);
  return e;
}

template <std::size_t N>
SquareMatrix<N> from_eigen(const Eigen::Matrix<std::complex<double>, N, N>& e) {
  SquareMatrix<N> m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = e(i, j);
  return m;
}

/// Eigenvalues, non-increasing.
template <std::size_t N>
std::vector<double> eigen_hermitian_values(const SquareMatrix<N>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, N, N>> es(to_eigen(m));
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + N);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

/// Eigenvalues of a general (non-Hermitian) matrix.
inline std::vector<std::complex<double>> eigen_general_values(const Matrix4& m) {
  Eigen::ComplexEigenSolver<EMat4> es(to_eigen(m));
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

/// Sort by real part then imaginary part.
inline void sort_complex(std::vector<std::complex<double>>& v) {
  std::sort(v.begin(), v.end(), [](auto l, auto r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
}

inline double eigen_trace_norm(const Matrix4& m) {
  double s = 0.0;
  for (double v : eigen_hermitian_values(m)) s += std::abs(v);
  return s;
}

/// Drops eigenvalues at round-off level relative to the largest one.
inline Eigen::Vector4d above_floor(const Eigen::Vector4d& v) {
  const double floor = 1e-14 * v.cwiseAbs().maxCoeff();
  return v.unaryExpr([floor](double x) { return x > floor ? x : 0.0; });
}

/// Fidelity via Eigen's eigensolver: sqrt(rho) from its spectral form, then
/// the spectrum of sqrt(rho) sigma sqrt(rho).
inline double eigen_fidelity(const Matrix4& rho, const Matrix4& sigma) {
  Eigen::SelfAdjointEigenSolver<EMat4> es(to_eigen(rho));
  Eigen::Vector4d root = above_floor(es.eigenvalues()).cwiseSqrt();
  const EMat4 s = es.eigenvectors() * root.cast<std::complex<double>>().asDiagonal() *
                  es.eigenvectors().adjoint();
  const EMat4 m = s * to_eigen(sigma) * s;
  Eigen::SelfAdjointEigenSolver<EMat4> inner(0.5 * (m + m.adjoint()));
  const double t = above_floor(inner.eigenvalues()).cwiseSqrt().sum();
  return t * t;
}

inline std::complex<double> eigen_determinant(const Matrix4& m) { return to_eigen(m).determinant(); }

template <std::size_t N>
double max_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return (a - b).max_abs();
}

inline XStateParams bell_params() {
  XStateParams p;
  p.a = p.d = 0.5;
  p.b = p.c = 0.0;
  p.y = 0.5;
  return p;
}

inline XStateParams make_x(double a, double b, double c, double d, Complex x, Complex y) {
  XStateParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.d = d;
  p.x = x;
  p.y = y;
  return p;
}

}  // namespace xqd::test
