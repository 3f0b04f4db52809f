#pragma once

// Two-qubit states: X-states, the a=d, b=c family, A-classical states,
// Bloch/correlation-tensor form and local unitaries. Basis order is
// |00>, |01>, |10>, |11> with subsystem A the left factor.

#include <array>
#include <optional>
#include <string>

#include "xqd/linalg.hpp"

namespace xqd {

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPositivitySlack = 1e-12;
inline constexpr double kSymmetricFamilyTol = 1e-12;

/// Validates a density matrix: finite, Hermitian, PSD (clamp window 1e-10),
/// unit trace within 1e-9. Throws InvalidParams / NotHermitian / NotPSD.
void validate_state(const Matrix4& rho);

/// rho = [[a,0,0,y],[0,b,x,0],[0,conj x,c,0],[conj y,0,0,d]]
struct XStateParams {
  double a = 0.25;
  double b = 0.25;
  double c = 0.25;
  double d = 0.25;
  Complex x{};
  Complex y{};

  /// Throws InvalidParams naming the violated constraint.
  void validate() const;

  bool is_symmetric_family(double tol = kSymmetricFamilyTol) const {
    return std::abs(a - d) <= tol && std::abs(b - c) <= tol;
  }

  /// (ad - |y|^2)(bc - |x|^2)
  double determinant() const {
    return (a * d - std::norm(y)) * (b * c - std::norm(x));
  }
};

Matrix4 x_state(const XStateParams& params);

/// Reads X-state parameters back from a matrix. Returns nullopt when any entry
/// outside the X pattern exceeds `tol` in modulus.
std::optional<XStateParams> x_params_from_matrix(const Matrix4& rho,
                                                 double tol = 1e-12);

/// w |Phi+><Phi+| + (1 - w) I/4
XStateParams werner_params(double w);

/// Closed-form spectrum. values = (p1, p2, p3, p4) with p1 <= p2 from the
/// {|01>,|10>} block and p3 <= p4 from the {|00>,|11>} block.
struct XSpectrum {
  std::array<double, 4> values{};
  std::array<CVector<4>, 4> vectors{};
};

XSpectrum x_spectrum(const XStateParams& params);

/// rho = 1/4 (I + c_A.sigma x I + I x c_B.sigma + sum T_mn sigma_m x sigma_n)
struct BlochForm {
  Vec3 c_a{};
  Vec3 c_b{};
  std::array<Vec3, 3> t{};  // t[m][n] = c_{m+1, n+1}
};

BlochForm bloch_form(const Matrix4& rho);
Matrix4 from_bloch(const BlochForm& form);

/// p |a0><a0| x rho0 + (1-p) |a1><a1| x rho1 with |a_{0,1}><a_{0,1}| =
/// (I +- r.sigma)/2, rho0 = (I + s.sigma)/2, rho1 = (I + t.sigma)/2.
struct ClassicalStateParams {
  double p = 0.5;
  Vec3 r{0.0, 0.0, 1.0};
  Vec3 s{};
  Vec3 t{};

  void validate() const;
};

Matrix4 classical_state(const ClassicalStateParams& params);

/// (U_A x U_B) rho (U_A x U_B)^dagger. Throws NotUnitary.
Matrix4 local_unitary(const Matrix4& rho, const Matrix2& u_a, const Matrix2& u_b);

/// Correlation triple of the Bell-diagonal state locally equivalent to an
/// a=d, b=c X-state: (2(|x|-|y|), 2(|x|+|y|), 2(a-b)).
struct BellDiagonalTriple {
  Vec3 c{};
  /// Bell-basis weights p0 = (1 - c1 - c2 - c3)/4, p_i = (1 + sum c - 2 c_i)/4.
  std::array<double, 4> weights() const;
};

/// Throws NotSymmetricFamily.
BellDiagonalTriple symmetric_to_bd(const XStateParams& params);

/// 1/4 (I + sum_i c_i sigma_i x sigma_i)
Matrix4 bell_diagonal_state(const Vec3& c);

/// Diagonal local unitaries with (U_A x U_B) rho (U_A x U_B)^dagger equal to
/// bell_diagonal_state(symmetric_to_bd(params).c).
struct LocalFrame {
  Matrix2 u_a;
  Matrix2 u_b;
};

LocalFrame symmetric_bd_frame(const XStateParams& params);

double vec_norm(const Vec3& v);

}  // namespace xqd
