#pragma once

// Small dense complex matrices, binomial pencils X - zeta*A, their
// characteristic-polynomial coefficients and the commuting parameter families.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ybmaps {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Spectral parameters at which every Lax identity is sampled: {0, 1, -1, i, -i, 2}.
inline constexpr std::array<Complex, 6> kSampleZetas{
    Complex{0.0, 0.0}, Complex{1.0, 0.0},  Complex{-1.0, 0.0},
    Complex{0.0, 1.0}, Complex{0.0, -1.0}, Complex{2.0, 0.0}};

/// Default relative singularity threshold: |det M| < 1e-12 * ||M||^n is singular.
inline constexpr double kSingularThreshold = 1e-12;

/// First-degree matrix polynomial point - zeta * leading.
class BinomialPencil {
 public:
  BinomialPencil(CMatrix point, CMatrix leading);

  const CMatrix& point() const noexcept { return point_; }
  const CMatrix& leading() const noexcept { return leading_; }
  Eigen::Index size() const noexcept { return point_.rows(); }

  CMatrix operator()(Complex zeta) const { return point_ - zeta * leading_; }

 private:
  CMatrix point_;
  CMatrix leading_;
};

CMatrix pencil_eval(const BinomialPencil& pencil, Complex zeta);

/// Casimir vector (f_0, ..., f_n) of det(X - zeta A) = sum_i (-1)^i f_i zeta^i.
/// f_0 = det X and f_n = det A.
struct CharPolyCoeffs {
  std::vector<Complex> coeffs;

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Complex operator[](std::size_t i) const { return coeffs.at(i); }
  /// Evaluates sum_i (-1)^i f_i zeta^i.
  Complex evaluate(Complex zeta) const;
};

CharPolyCoeffs char_poly_coeffs(const BinomialPencil& pencil);
CharPolyCoeffs char_poly_coeffs(const CMatrix& point, const CMatrix& leading);

/// Coefficients of det(M - zeta I), i.e. the spectral invariants of M.
CharPolyCoeffs matrix_char_poly(const CMatrix& m);

/// Expansion det(X - zeta A) = sum over column subsets S of (-zeta)^|S| det(X with
/// columns S taken from A). Exact for any leading matrix; 2^n determinants.
CharPolyCoeffs char_poly_by_column_subsets(const CMatrix& point, const CMatrix& leading);

/// Leverrier-Faddeev on A^{-1} X, scaled by det A. Requires invertible leading.
CharPolyCoeffs char_poly_leverrier(const CMatrix& point, const CMatrix& leading);

enum class FamilyKind { DiagonalI, JordanII, RotationIII };

/// alpha -> K(alpha) with pairwise commuting values.
///   DiagonalI:   diag(alpha_1, ..., alpha_n)
///   JordanII:    alpha_1 I + alpha_2 N + ... + alpha_n N^{n-1}, N the upper shift
///   RotationIII: [[alpha_1, -alpha_2], [alpha_2, alpha_1]] (n = 2 only)
class CommutingFamily {
 public:
  explicit CommutingFamily(FamilyKind kind, Eigen::Index dimension = 2);

  FamilyKind kind() const noexcept { return kind_; }
  Eigen::Index dimension() const noexcept { return dim_; }
  /// Number of parameters consumed by `operator()`.
  Eigen::Index parameter_count() const noexcept;

  /// Throws SingularParameter outside the invertibility domain.
  CMatrix operator()(std::span<const Complex> alpha) const;

 private:
  FamilyKind kind_;
  Eigen::Index dim_;
};

CMatrix family_eval(const CommutingFamily& family, std::span<const Complex> alpha);

/// Closed-form cofactor expansion for n <= 3, LU otherwise.
Complex det(const CMatrix& m);

/// Throws SingularMatrix when |det m| < threshold * ||m||_inf^n.
CMatrix inverse(const CMatrix& m, double threshold = kSingularThreshold);

/// Induced infinity norm (max absolute row sum).
double norm_inf(const CMatrix& m);
double max_abs(const CMatrix& m);
double max_abs(const CVector& v);
bool all_finite(const CMatrix& m);

/// Row-major flattening, matching the coordinate order x_11, x_12, ..., x_nn.
CVector flatten(const CMatrix& m);
CMatrix unflatten(const CVector& v, Eigen::Index n);

}  // namespace ybmaps
