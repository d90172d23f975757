#pragma once

// Poisson structure matrices (Sklyanin, reduced, canonical), scalar observables,
// brackets, Casimir residuals and finite-difference Poisson-map checks.
//
// Coordinates of an n x n point matrix are ordered row-major: x_11, x_12, ..., x_nn.
// The linear Sklyanin bracket for X - zeta A reads
//     {x_ij, x_kl} = a_il x_kj - a_kj x_il.

#include <functional>
#include <optional>
#include <span>

#include "ybmaps/matrix_core.hpp"

namespace ybmaps {

/// Antisymmetric structure matrix as a function of the point.
class PoissonStructure {
 public:
  using Evaluator = std::function<CMatrix(const CVector&)>;

  PoissonStructure(Eigen::Index dim, Evaluator evaluator);

  Eigen::Index dim() const noexcept { return dim_; }
  CMatrix operator()(const CVector& p) const;

 private:
  Eigen::Index dim_;
  Evaluator eval_;
};

/// Scalar function on the phase space, with an optional exact gradient.
struct Observable {
  Eigen::Index dim = 0;
  std::function<Complex(const CVector&)> value;
  std::function<CVector(const CVector&)> gradient;  // may be empty

  /// Exact gradient when provided, central differences otherwise.
  CVector grad(const CVector& p) const;
};

/// Central differences with h = 1e-6 (1 + |p|).
CVector fd_gradient(const std::function<Complex(const CVector&)>& f, const CVector& p);

using VectorMap = std::function<CVector(const CVector&)>;

/// Jacobian by central differences on a circle of radius h (1 + |p_k|) in each complex
/// coordinate plane (eight nodes, error O(h^8)); f must be holomorphic near p.
CMatrix fd_jacobian(const VectorMap& f, const CVector& p, double h);

/// General n x n Sklyanin structure for leading matrix A.
PoissonStructure sklyanin_structure(const CMatrix& a);

/// 2x2 structure with the entries written out as closed forms in (x1..x4), (a1..a4).
PoissonStructure sklyanin_2x2(const CMatrix& a);

/// 3x3 structure for A = I over (x11, x12, x13, x21, ..., x33).
PoissonStructure sklyanin_3x3_identity();

/// The 9x9 display exactly as typeset in the source, which is not antisymmetric
/// (18 entries carry transposed indices). Used only to cross-check the displayed
/// sixth-order minors.
CMatrix sklyanin_3x3_printed(const CVector& x);

/// Block-diagonal extension to a product space: {x_i, y_j} = 0.
PoissonStructure product_structure(const PoissonStructure& first, const PoissonStructure& second);

/// Coordinates (q_1..q_k, p_1..p_k) with {q_i, p_j} = delta_ij.
PoissonStructure canonical_structure(Eigen::Index pairs);

/// Two-dimensional structure {x1, x2} = c(x).
PoissonStructure planar_structure(std::function<Complex(const CVector&)> c);

/// grad f^T J grad g at p.
Complex bracket(const PoissonStructure& j, const Observable& f, const Observable& g,
                const CVector& p);

/// Coordinate function x_k on a space of dimension dim.
Observable coordinate(Eigen::Index dim, Eigen::Index k);

/// max over points and coordinates x_k of |{f, x_k}|.
double casimir_check(const PoissonStructure& j, const Observable& f,
                     std::span<const CVector> points);

struct PoissonCheck {
  double residual = 0.0;       ///< at the accepted step
  double residual_half = 0.0;  ///< at half the accepted step
  double step = 0.0;
};

/// ||DF J_source DF^T - J_target(F(p))||_inf / (1 + ||J_target(F(p))||_inf), DF from
/// fd_jacobian. Starting at h, the step is divided by four until the residuals at step and
/// step/2 agree within a factor of ten (or both lie below 1e-7); StepTooLarge is thrown
/// after four attempts.
PoissonCheck poisson_map_check(const VectorMap& f, const PoissonStructure& source,
                               const PoissonStructure& target, const CVector& p,
                               double h = 1e-3);

/// max_{i,j,k} |sum_cyc sum_l J_il d_l J_jk| with d_l by central differences.
double jacobi_residual(const PoissonStructure& j, const CVector& p, double h = 1e-5);

/// Number of singular values above rel_threshold * sigma_max.
int numeric_rank(const CMatrix& m, double rel_threshold = 1e-8);

}  // namespace ybmaps
