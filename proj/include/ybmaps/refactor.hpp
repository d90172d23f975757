#pragma once

// Re-factorization (U - zA)(V - zB) = (Y - zB)(X - zA) with Casimir preservation:
// the closed-form 2x2 solution built from Pi^1, Pi^2 and the general n x n solution
// obtained from Cayley-Hamilton and the power recurrence M_i, N_i.

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ybmaps/matrix_core.hpp"

namespace ybmaps {

struct RefactorTolerances {
  double lax = 1e-9;      ///< relative to 1 + ||Y|| ||X||
  double casimir = 1e-9;  ///< relative per coefficient
};

struct RefactorResult {
  CMatrix U;
  CMatrix V;
  double lax_residual = 0.0;   ///< max over kSampleZetas of the inf-norm Lax defect
  double casimir_drift = 0.0;  ///< max relative change of f_i(U;A) vs f_i(X;A), f_i(V;B) vs f_i(Y;B)
  double denominator_condition = 0.0;  ///< inf-norm condition number of the inverted matrix
};

/// (Pi^1, Pi^2) = (f2 (YA + BX) - f1 AB, f2 YX - f0 AB) with f_i = f_i(X;A). 2x2 only.
std::pair<CMatrix, CMatrix> pi_matrices(const CMatrix& x, const CMatrix& y, const CMatrix& a,
                                        const CMatrix& b);

double lax_residual(const CMatrix& u, const CMatrix& v, const CMatrix& x, const CMatrix& y,
                    const CMatrix& a, const CMatrix& b);

double casimir_drift(const CMatrix& u, const CMatrix& v, const CMatrix& x, const CMatrix& y,
                     const CMatrix& a, const CMatrix& b);

/// Throws NonCommuting unless ||AB - BA||_inf is at roundoff level.
void require_commuting(const CMatrix& a, const CMatrix& b);

/// U = Pi^2 (Pi^1)^{-1} A, V = A^{-1}(YA + BX - UB).
/// Throws DegeneratePi, NonCommuting, or ToleranceExceeded when the computed
/// pair misses the Lax or Casimir tolerance.
RefactorResult refactor_2x2(const CMatrix& x, const CMatrix& y, const CMatrix& a,
                            const CMatrix& b, const RefactorTolerances& tol = {});

/// M_0..M_n and N_0..N_n of the power recurrence
///   M_1 = (Y Ka + Kb X) Kb^{-1} Ka^{-1},  N_1 = -Y X Kb^{-1} Ka^{-1},
///   M_i = M_1 M_{i-1} + N_{i-1},          N_i = N_1 M_{i-1}.
struct PowerRecurrence {
  std::vector<CMatrix> M;
  std::vector<CMatrix> N;
};

PowerRecurrence power_recurrence(const CMatrix& x, const CMatrix& y, const CMatrix& ka,
                                 const CMatrix& kb);

/// General n x n solution. Throws DegenerateDenominator, NonCommuting, ToleranceExceeded.
RefactorResult refactor_nxn(const CMatrix& x, const CMatrix& y, const CMatrix& ka,
                            const CMatrix& kb, const RefactorTolerances& tol = {});

/// ||sum_{i>=1} (-1)^i f_i(X;Ka) (U Ka^{-1})^i + f_0(X;Ka) I||_inf, divided by
/// 1 + sum_i |f_i| ||(U Ka^{-1})^i||_inf.
double cayley_hamilton_residual(const CMatrix& u, const CMatrix& x, const CMatrix& ka);

/// max_{k<=n} ||Ut^k - (Ut M_{k-1} + N_{k-1})||_inf / (1 + ||Ut^k||_inf), Ut = U Ka^{-1}.
double power_recurrence_residual(const CMatrix& u, const CMatrix& ka, const PowerRecurrence& rec);

struct SystemResidual {
  double product = 0.0;  ///< ||UV - YX||_inf
  double sum = 0.0;      ///< ||U Kb + Ka V - Y Ka - Kb X||_inf
};

SystemResidual system_residual(const CMatrix& u, const CMatrix& v, const CMatrix& x,
                               const CMatrix& y, const CMatrix& ka, const CMatrix& kb);

/// True iff U Ka^{-1} ~ Ka^{-1} X and Kb^{-1} V ~ Y Kb^{-1} in the sense of matching
/// characteristic polynomials. Throws DegenerateSimilarity when U Kb - Y Ka is singular.
bool similarity_check(const CMatrix& u, const CMatrix& v, const CMatrix& x, const CMatrix& y,
                      const CMatrix& ka, const CMatrix& kb, double tol = 1e-9);

/// Leaf chart: coordinates -> Lax pencil on a fixed Casimir level.
using LeafChart = std::function<BinomialPencil(const CVector&)>;

struct UniquenessReport {
  double initial_distance = 0.0;
  double final_distance = 0.0;
  double final_residual = 0.0;
  int iterations = 0;
};

/// Perturbs the three leaf points by `perturbation` (uniform complex entries), then
/// runs Gauss-Newton on L(x1')L(x2')L(x3') = L(x1)L(x2)L(x3), sampled at four
/// spectral values. The final distance to the original triple is reported.
UniquenessReport triple_uniqueness_probe(const std::array<LeafChart, 3>& charts,
                                         const std::array<CVector, 3>& coords,
                                         double perturbation, std::uint64_t seed,
                                         int max_iterations = 60);

}  // namespace ybmaps
