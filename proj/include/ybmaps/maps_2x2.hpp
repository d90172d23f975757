#pragma once

// Yang-Baxter maps with 2x2 binomial Lax matrices.
//
// Case I and Case II: parameters (a1, a2, a3, a4), where (a1, a2) select the commuting
// family matrix K and (a3, a4) fix the Casimir levels f0 = a3, f1 = a4. Coordinates are
// the first row (x1, x2) of the point matrix.
//
// Generalized Adler-Yamilov map: parameters (a1, a2, a3), Lax matrix
//   M(x; a) = [[a1/a3 (a2 + x1 x2) - a1 z, x1], [x2, a3/a1]].

#include <utility>
#include <vector>

#include "ybmaps/matrix_core.hpp"

namespace ybmaps {

enum class CaseKind { I, II };

/// Relative size below which a denominator counts as vanishing.
inline constexpr double kPoleThreshold = 1e-12;

/// Throws PoleError when |den| <= kPoleThreshold * scale.
void require_nonzero(Complex den, double scale, const char* what);

CMatrix case1_embed(Complex x1, Complex x2, const CVector& a);
CMatrix case2_embed(Complex x1, Complex x2, const CVector& a);
CMatrix case_embed(CaseKind kind, const CVector& x, const CVector& a);

/// K_1(a1, a2) = diag(a1, a2) or K_2(a1, a2) = [[a1, a2], [0, a1]].
CMatrix case_family(CaseKind kind, const CVector& a);

/// Strong Lax matrix L'(x; a) - z K(a).
BinomialPencil case_lax(CaseKind kind, const CVector& x, const CVector& a);

/// Embed, re-factorize with refactor_2x2, read off the first rows. The projected
/// coordinates are re-embedded and compared with U, V (ToleranceExceeded on mismatch).
std::pair<CVector, CVector> case_map(CaseKind kind, const CVector& x, const CVector& a,
                                     const CVector& y, const CVector& b);

/// Solves the strong Lax equation for (x, v) given (u, y):
///   K_b^{-1} V = S^{-1} Y K_b^{-1} S,  K_a^{-1} X = S^{-1} U K_a^{-1} S,  S = U K_b - Y K_a.
std::pair<CVector, CVector> case_map_recover(CaseKind kind, const CVector& u, const CVector& a,
                                             const CVector& y, const CVector& b);

/// Smallest relative denominator met by case_map at this input (embedding and det Pi^1).
double case_pole_distance(CaseKind kind, const CVector& x, const CVector& a, const CVector& y,
                          const CVector& b);

/// Q = a1 b1 (a2 b3 - a3 b2) / (a3 b3 + a1 b1 x1 y2).
Complex ay_q(const CVector& x, const CVector& a, const CVector& y, const CVector& b);

/// Degenerate-limit map. The second component of v uses +Q y2, the sign for which the
/// strong Lax equation M(u;a) M(v;b) = M(y;b) M(x;a) holds.
std::pair<CVector, CVector> adler_yamilov_general(const CVector& x, const CVector& a,
                                                  const CVector& y, const CVector& b);

double ay_pole_distance(const CVector& x, const CVector& a, const CVector& y, const CVector& b);

CMatrix ay_point(const CVector& x, const CVector& a);
BinomialPencil ay_lax(const CVector& x, const CVector& a);

/// Finite-epsilon Lax matrix on the leaf f0 = a2, f1 = a3 of L^2_{diag(a1, eps)}, principal
/// square root. Throws BranchCut when a3^2 - 4 a1 eps (a2 + x1 x2) is a nonpositive real.
/// The principal root tends to a3 as eps -> 0 only when Re a3 > 0; otherwise L_eps follows
/// the other branch and does not approach M.
BinomialPencil ay_epsilon_lax(const CVector& x, const CVector& a, double eps);

/// ||L_eps(0) - M(0)||_inf.
double ay_limit_distance(const CVector& x, const CVector& a, double eps);

struct LimitProbe {
  std::vector<double> eps;
  std::vector<double> distance;
  std::vector<double> order;  ///< log(d_i / d_{i+1}) / log(eps_i / eps_{i+1})
  double min_order = 0.0;
  bool monotone = true;
};

/// Distances along the given (decreasing) epsilon sequence and observed orders.
LimitProbe ay_limit_probe(const CVector& x, const CVector& a, const std::vector<double>& eps);

/// eps_0, eps_0 / 2, eps_0 / 4, ... down to eps_min.
std::vector<double> halving_sequence(double eps0, double eps_min);

}  // namespace ybmaps
