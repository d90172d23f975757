#pragma once

// 3x3 leaf reduction of L^3_I and the Yang-Baxter maps on it.
//
// Leaf coordinates are (x1, x2, X1, X2), leaf parameters (c1, c2). The leaf matrix is
//   [ c1+c2-x1 X1      -X1 x2          X1         ]
//   [ -x1 X2           c1+c2-x2 X2     X2         ]
//   [ -x1 (s - 3c2)    -x2 (s - 3c2)   c1-2c2+s   ],   s = x1 X1 + x2 X2,
// with Casimirs f2 = 3 c1, f1 = 3 (c1^2 - c2^2), f0 = (c1 - 2 c2)(c1 + c2)^2.

#include <array>
#include <utility>

#include "ybmaps/matrix_core.hpp"
#include "ybmaps/sklyanin.hpp"

namespace ybmaps {

struct MinorsCompletion {
  Complex x11;
  Complex x31;
  Complex x32;
};

/// Unique solution of m1 = m2 = m3 = 0 for (x11, x31, x32). DomainError if x13 or x23 is 0.
MinorsCompletion minors_solution(Complex x12, Complex x13, Complex x21, Complex x22, Complex x23,
                                 Complex x33);

/// Full matrix from the six free entries and the minors solution.
CMatrix complete_minors(Complex x12, Complex x13, Complex x21, Complex x22, Complex x23,
                        Complex x33);

/// m1, m2, m3 as closed-form squares in the entries of x.
std::array<Complex, 3> displayed_minors(const CMatrix& x);

/// Determinant of the 6x6 submatrix with the given 1-based rows and columns.
Complex structure_minor(const CMatrix& j, const std::array<int, 6>& rows,
                        const std::array<int, 6>& cols);

/// The (rows, cols) index sets defining m1, m2, m3.
const std::array<std::pair<std::array<int, 6>, std::array<int, 6>>, 3>& minor_index_sets();

/// Casimirs (f0, f1, f2) of a minors-constrained matrix, as rational functions of the
/// free entries.
std::array<Complex, 3> constrained_casimirs(Complex x12, Complex x13, Complex x21, Complex x22,
                                            Complex x23, Complex x33);

/// 4 a0 a2^3 - a1^2 a2^2 + 4 a1^3 - 18 a0 a1 a2 + 27 a0^2.
Complex discriminant_surface(Complex f0, Complex f1, Complex f2);

/// |surface| / s^6 with s = max(|f0|^(1/3), |f1|^(1/2), |f2|); 0 at the origin.
double discriminant_relative(Complex f0, Complex f1, Complex f2);

CMatrix leaf_embed_3x3(const CVector& x, const CVector& c);
BinomialPencil leaf_lax_3x3(const CVector& x, const CVector& c);

/// (f0, f1, f2) of the leaf with parameters (c1, c2).
std::array<Complex, 3> leaf_casimirs(Complex c1, Complex c2);

/// c1 = f2 / 3, c2 = branch * sqrt(f2^2 - 3 f1) / 3 with branch = +1 or -1.
CVector leaf_params_from_casimirs(Complex f1, Complex f2, int branch = 1);

/// (x1, x2, X1, X2) from a leaf matrix: X1 = U13, X2 = U23, x1 = -U21/U23, x2 = -U12/U13.
CVector extract_leaf_coords(const CMatrix& u);

/// Closed-form map. Denominators
///   D_v = 2c2 - c1 + d1 + d2 + y.X - x.X,   D_u = 2c2 - c1 + d1 + d2 + x.Y - y.Y,
/// u = y - (c1 - d1 - 2(c2 - d2))/D_u (x - y), v = x + (c1 - d1 + c2 - d2)/D_v (x - y),
/// followed by the U_i, V_i quotients. Throws PoleError.
std::pair<CVector, CVector> map_3x3(const CVector& x, const CVector& c, const CVector& y,
                                    const CVector& d);

/// Same map through refactor_nxn with K = I and coordinate extraction.
std::pair<CVector, CVector> map_3x3_oracle(const CVector& x, const CVector& c, const CVector& y,
                                           const CVector& d);

double map_3x3_pole_distance(const CVector& x, const CVector& c, const CVector& y,
                             const CVector& d);

/// (c1, c2) = (a, 0).
CVector boussinesq_params(Complex a);
/// (c1, c2) = (a/3, 2a/3).
CVector gv_params(Complex a);

BinomialPencil boussinesq_lax(const CVector& x, Complex a);
BinomialPencil gv_lax(const CVector& x, Complex a);

/// (eta1, eta2, xi1, xi2) -> (x1, x2, X1, X2): x = -eta, X_i = 2 l xi_i / (xi1 eta1 + xi2 eta2 + 1).
CVector gv_transform(const CVector& vec, Complex lambda);
/// Inverse: eta = -x, xi_i = X_i / (2 l + x1 X1 + x2 X2).
CVector gv_inverse_transform(const CVector& x, Complex lambda);
/// Jacobian of gv_inverse_transform at x.
CMatrix gv_inverse_jacobian(const CVector& x, Complex lambda);

/// B(xi, eta; l) = l (2 xi eta^T / (xi, eta) - I) - z I for 3-vectors.
BinomialPencil gv_b_lax(const CVector& xi, const CVector& eta, Complex lambda);
/// A(xi, eta; l) = I + 2 l / (z - l) xi eta^T / (xi, eta).
CMatrix gv_a_matrix(const CVector& xi, const CVector& eta, Complex lambda, Complex zeta);

/// Affine 3-vectors (v1, v2, 1).
CVector affine3(Complex v1, Complex v2);

/// Map on (eta1, eta2, xi1, xi2) with parameter l: conjugate of the GV map with parameter -l.
std::pair<CVector, CVector> gv_vector_map(const CVector& p, Complex lambda, const CVector& q,
                                          Complex mu);

/// Reduced bracket on q = (x12, x13, x21, x23).
PoissonStructure reduced_bracket_q();
/// Coefficient matrix of omega in q: omega = sum_{i<j} W_ij dq_i ^ dq_j.
CMatrix omega_matrix(const CVector& q);
/// (x1, x2, X1, X2) -> (x12, x13, x21, x23) = (-x2 X1, X1, -x1 X2, X2).
CVector canonical_to_q(const CVector& x);

}  // namespace ybmaps
