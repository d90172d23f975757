#include "ybmaps/maps_3x3.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ybmaps/errors.hpp"
#include "ybmaps/maps_2x2.hpp"
#include "ybmaps/refactor.hpp"

namespace ybmaps {

namespace {

void require_size(const CVector& v, Eigen::Index n, const char* what) {
  if (v.size() < n) {
    std::ostringstream msg;
    msg << what << " needs " << n << " entries, got " << v.size();
    throw Error(ErrorKind::DomainError, msg.str());
  }
}

void require_offdiag(Complex x13, Complex x23) {
  if (x13 == Complex{0.0, 0.0} || x23 == Complex{0.0, 0.0}) {
    throw Error(ErrorKind::DomainError, "x13 and x23 must be nonzero");
  }
}

double rel(Complex v, double scale) { return scale == 0.0 ? 0.0 : std::abs(v) / scale; }

struct Map3Parts {
  Complex du, dv;
  double du_scale = 0.0, dv_scale = 0.0;
  CVector u, v;
};

// Everything up to the coordinate updates; the U_i, V_i quotients need u != v.
Map3Parts map_3x3_parts(const CVector& x, const CVector& c, const CVector& y, const CVector& d) {
  require_size(x, 4, "leaf coordinates");
  require_size(y, 4, "leaf coordinates");
  require_size(c, 2, "leaf parameters");
  require_size(d, 2, "leaf parameters");
  const Complex base = 2.0 * c(1) - c(0) + d(0) + d(1);
  const Complex yx = y(0) * x(2) + y(1) * x(3);
  const Complex xx = x(0) * x(2) + x(1) * x(3);
  const Complex xy = x(0) * y(2) + x(1) * y(3);
  const Complex yy = y(0) * y(2) + y(1) * y(3);
  Map3Parts p;
  p.dv = base + yx - xx;
  p.du = base + xy - yy;
  p.dv_scale = std::abs(c(1)) * 2.0 + std::abs(c(0)) + std::abs(d(0)) + std::abs(d(1)) +
               std::abs(yx) + std::abs(xx);
  p.du_scale = std::abs(c(1)) * 2.0 + std::abs(c(0)) + std::abs(d(0)) + std::abs(d(1)) +
               std::abs(xy) + std::abs(yy);
  require_nonzero(p.du, p.du_scale, "D_u");
  require_nonzero(p.dv, p.dv_scale, "D_v");
  const Complex ku = (c(0) - d(0) - 2.0 * (c(1) - d(1))) / p.du;
  const Complex kv = (c(0) - d(0) + c(1) - d(1)) / p.dv;
  p.u = CVector(4);
  p.v = CVector(4);
  for (int i = 0; i < 2; ++i) {
    p.u(i) = y(i) - ku * (x(i) - y(i));
    p.v(i) = x(i) + kv * (x(i) - y(i));
  }
  return p;
}

}  // namespace

MinorsCompletion minors_solution(Complex x12, Complex x13, Complex x21, Complex x22, Complex x23,
                                 Complex x33) {
  require_offdiag(x13, x23);
  const Complex w = x12 * x23 + x13 * (x33 - x22);
  return {x13 * x21 / x23 + x22 - x12 * x23 / x13, x21 * w / (x13 * x23), x12 * w / (x13 * x13)};
}

CMatrix complete_minors(Complex x12, Complex x13, Complex x21, Complex x22, Complex x23,
                        Complex x33) {
  const MinorsCompletion s = minors_solution(x12, x13, x21, x22, x23, x33);
  CMatrix m(3, 3);
  m << s.x11, x12, x13, x21, x22, x23, s.x31, s.x32, x33;
  return m;
}

std::array<Complex, 3> displayed_minors(const CMatrix& x) {
  const Complex x11 = x(0, 0), x12 = x(0, 1), x13 = x(0, 2);
  const Complex x21 = x(1, 0), x22 = x(1, 1), x23 = x(1, 2);
  const Complex x31 = x(2, 0), x32 = x(2, 1), x33 = x(2, 2);
  const Complex s1 = x21 * x13 * x13 - x11 * x23 * x13 + x22 * x23 * x13 - x12 * x23 * x23;
  const Complex s2 = x23 * x12 * x12 - x13 * x22 * x12 + x13 * x33 * x12 - x13 * x13 * x32;
  const Complex s3 = x12 * x23 * x31 - x13 * x21 * x32;
  return {-s1 * s1, -s2 * s2, -s3 * s3};
}

Complex structure_minor(const CMatrix& j, const std::array<int, 6>& rows,
                        const std::array<int, 6>& cols) {
  CMatrix sub(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) sub(r, c) = j(rows[r] - 1, cols[c] - 1);
  return det(sub);
}

const std::array<std::pair<std::array<int, 6>, std::array<int, 6>>, 3>& minor_index_sets() {
  static const std::array<std::pair<std::array<int, 6>, std::array<int, 6>>, 3> sets{{
      {{1, 2, 3, 4, 5, 6}, {3, 4, 6, 7, 8, 9}},
      {{1, 2, 3, 4, 6, 7}, {3, 4, 5, 6, 8, 9}},
      {{1, 2, 3, 5, 6, 9}, {1, 2, 3, 5, 6, 9}},
  }};
  return sets;
}

std::array<Complex, 3> constrained_casimirs(Complex x12, Complex x13, Complex x21, Complex x22,
                                            Complex x23, Complex x33) {
  require_offdiag(x13, x23);
  const Complex g = x13 * x22 - x12 * x23;
  const Complex f0 = g * g * (x21 * x13 * x13 + x23 * x33 * x13 + x12 * x23 * x23) /
                     (x13 * x13 * x13 * x23);
  const Complex f1 = g * (2.0 * x21 * x13 * x13 + x23 * (x22 + 2.0 * x33) * x13 + x12 * x23 * x23) /
                     (x13 * x13 * x23);
  const Complex f2 = x13 * x21 / x23 + 2.0 * x22 - x12 * x23 / x13 + x33;
  return {f0, f1, f2};
}

Complex discriminant_surface(Complex f0, Complex f1, Complex f2) {
  return 4.0 * f0 * f2 * f2 * f2 - f1 * f1 * f2 * f2 + 4.0 * f1 * f1 * f1 - 18.0 * f0 * f1 * f2 +
         27.0 * f0 * f0;
}

double discriminant_relative(Complex f0, Complex f1, Complex f2) {
  // Weighted-homogeneous of degree 6 with weights (3, 2, 1).
  const double s = std::max({std::cbrt(std::abs(f0)), std::sqrt(std::abs(f1)), std::abs(f2)});
  if (s == 0.0) return 0.0;
  const double s3 = s * s * s;
  return std::abs(discriminant_surface(f0, f1, f2)) / (s3 * s3);
}

CMatrix leaf_embed_3x3(const CVector& x, const CVector& c) {
  require_size(x, 4, "leaf coordinates");
  require_size(c, 2, "leaf parameters");
  const Complex x1 = x(0), x2 = x(1), X1 = x(2), X2 = x(3);
  const Complex c1 = c(0), c2 = c(1);
  const Complex s = x1 * X1 + x2 * X2;
  CMatrix m(3, 3);
  m << c1 + c2 - x1 * X1, -X1 * x2, X1,
      -x1 * X2, c1 + c2 - x2 * X2, X2,
      -x1 * (s - 3.0 * c2), -x2 * (s - 3.0 * c2), c1 - 2.0 * c2 + s;
  return m;
}

BinomialPencil leaf_lax_3x3(const CVector& x, const CVector& c) {
  return BinomialPencil(leaf_embed_3x3(x, c), CMatrix::Identity(3, 3));
}

std::array<Complex, 3> leaf_casimirs(Complex c1, Complex c2) {
  return {(c1 - 2.0 * c2) * (c1 + c2) * (c1 + c2), 3.0 * (c1 * c1 - c2 * c2), 3.0 * c1};
}

CVector leaf_params_from_casimirs(Complex f1, Complex f2, int branch) {
  if (branch != 1 && branch != -1) {
    throw Error(ErrorKind::DomainError, "branch must be +1 or -1");
  }
  CVector c(2);
  c << f2 / 3.0, static_cast<double>(branch) * std::sqrt(f2 * f2 - 3.0 * f1) / 3.0;
  return c;
}

CVector extract_leaf_coords(const CMatrix& u) {
  require_nonzero(u(0, 2), norm_inf(u), "entry 13");
  require_nonzero(u(1, 2), norm_inf(u), "entry 23");
  CVector x(4);
  x << -u(1, 0) / u(1, 2), -u(0, 1) / u(0, 2), u(0, 2), u(1, 2);
  return x;
}

std::pair<CVector, CVector> map_3x3(const CVector& x, const CVector& c, const CVector& y,
                                    const CVector& d) {
  Map3Parts p = map_3x3_parts(x, c, y, d);
  for (int i = 0; i < 2; ++i) {
    const Complex gap = p.u(i) - p.v(i);
    require_nonzero(gap, std::abs(p.u(i)) + std::abs(p.v(i)), "u_i - v_i");
    const Complex xi = x(i + 2), yi = y(i + 2);
    p.u(i + 2) = ((x(i) - p.v(i)) * xi + (y(i) - p.v(i)) * yi) / gap;
    p.v(i + 2) = ((x(i) - p.u(i)) * xi + (y(i) - p.u(i)) * yi) / (-gap);
  }
  return {std::move(p.u), std::move(p.v)};
}

std::pair<CVector, CVector> map_3x3_oracle(const CVector& x, const CVector& c, const CVector& y,
                                           const CVector& d) {
  const CMatrix id = CMatrix::Identity(3, 3);
  const RefactorResult r = refactor_nxn(leaf_embed_3x3(x, c), leaf_embed_3x3(y, d), id, id);
  return {extract_leaf_coords(r.U), extract_leaf_coords(r.V)};
}

double map_3x3_pole_distance(const CVector& x, const CVector& c, const CVector& y,
                             const CVector& d) {
  try {
    const Map3Parts p = map_3x3_parts(x, c, y, d);
    double dist = std::min(rel(p.du, p.du_scale), rel(p.dv, p.dv_scale));
    for (int i = 0; i < 2; ++i) {
      dist = std::min(dist, rel(p.u(i) - p.v(i), std::abs(p.u(i)) + std::abs(p.v(i))));
    }
    return dist;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleError) return 0.0;
    throw;
  }
}

CVector boussinesq_params(Complex a) {
  CVector c(2);
  c << a, 0.0;
  return c;
}

CVector gv_params(Complex a) {
  CVector c(2);
  c << a / 3.0, 2.0 * a / 3.0;
  return c;
}

BinomialPencil boussinesq_lax(const CVector& x, Complex a) {
  return leaf_lax_3x3(x, boussinesq_params(a));
}

BinomialPencil gv_lax(const CVector& x, Complex a) { return leaf_lax_3x3(x, gv_params(a)); }

CVector gv_transform(const CVector& vec, Complex lambda) {
  require_size(vec, 4, "GV vector coordinates");
  const Complex eta1 = vec(0), eta2 = vec(1), xi1 = vec(2), xi2 = vec(3);
  const Complex den = xi1 * eta1 + xi2 * eta2 + 1.0;
  if (!(std::abs(den) > kPoleThreshold * (std::abs(xi1 * eta1) + std::abs(xi2 * eta2) + 1.0))) {
    throw Error(ErrorKind::DomainError, "xi1 eta1 + xi2 eta2 + 1 vanishes");
  }
  CVector x(4);
  x << -eta1, -eta2, 2.0 * lambda * xi1 / den, 2.0 * lambda * xi2 / den;
  return x;
}

CVector gv_inverse_transform(const CVector& x, Complex lambda) {
  require_size(x, 4, "leaf coordinates");
  const Complex den = 2.0 * lambda + x(0) * x(2) + x(1) * x(3);
  if (!(std::abs(den) > kPoleThreshold * (2.0 * std::abs(lambda) + std::abs(x(0) * x(2)) +
                                          std::abs(x(1) * x(3))))) {
    throw Error(ErrorKind::DomainError, "2 lambda + x1 X1 + x2 X2 vanishes");
  }
  CVector v(4);
  v << -x(0), -x(1), x(2) / den, x(3) / den;
  return v;
}

CMatrix gv_inverse_jacobian(const CVector& x, Complex lambda) {
  const Complex den = 2.0 * lambda + x(0) * x(2) + x(1) * x(3);
  const Complex den2 = den * den;
  CMatrix j = CMatrix::Zero(4, 4);
  j(0, 0) = -1.0;
  j(1, 1) = -1.0;
  for (int i = 0; i < 2; ++i) {
    const Complex xi = x(i + 2);
    // d/dx_k, d/dX_k of X_i / den
    for (int k = 0; k < 2; ++k) {
      j(i + 2, k) = -xi * x(k + 2) / den2;
      j(i + 2, k + 2) = (i == k ? 1.0 / den : Complex{0.0, 0.0}) - xi * x(k) / den2;
    }
  }
  return j;
}

CVector affine3(Complex v1, Complex v2) {
  CVector v(3);
  v << v1, v2, 1.0;
  return v;
}

BinomialPencil gv_b_lax(const CVector& xi, const CVector& eta, Complex lambda) {
  require_size(xi, 3, "xi");
  require_size(eta, 3, "eta");
  const Complex inner = xi.transpose() * eta;
  require_nonzero(inner, xi.norm() * eta.norm(), "(xi, eta)");
  const CMatrix id = CMatrix::Identity(3, 3);
  return BinomialPencil(lambda * (2.0 * xi * eta.transpose() / inner - id), id);
}

CMatrix gv_a_matrix(const CVector& xi, const CVector& eta, Complex lambda, Complex zeta) {
  const Complex inner = xi.transpose() * eta;
  require_nonzero(inner, xi.norm() * eta.norm(), "(xi, eta)");
  require_nonzero(zeta - lambda, std::abs(zeta) + std::abs(lambda), "zeta - lambda");
  return CMatrix::Identity(3, 3) + 2.0 * lambda / (zeta - lambda) * xi * eta.transpose() / inner;
}

std::pair<CVector, CVector> gv_vector_map(const CVector& p, Complex lambda, const CVector& q,
                                          Complex mu) {
  const auto [u, v] =
      map_3x3(gv_transform(p, lambda), gv_params(-lambda), gv_transform(q, mu), gv_params(-mu));
  return {gv_inverse_transform(u, lambda), gv_inverse_transform(v, mu)};
}

PoissonStructure reduced_bracket_q() {
  return PoissonStructure(4, [](const CVector& q) {
    const Complex x12 = q(0), x13 = q(1), x21 = q(2), x23 = q(3);
    CMatrix j = CMatrix::Zero(4, 4);
    j(0, 2) = x12 * x23 / x13 - x13 * x21 / x23;
    j(0, 3) = -x13;
    j(1, 2) = x23;
    j(2, 0) = -j(0, 2);
    j(3, 0) = -j(0, 3);
    j(2, 1) = -j(1, 2);
    return j;
  });
}

CMatrix omega_matrix(const CVector& q) {
  const Complex x12 = q(0), x13 = q(1), x21 = q(2), x23 = q(3);
  CMatrix w = CMatrix::Zero(4, 4);
  w(1, 2) = 1.0 / x23;
  w(0, 3) = -1.0 / x13;
  w(1, 3) = x12 / (x13 * x13) - x21 / (x23 * x23);
  w(2, 1) = -w(1, 2);
  w(3, 0) = -w(0, 3);
  w(3, 1) = -w(1, 3);
  return w;
}

CVector canonical_to_q(const CVector& x) {
  CVector q(4);
  q << -x(1) * x(2), x(2), -x(0) * x(3), x(3);
  return q;
}

}  // namespace ybmaps
