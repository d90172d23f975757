#pragma once

// Independent reference computations shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "ybmaps/maps.hpp"
#include "ybmaps/matrix_core.hpp"
#include "ybmaps/sampling.hpp"

namespace ybtest {

using ybmaps::CMatrix;
using ybmaps::Complex;
using ybmaps::CVector;
using ybmaps::Rng;

/// Leibniz sum over permutations.
inline Complex leibniz_det(const CMatrix& m) {
  const auto n = static_cast<int>(m.rows());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  Complex total{0.0, 0.0};
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inversions;
    Complex term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) term *= m(i, p[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// (f_0..f_n) of det(X - zA) = sum (-1)^i f_i z^i, by interpolation at z = 0..n.
inline std::vector<Complex> interpolated_char_poly(const CMatrix& x, const CMatrix& a) {
  const Eigen::Index n = x.rows();
  CMatrix vander(n + 1, n + 1);
  CVector values(n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const double z = static_cast<double>(k);
    for (Eigen::Index i = 0; i <= n; ++i) vander(k, i) = std::pow(z, static_cast<double>(i));
    values(k) = leibniz_det(x - z * a);
  }
  const CVector c = vander.fullPivLu().solve(values);
  std::vector<Complex> f(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i <= n; ++i) f[static_cast<std::size_t>(i)] = (i % 2 ? -1.0 : 1.0) * c(i);
  return f;
}

inline double coefficient_gap(const std::vector<Complex>& got, const std::vector<Complex>& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i)
    worst = std::max(worst, std::abs(got[i] - want[i]) / (1.0 + std::abs(want[i])));
  return worst;
}

/// Newton iteration on UV = YX, UB + AV = YA + BX (2n^2 unknowns) from (U0, V0).
inline std::optional<std::pair<CMatrix, CMatrix>> newton_refactor(const CMatrix& x, const CMatrix& y,
                                                                  const CMatrix& a, const CMatrix& b,
                                                                  CMatrix u, CMatrix v,
                                                                  int iterations = 60) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = n * n;
  const CMatrix yx = y * x;
  const CMatrix rhs = y * a + b * x;
  auto residual = [&](const CMatrix& uu, const CMatrix& vv) {
    CVector r(2 * m);
    const CMatrix r1 = uu * vv - yx;
    const CMatrix r2 = uu * b + a * vv - rhs;
    for (Eigen::Index i = 0; i < m; ++i) {
      r(i) = r1(i / n, i % n);
      r(m + i) = r2(i / n, i % n);
    }
    return r;
  };
  for (int it = 0; it < iterations; ++it) {
    const CVector r = residual(u, v);
    if (r.cwiseAbs().maxCoeff() < 1e-14 * (1.0 + yx.cwiseAbs().maxCoeff())) return std::make_pair(u, v);
    CMatrix jac(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < 2 * m; ++k) {
      CMatrix du = CMatrix::Zero(n, n), dv = CMatrix::Zero(n, n);
      if (k < m) du((k) / n, k % n) = 1.0;
      else dv((k - m) / n, (k - m) % n) = 1.0;
      const CMatrix d1 = du * v + u * dv;
      const CMatrix d2 = du * b + a * dv;
      for (Eigen::Index i = 0; i < m; ++i) {
        jac(i, k) = d1(i / n, i % n);
        jac(m + i, k) = d2(i / n, i % n);
      }
    }
    const CVector step = jac.fullPivLu().solve(-r);
    for (Eigen::Index k = 0; k < m; ++k) {
      u(k / n, k % n) += step(k);
      v(k / n, k % n) += step(m + k);
    }
    if (!u.allFinite() || !v.allFinite()) return std::nullopt;
  }
  const CVector r = residual(u, v);
  if (r.cwiseAbs().maxCoeff() < 1e-10) return std::make_pair(u, v);
  return std::nullopt;
}

/// Newton roots from random starts around (Y, X) whose Casimirs match those of (X, Y).
inline std::vector<std::pair<CMatrix, CMatrix>> casimir_preserving_roots(
    const CMatrix& x, const CMatrix& y, const CMatrix& a, const CMatrix& b, Rng& rng,
    int starts = 40, double tol = 1e-9) {
  const auto gap = [&](const CMatrix& u, const CMatrix& v) {
    const auto fu = interpolated_char_poly(u, a), fx = interpolated_char_poly(x, a);
    const auto fv = interpolated_char_poly(v, b), fy = interpolated_char_poly(y, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < fu.size(); ++i)
      worst = std::max({worst, std::abs(fu[i] - fx[i]) / (1.0 + std::abs(fx[i])),
                        std::abs(fv[i] - fy[i]) / (1.0 + std::abs(fy[i]))});
    return worst;
  };
  std::vector<std::pair<CMatrix, CMatrix>> roots;
  const Eigen::Index n = x.rows();
  for (int s = 0; s < starts; ++s) {
    const CMatrix u0 = y + ybmaps::random_matrix(rng, n, -3.0, 3.0);
    const CMatrix v0 = x + ybmaps::random_matrix(rng, n, -3.0, 3.0);
    const auto root = newton_refactor(x, y, a, b, u0, v0);
    if (root && gap(root->first, root->second) <= tol) roots.push_back(*root);
  }
  return roots;
}

/// Pair of commuting 2x2 matrices from the diagonal or Jordan family.
inline std::pair<CMatrix, CMatrix> commuting_pair(Rng& rng, bool jordan) {
  auto draw = [&] {
    const Complex p = ybmaps::annulus_complex(rng, 0.5, 2.0);
    const Complex q = jordan ? ybmaps::uniform_complex(rng, -1.0, 1.0) : ybmaps::annulus_complex(rng, 0.5, 2.0);
    CMatrix k(2, 2);
    if (jordan) k << p, q, 0.0, p;
    else k << p, 0.0, 0.0, q;
    return k;
  };
  CMatrix a = draw();
  CMatrix b = draw();
  return {a, b};
}

struct Triple3 {
  std::array<CVector, 3> x;
  std::array<CVector, 3> a;
};

/// Independent composition check of R23 R13 R12 against R12 R13 R23.
inline double composed_yb_residual(const ybmaps::YBMap& map, const Triple3& t) {
  auto r = [&](std::array<CVector, 3> s, int i, int j) {
    auto [u, v] = map.apply(s[static_cast<std::size_t>(i)], t.a[static_cast<std::size_t>(i)],
                            s[static_cast<std::size_t>(j)], t.a[static_cast<std::size_t>(j)]);
    s[static_cast<std::size_t>(i)] = u;
    s[static_cast<std::size_t>(j)] = v;
    return s;
  };
  const auto left = r(r(r(t.x, 0, 1), 0, 2), 1, 2);
  const auto right = r(r(r(t.x, 1, 2), 0, 2), 0, 1);
  double diff = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    diff = std::max(diff, (left[k] - right[k]).cwiseAbs().maxCoeff());
    scale = std::max(scale, left[k].cwiseAbs().maxCoeff());
  }
  return diff / (1.0 + scale);
}

}  // namespace ybtest
