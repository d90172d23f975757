#include "ybmaps/sklyanin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ybmaps/errors.hpp"

namespace ybmaps {

PoissonStructure::PoissonStructure(Eigen::Index dim, Evaluator evaluator)
    : dim_(dim), eval_(std::move(evaluator)) {}

CMatrix PoissonStructure::operator()(const CVector& p) const {
  if (p.size() != dim_) {
    throw Error(ErrorKind::DomainError, "point dimension does not match the structure");
  }
  return eval_(p);
}

CVector fd_gradient(const std::function<Complex(const CVector&)>& f, const CVector& p) {
  CVector g(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double h = 1e-6 * (1.0 + std::abs(p(k)));
    CVector plus = p;
    CVector minus = p;
    plus(k) += h;
    minus(k) -= h;
    g(k) = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

CVector Observable::grad(const CVector& p) const {
  return gradient ? gradient(p) : fd_gradient(value, p);
}

CMatrix fd_jacobian(const VectorMap& f, const CVector& p, double h) {
  // Central differences on a circle of radius `step` in the complex coordinate plane:
  //   df/dp_k = sum_j w^{-j} f(p + step w^j e_k) / (N step),  w = exp(2 pi i / N),
  // exact up to O(step^N) for maps holomorphic in p_k.
  constexpr int kNodes = 8;
  CMatrix jac;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double step = h * (1.0 + std::abs(p(k)));
    CVector col;
    for (int j = 0; j < kNodes; ++j) {
      const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * j / kNodes);
      CVector q = p;
      q(k) += step * w;
      const CVector term = f(q) / w;
      col = j == 0 ? term : CVector(col + term);
    }
    col /= kNodes * step;
    if (k == 0) jac.resize(col.size(), p.size());
    jac.col(k) = col;
  }
  return jac;
}

PoissonStructure sklyanin_structure(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  return PoissonStructure(n * n, [a, n](const CVector& p) {
    const CMatrix x = unflatten(p, n);
    CMatrix j(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index jj = 0; jj < n; ++jj)
        for (Eigen::Index k = 0; k < n; ++k)
          for (Eigen::Index l = 0; l < n; ++l)
            j(i * n + jj, k * n + l) = a(i, l) * x(k, jj) - a(k, jj) * x(i, l);
    return j;
  });
}

PoissonStructure sklyanin_2x2(const CMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw Error(ErrorKind::DomainError, "sklyanin_2x2 needs a 2x2 leading matrix");
  }
  const Complex a1 = a(0, 0), a2 = a(0, 1), a3 = a(1, 0), a4 = a(1, 1);
  return PoissonStructure(4, [=](const CVector& p) {
    const Complex x1 = p(0), x2 = p(1), x3 = p(2), x4 = p(3);
    CMatrix j = CMatrix::Zero(4, 4);
    j(0, 1) = -x2 * a1 + x1 * a2;
    j(0, 2) = x3 * a1 - x1 * a3;
    j(0, 3) = x3 * a2 - x2 * a3;
    j(1, 2) = x4 * a1 - x1 * a4;
    j(1, 3) = x4 * a2 - x2 * a4;
    j(2, 3) = -x4 * a3 + x3 * a4;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < r; ++c) j(r, c) = -j(c, r);
    return j;
  });
}

PoissonStructure sklyanin_3x3_identity() {
  return sklyanin_structure(CMatrix::Identity(3, 3));
}

CMatrix sklyanin_3x3_printed(const CVector& x) {
  if (x.size() != 9) {
    throw Error(ErrorKind::DomainError, "sklyanin_3x3_printed needs 9 coordinates");
  }
  auto e = [&](int i, int j) { return x((i - 1) * 3 + (j - 1)); };
  const Complex z{0.0, 0.0};
  CMatrix m(9, 9);
  m << z, -e(1, 2), -e(1, 3), e(1, 2), z, z, e(1, 3), z, z,
      e(2, 1), z, z, e(2, 2) - e(1, 1), -e(1, 2), -e(1, 3), e(2, 3), z, z,
      e(3, 1), z, z, e(3, 2), z, z, e(3, 3) - e(1, 1), -e(1, 2), -e(1, 3),
      -e(2, 1), e(1, 1) - e(2, 2), -e(2, 3), z, e(1, 2), z, z, e(1, 3), z,
      z, e(2, 1), z, -e(2, 1), z, -e(2, 3), z, e(2, 3), z,
      z, e(3, 1), z, z, e(3, 2), z, -e(2, 1), e(3, 3) - e(2, 2), -e(2, 3),
      -e(3, 1), -e(3, 2), e(1, 1) - e(3, 3), z, z, e(1, 2), z, z, e(1, 3),
      z, z, e(2, 1), -e(3, 1), -e(3, 2), e(2, 2) - e(3, 3), z, z, e(2, 3),
      z, z, e(3, 1), z, z, e(3, 2), -e(3, 1), -e(3, 2), z;
  return m;
}

PoissonStructure product_structure(const PoissonStructure& first, const PoissonStructure& second) {
  const Eigen::Index d1 = first.dim();
  const Eigen::Index d2 = second.dim();
  return PoissonStructure(d1 + d2, [first, second, d1, d2](const CVector& p) {
    CMatrix j = CMatrix::Zero(d1 + d2, d1 + d2);
    j.topLeftCorner(d1, d1) = first(p.head(d1));
    j.bottomRightCorner(d2, d2) = second(p.tail(d2));
    return j;
  });
}

PoissonStructure canonical_structure(Eigen::Index pairs) {
  return PoissonStructure(2 * pairs, [pairs](const CVector&) {
    CMatrix j = CMatrix::Zero(2 * pairs, 2 * pairs);
    j.topRightCorner(pairs, pairs) = CMatrix::Identity(pairs, pairs);
    j.bottomLeftCorner(pairs, pairs) = -CMatrix::Identity(pairs, pairs);
    return j;
  });
}

PoissonStructure planar_structure(std::function<Complex(const CVector&)> c) {
  return PoissonStructure(2, [c = std::move(c)](const CVector& p) {
    CMatrix j = CMatrix::Zero(2, 2);
    j(0, 1) = c(p);
    j(1, 0) = -j(0, 1);
    return j;
  });
}

Complex bracket(const PoissonStructure& j, const Observable& f, const Observable& g,
                const CVector& p) {
  if (f.dim != j.dim() || g.dim != j.dim()) {
    throw Error(ErrorKind::DomainError, "observable dimension does not match the structure");
  }
  const CVector gf = f.grad(p);
  const CVector gg = g.grad(p);
  return (gf.transpose() * j(p) * gg)(0, 0);
}

Observable coordinate(Eigen::Index dim, Eigen::Index k) {
  Observable o;
  o.dim = dim;
  o.value = [k](const CVector& p) { return p(k); };
  o.gradient = [dim, k](const CVector&) {
    CVector g = CVector::Zero(dim);
    g(k) = 1.0;
    return g;
  };
  return o;
}

double casimir_check(const PoissonStructure& j, const Observable& f,
                     std::span<const CVector> points) {
  double worst = 0.0;
  for (const CVector& p : points) {
    // {f, x_k} = (grad f^T J)_k
    const CVector row = (f.grad(p).transpose() * j(p)).transpose();
    worst = std::max(worst, max_abs(row));
  }
  return worst;
}

namespace {

double pullback_defect(const VectorMap& f, const PoissonStructure& source,
                       const PoissonStructure& target, const CVector& p, double h) {
  const CMatrix df = fd_jacobian(f, p, h);
  const CMatrix pushed = df * source(p) * df.transpose();
  const CMatrix want = target(f(p));
  return norm_inf(pushed - want) / (1.0 + norm_inf(want));
}

}  // namespace

PoissonCheck poisson_map_check(const VectorMap& f, const PoissonStructure& source,
                               const PoissonStructure& target, const CVector& p, double h) {
  constexpr double kFloor = 1e-7;
  constexpr int kRefinements = 4;
  PoissonCheck c;
  for (int k = 0; k < kRefinements; ++k, h *= 0.25) {
    c.step = h;
    c.residual = pullback_defect(f, source, target, p, h);
    c.residual_half = pullback_defect(f, source, target, p, 0.5 * h);
    const double hi = std::max(c.residual, c.residual_half);
    const double lo = std::min(c.residual, c.residual_half);
    if (hi <= kFloor || hi <= 10.0 * lo) return c;
  }
  std::ostringstream msg;
  msg << "residual " << c.residual << " at h = " << c.step << ", " << c.residual_half
      << " at h/2";
  throw Error(ErrorKind::StepTooLarge, msg.str());
}

double jacobi_residual(const PoissonStructure& j, const CVector& p, double h) {
  const Eigen::Index d = j.dim();
  std::vector<CMatrix> dj(static_cast<std::size_t>(d));
  for (Eigen::Index l = 0; l < d; ++l) {
    const double step = h * (1.0 + std::abs(p(l)));
    CVector plus = p;
    CVector minus = p;
    plus(l) += step;
    minus(l) -= step;
    dj[static_cast<std::size_t>(l)] = (j(plus) - j(minus)) / (2.0 * step);
  }
  const CMatrix j0 = j(p);
  auto term = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c) {
    Complex s{0.0, 0.0};
    for (Eigen::Index l = 0; l < d; ++l) s += j0(a, l) * dj[static_cast<std::size_t>(l)](b, c);
    return s;
  };
  double worst = 0.0;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a + 1; b < d; ++b)
      for (Eigen::Index c = b + 1; c < d; ++c)
        worst = std::max(worst, std::abs(term(a, b, c) + term(b, c, a) + term(c, a, b)));
  return worst;
}

int numeric_rank(const CMatrix& m, double rel_threshold) {
  const Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_threshold * s(0)) ++rank;
  }
  return rank;
}

}  // namespace ybmaps
