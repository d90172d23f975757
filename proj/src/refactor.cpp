#include "ybmaps/refactor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ybmaps/errors.hpp"
#include "ybmaps/sampling.hpp"

namespace ybmaps {

namespace {

constexpr double kCommutatorSlack = 64.0 * std::numeric_limits<double>::epsilon();

double coefficient_drift(const CharPolyCoeffs& got, const CharPolyCoeffs& want) {
  double drift = 0.0;
  for (std::size_t i = 0; i < want.coeffs.size(); ++i) {
    drift = std::max(drift, std::abs(got[i] - want[i]) / (1.0 + std::abs(want[i])));
  }
  return drift;
}

void check_tolerances(const RefactorResult& r, const CMatrix& x, const CMatrix& y,
                      const RefactorTolerances& tol) {
  const double lax_scale = 1.0 + norm_inf(y) * norm_inf(x);
  if (!(r.lax_residual <= tol.lax * lax_scale) || !(r.casimir_drift <= tol.casimir)) {
    std::ostringstream msg;
    msg << "lax residual " << r.lax_residual << " (scale " << lax_scale << "), casimir drift "
        << r.casimir_drift;
    throw Error(ErrorKind::ToleranceExceeded, msg.str());
  }
}

double condition_inf(const CMatrix& m, const CMatrix& inv) { return norm_inf(m) * norm_inf(inv); }

}  // namespace

std::pair<CMatrix, CMatrix> pi_matrices(const CMatrix& x, const CMatrix& y, const CMatrix& a,
                                        const CMatrix& b) {
  if (x.rows() != 2 || y.rows() != 2 || a.rows() != 2 || b.rows() != 2) {
    throw Error(ErrorKind::DomainError, "pi_matrices is defined for 2x2 matrices");
  }
  const CharPolyCoeffs f = char_poly_coeffs(x, a);
  CMatrix pi1 = f[2] * (y * a + b * x) - f[1] * (a * b);
  CMatrix pi2 = f[2] * (y * x) - f[0] * (a * b);
  return {std::move(pi1), std::move(pi2)};
}

double lax_residual(const CMatrix& u, const CMatrix& v, const CMatrix& x, const CMatrix& y,
                    const CMatrix& a, const CMatrix& b) {
  double worst = 0.0;
  for (const Complex z : kSampleZetas) {
    const CMatrix lhs = (u - z * a) * (v - z * b);
    const CMatrix rhs = (y - z * b) * (x - z * a);
    worst = std::max(worst, norm_inf(lhs - rhs));
  }
  return worst;
}

double casimir_drift(const CMatrix& u, const CMatrix& v, const CMatrix& x, const CMatrix& y,
                     const CMatrix& a, const CMatrix& b) {
  return std::max(coefficient_drift(char_poly_coeffs(u, a), char_poly_coeffs(x, a)),
                  coefficient_drift(char_poly_coeffs(v, b), char_poly_coeffs(y, b)));
}

void require_commuting(const CMatrix& a, const CMatrix& b) {
  const double defect = norm_inf(a * b - b * a);
  if (defect > kCommutatorSlack * norm_inf(a) * norm_inf(b)) {
    std::ostringstream msg;
    msg << "||AB - BA|| = " << defect;
    throw Error(ErrorKind::NonCommuting, msg.str());
  }
}

RefactorResult refactor_2x2(const CMatrix& x, const CMatrix& y, const CMatrix& a,
                            const CMatrix& b, const RefactorTolerances& tol) {
  require_commuting(a, b);
  const CMatrix a_inv = inverse(a);
  const auto [pi1, pi2] = pi_matrices(x, y, a, b);
  CMatrix pi1_inv;
  try {
    pi1_inv = inverse(pi1);
  } catch (const Error&) {
    throw Error(ErrorKind::DegeneratePi, "det Pi^1 below threshold");
  }
  RefactorResult r;
  r.U = pi2 * pi1_inv * a;
  r.V = a_inv * (y * a + b * x - r.U * b);
  r.lax_residual = lax_residual(r.U, r.V, x, y, a, b);
  r.casimir_drift = casimir_drift(r.U, r.V, x, y, a, b);
  r.denominator_condition = condition_inf(pi1, pi1_inv);
  check_tolerances(r, x, y, tol);
  return r;
}

PowerRecurrence power_recurrence(const CMatrix& x, const CMatrix& y, const CMatrix& ka,
                                 const CMatrix& kb) {
  const Eigen::Index n = x.rows();
  const CMatrix scale = inverse(kb) * inverse(ka);
  PowerRecurrence rec;
  rec.M.reserve(static_cast<std::size_t>(n) + 1);
  rec.N.reserve(static_cast<std::size_t>(n) + 1);
  rec.M.push_back(CMatrix::Identity(n, n));
  rec.N.push_back(CMatrix::Zero(n, n));
  const CMatrix m1 = (y * ka + kb * x) * scale;
  const CMatrix n1 = -(y * x) * scale;
  rec.M.push_back(m1);
  rec.N.push_back(n1);
  for (Eigen::Index i = 2; i <= n; ++i) {
    const auto prev = static_cast<std::size_t>(i - 1);
    rec.M.push_back(m1 * rec.M[prev] + rec.N[prev]);
    rec.N.push_back(n1 * rec.M[prev]);
  }
  return rec;
}

RefactorResult refactor_nxn(const CMatrix& x, const CMatrix& y, const CMatrix& ka,
                            const CMatrix& kb, const RefactorTolerances& tol) {
  const Eigen::Index n = x.rows();
  if (y.rows() != n || ka.rows() != n || kb.rows() != n) {
    throw Error(ErrorKind::DomainError, "refactor_nxn needs equally sized square matrices");
  }
  require_commuting(ka, kb);
  const CMatrix ka_inv = inverse(ka);
  const PowerRecurrence rec = power_recurrence(x, y, ka, kb);
  const CharPolyCoeffs f = char_poly_coeffs(x, ka);

  CMatrix numerator = -f[0] * CMatrix::Identity(n, n);
  CMatrix denominator = CMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i <= n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const auto k = static_cast<std::size_t>(i);
    numerator -= sign * f[k] * rec.N[k - 1];
    denominator += sign * f[k] * rec.M[k - 1];
  }
  // Pivoted LU for the solve; the determinant test guards genericity.
  const double scale = std::pow(norm_inf(denominator), static_cast<double>(n));
  if (!(std::abs(det(denominator)) >= kSingularThreshold * scale) || scale == 0.0) {
    throw Error(ErrorKind::DegenerateDenominator, "Cayley-Hamilton denominator is singular");
  }
  const Eigen::PartialPivLU<CMatrix> lu(denominator);
  const CMatrix den_inv = lu.inverse();

  RefactorResult r;
  r.U = numerator * den_inv * ka;
  r.V = ka_inv * (y * ka + kb * x - r.U * kb);
  r.lax_residual = lax_residual(r.U, r.V, x, y, ka, kb);
  r.casimir_drift = casimir_drift(r.U, r.V, x, y, ka, kb);
  r.denominator_condition = condition_inf(denominator, den_inv);
  check_tolerances(r, x, y, tol);
  return r;
}

double cayley_hamilton_residual(const CMatrix& u, const CMatrix& x, const CMatrix& ka) {
  const Eigen::Index n = x.rows();
  const CMatrix ut = u * inverse(ka);
  const CharPolyCoeffs f = char_poly_coeffs(x, ka);
  CMatrix acc = f[0] * CMatrix::Identity(n, n);
  CMatrix power = CMatrix::Identity(n, n);
  double scale = std::abs(f[0]);
  for (Eigen::Index i = 1; i <= n; ++i) {
    power = power * ut;
    const Complex fi = f[static_cast<std::size_t>(i)];
    acc += ((i % 2 == 0) ? 1.0 : -1.0) * fi * power;
    scale += std::abs(fi) * norm_inf(power);
  }
  return norm_inf(acc) / (1.0 + scale);
}

double power_recurrence_residual(const CMatrix& u, const CMatrix& ka, const PowerRecurrence& rec) {
  const CMatrix ut = u * inverse(ka);
  const auto n = rec.M.size() - 1;
  CMatrix power = CMatrix::Identity(ut.rows(), ut.cols());
  double worst = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * ut;
    worst = std::max(worst, norm_inf(power - (ut * rec.M[k - 1] + rec.N[k - 1])) /
                                (1.0 + norm_inf(power)));
  }
  return worst;
}

SystemResidual system_residual(const CMatrix& u, const CMatrix& v, const CMatrix& x,
                               const CMatrix& y, const CMatrix& ka, const CMatrix& kb) {
  return {norm_inf(u * v - y * x), norm_inf(u * kb + ka * v - y * ka - kb * x)};
}

bool similarity_check(const CMatrix& u, const CMatrix& v, const CMatrix& x, const CMatrix& y,
                      const CMatrix& ka, const CMatrix& kb, double tol) {
  const CMatrix gap = u * kb - y * ka;
  const double reference = norm_inf(u) * norm_inf(kb) + norm_inf(y) * norm_inf(ka);
  const double gap_norm = norm_inf(gap);
  const double scale = std::pow(gap_norm, static_cast<double>(gap.rows()));
  if (gap_norm <= 1e-14 * reference || !(std::abs(det(gap)) >= kSingularThreshold * scale)) {
    throw Error(ErrorKind::DegenerateSimilarity, "U Kb - Y Ka is singular");
  }
  const CMatrix ka_inv = inverse(ka);
  const CMatrix kb_inv = inverse(kb);
  const double left = coefficient_drift(matrix_char_poly(u * ka_inv), matrix_char_poly(ka_inv * x));
  const double right = coefficient_drift(matrix_char_poly(kb_inv * v), matrix_char_poly(y * kb_inv));
  return left <= tol && right <= tol;
}

namespace {

CMatrix triple_product(const std::array<LeafChart, 3>& charts, const std::array<CVector, 3>& p,
                       Complex zeta) {
  return charts[0](p[0])(zeta) * charts[1](p[1])(zeta) * charts[2](p[2])(zeta);
}

constexpr std::array<Complex, 4> kProbeZetas{Complex{0.0, 0.0}, Complex{1.0, 0.0},
                                             Complex{-1.0, 0.0}, Complex{2.0, 0.0}};

CVector probe_residual(const std::array<LeafChart, 3>& charts, const std::array<CVector, 3>& p,
                       const std::vector<CMatrix>& target) {
  const Eigen::Index n2 = target.front().size();
  CVector r(n2 * static_cast<Eigen::Index>(kProbeZetas.size()));
  for (std::size_t j = 0; j < kProbeZetas.size(); ++j) {
    r.segment(static_cast<Eigen::Index>(j) * n2, n2) =
        flatten(triple_product(charts, p, kProbeZetas[j]) - target[j]);
  }
  return r;
}

double distance(const std::array<CVector, 3>& a, const std::array<CVector, 3>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 3; ++k) d = std::max(d, max_abs(CVector(a[k] - b[k])));
  return d;
}

}  // namespace

UniquenessReport triple_uniqueness_probe(const std::array<LeafChart, 3>& charts,
                                         const std::array<CVector, 3>& coords,
                                         double perturbation, std::uint64_t seed,
                                         int max_iterations) {
  std::vector<CMatrix> target;
  for (const Complex z : kProbeZetas) target.push_back(triple_product(charts, coords, z));

  Rng rng = make_rng(seed);
  std::array<CVector, 3> p = coords;
  for (auto& v : p) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += perturbation * uniform_complex(rng, -1.0, 1.0);
  }

  UniquenessReport report;
  report.initial_distance = distance(p, coords);

  Eigen::Index unknowns = 0;
  for (const auto& v : p) unknowns += v.size();

  auto unpack = [&](const CVector& flat) {
    std::array<CVector, 3> out;
    Eigen::Index off = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      out[k] = flat.segment(off, coords[k].size());
      off += coords[k].size();
    }
    return out;
  };
  CVector z(unknowns);
  {
    Eigen::Index off = 0;
    for (const auto& v : p) {
      z.segment(off, v.size()) = v;
      off += v.size();
    }
  }

  CVector r = probe_residual(charts, unpack(z), target);
  int it = 0;
  for (; it < max_iterations && max_abs(r) > 0.0; ++it) {
    CMatrix jac(r.size(), unknowns);
    for (Eigen::Index k = 0; k < unknowns; ++k) {
      const double h = 1e-7 * (1.0 + std::abs(z(k)));
      CVector zp = z;
      CVector zm = z;
      zp(k) += h;
      zm(k) -= h;
      jac.col(k) = (probe_residual(charts, unpack(zp), target) -
                    probe_residual(charts, unpack(zm), target)) /
                   (2.0 * h);
    }
    const CVector step = jac.colPivHouseholderQr().solve(r);
    z -= step;
    r = probe_residual(charts, unpack(z), target);
    if (max_abs(step) <= 1e-15 * (1.0 + max_abs(z))) {
      ++it;
      break;
    }
  }
  report.iterations = it;
  report.final_distance = distance(unpack(z), coords);
  report.final_residual = max_abs(r);
  return report;
}

}  // namespace ybmaps
