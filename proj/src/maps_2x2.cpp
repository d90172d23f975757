#include "ybmaps/maps_2x2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ybmaps/errors.hpp"
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

CVector pair_of(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return v;
}

double relative(Complex den, double scale) { return scale == 0.0 ? 0.0 : std::abs(den) / scale; }

}  // namespace

void require_nonzero(Complex den, double scale, const char* what) {
  if (!(std::abs(den) > kPoleThreshold * scale) || !std::isfinite(std::abs(den))) {
    throw Error(ErrorKind::PoleError, std::string(what) + " vanishes");
  }
}

CMatrix case1_embed(Complex x1, Complex x2, const CVector& a) {
  require_size(a, 4, "case I parameters");
  const Complex a1 = a(0), a2 = a(1), a3 = a(2), a4 = a(3);
  const Complex den = a1 * x2;
  if (!(std::abs(den) > kPoleThreshold * std::abs(a1) * (1.0 + std::abs(x1) + std::abs(x2)))) {
    throw Error(ErrorKind::DomainError, "case I embedding needs a1 != 0 and x2 != 0");
  }
  CMatrix m(2, 2);
  m << x1, x2, (x1 * (a4 - a2 * x1) - a1 * a3) / den, (a4 - a2 * x1) / a1;
  return m;
}

CMatrix case2_embed(Complex x1, Complex x2, const CVector& a) {
  require_size(a, 4, "case II parameters");
  const Complex a1 = a(0), a2 = a(1), a3 = a(2), a4 = a(3);
  const Complex den = a1 * x2 - a2 * x1;
  if (!(std::abs(den) > kPoleThreshold * (std::abs(a1 * x2) + std::abs(a2 * x1)))) {
    throw Error(ErrorKind::DomainError, "case II embedding needs a1 x2 - a2 x1 != 0");
  }
  CMatrix m(2, 2);
  m << x1, x2, (a4 * x1 - a1 * (x1 * x1 + a3)) / den, (a2 * a3 - a4 * x2 + a1 * x1 * x2) / (-den);
  return m;
}

CMatrix case_embed(CaseKind kind, const CVector& x, const CVector& a) {
  require_size(x, 2, "case coordinates");
  return kind == CaseKind::I ? case1_embed(x(0), x(1), a) : case2_embed(x(0), x(1), a);
}

CMatrix case_family(CaseKind kind, const CVector& a) {
  require_size(a, 2, "family parameters");
  const std::array<Complex, 2> alpha{a(0), a(1)};
  const CommutingFamily family(kind == CaseKind::I ? FamilyKind::DiagonalI : FamilyKind::JordanII);
  return family(alpha);
}

BinomialPencil case_lax(CaseKind kind, const CVector& x, const CVector& a) {
  return BinomialPencil(case_embed(kind, x, a), case_family(kind, a));
}

std::pair<CVector, CVector> case_map(CaseKind kind, const CVector& x, const CVector& a,
                                     const CVector& y, const CVector& b) {
  const CMatrix xm = case_embed(kind, x, a);
  const CMatrix ym = case_embed(kind, y, b);
  const CMatrix ka = case_family(kind, a);
  const CMatrix kb = case_family(kind, b);
  const RefactorResult r = refactor_2x2(xm, ym, ka, kb);
  CVector u = pair_of(r.U(0, 0), r.U(0, 1));
  CVector v = pair_of(r.V(0, 0), r.V(0, 1));
  const double leaf_defect = std::max(norm_inf(case_embed(kind, u, a) - r.U) / (1.0 + norm_inf(r.U)),
                                      norm_inf(case_embed(kind, v, b) - r.V) / (1.0 + norm_inf(r.V)));
  if (!(leaf_defect <= 1e-8)) {
    std::ostringstream msg;
    msg << "re-factorized matrices left the leaf (defect " << leaf_defect << ")";
    throw Error(ErrorKind::ToleranceExceeded, msg.str());
  }
  return {std::move(u), std::move(v)};
}

std::pair<CVector, CVector> case_map_recover(CaseKind kind, const CVector& u, const CVector& a,
                                             const CVector& y, const CVector& b) {
  const CMatrix um = case_embed(kind, u, a);
  const CMatrix ym = case_embed(kind, y, b);
  const CMatrix ka = case_family(kind, a);
  const CMatrix kb = case_family(kind, b);
  const CMatrix s = um * kb - ym * ka;
  const CMatrix s_inv = inverse(s);
  const CMatrix vm = kb * s_inv * ym * inverse(kb) * s;
  const CMatrix xm = ka * s_inv * um * inverse(ka) * s;
  return {pair_of(xm(0, 0), xm(0, 1)), pair_of(vm(0, 0), vm(0, 1))};
}

double case_pole_distance(CaseKind kind, const CVector& x, const CVector& a, const CVector& y,
                          const CVector& b) {
  auto embed_distance = [kind](const CVector& p, const CVector& q) {
    if (kind == CaseKind::I) return relative(p(1), 1.0 + std::abs(p(0)) + std::abs(p(1)));
    return relative(q(0) * p(1) - q(1) * p(0), std::abs(q(0) * p(1)) + std::abs(q(1) * p(0)));
  };
  double d = std::min(embed_distance(x, a), embed_distance(y, b));
  if (d <= kPoleThreshold) return d;
  const auto [pi1, pi2] = pi_matrices(case_embed(kind, x, a), case_embed(kind, y, b),
                                      case_family(kind, a), case_family(kind, b));
  const double n = norm_inf(pi1);
  return std::min(d, relative(det(pi1), n * n));
}

Complex ay_q(const CVector& x, const CVector& a, const CVector& y, const CVector& b) {
  const Complex den = a(2) * b(2) + a(0) * b(0) * x(0) * y(1);
  require_nonzero(den, std::abs(a(2) * b(2)) + std::abs(a(0) * b(0) * x(0) * y(1)),
                  "a3 b3 + a1 b1 x1 y2");
  return a(0) * b(0) * (a(1) * b(2) - a(2) * b(1)) / den;
}

std::pair<CVector, CVector> adler_yamilov_general(const CVector& x, const CVector& a,
                                                  const CVector& y, const CVector& b) {
  require_size(a, 3, "Adler-Yamilov parameters");
  require_size(b, 3, "Adler-Yamilov parameters");
  require_size(x, 2, "Adler-Yamilov coordinates");
  require_size(y, 2, "Adler-Yamilov coordinates");
  const Complex a1 = a(0), a3 = a(2), b1 = b(0), b3 = b(2);
  for (const Complex p : {a1, a3, b1, b3}) require_nonzero(p, 1.0, "parameter a1, a3, b1 or b3");
  const Complex q = ay_q(x, a, y, b);
  CVector u = pair_of(b1 / (a1 * b3) * (a3 * y(0) - q * x(0)), a1 / b1 * y(1));
  CVector v = pair_of(b1 / a1 * x(0), a1 / (b1 * a3) * (b3 * x(1) + q * y(1)));
  return {std::move(u), std::move(v)};
}

double ay_pole_distance(const CVector& x, const CVector& a, const CVector& y, const CVector& b) {
  const Complex t1 = a(2) * b(2);
  const Complex t2 = a(0) * b(0) * x(0) * y(1);
  return relative(t1 + t2, std::abs(t1) + std::abs(t2));
}

CMatrix ay_point(const CVector& x, const CVector& a) {
  require_size(a, 3, "Adler-Yamilov parameters");
  require_nonzero(a(0), 1.0, "a1");
  require_nonzero(a(2), 1.0, "a3");
  CMatrix m(2, 2);
  m << a(0) / a(2) * (a(1) + x(0) * x(1)), x(0), x(1), a(2) / a(0);
  return m;
}

BinomialPencil ay_lax(const CVector& x, const CVector& a) {
  CMatrix lead = CMatrix::Zero(2, 2);
  lead(0, 0) = a(0);
  return BinomialPencil(ay_point(x, a), lead);
}

BinomialPencil ay_epsilon_lax(const CVector& x, const CVector& a, double eps) {
  require_size(a, 3, "Adler-Yamilov parameters");
  if (!(eps > 0.0)) throw Error(ErrorKind::DomainError, "epsilon must be positive");
  const Complex a1 = a(0), a3 = a(2);
  const Complex w = a(1) + x(0) * x(1);
  const Complex radicand = a3 * a3 - 4.0 * a1 * eps * w;
  if (radicand.imag() == 0.0 && radicand.real() <= 0.0) {
    throw Error(ErrorKind::BranchCut, "square-root argument is a nonpositive real");
  }
  const Complex root = std::sqrt(radicand);
  const Complex plus = a3 + root;
  require_nonzero(plus, std::abs(a3) + std::abs(root), "a3 + sqrt(...)");
  // (a3 - root) / (2 eps) rewritten without cancellation.
  CMatrix point(2, 2);
  point << 2.0 * a1 * w / plus, x(0), x(1), plus / (2.0 * a1);
  CMatrix lead = CMatrix::Zero(2, 2);
  lead(0, 0) = a1;
  lead(1, 1) = eps;
  return BinomialPencil(std::move(point), std::move(lead));
}

double ay_limit_distance(const CVector& x, const CVector& a, double eps) {
  return norm_inf(ay_epsilon_lax(x, a, eps).point() - ay_point(x, a));
}

LimitProbe ay_limit_probe(const CVector& x, const CVector& a, const std::vector<double>& eps) {
  LimitProbe p;
  p.eps = eps;
  for (const double e : eps) p.distance.push_back(ay_limit_distance(x, a, e));
  p.min_order = eps.size() > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    const double order = std::log(p.distance[i] / p.distance[i + 1]) / std::log(eps[i] / eps[i + 1]);
    p.order.push_back(order);
    p.min_order = std::min(p.min_order, order);
    if (!(p.distance[i + 1] < p.distance[i])) p.monotone = false;
  }
  return p;
}

std::vector<double> halving_sequence(double eps0, double eps_min) {
  std::vector<double> out;
  for (double e = eps0; e >= eps_min * (1.0 - 1e-12); e *= 0.5) out.push_back(e);
  return out;
}

}  // namespace ybmaps
