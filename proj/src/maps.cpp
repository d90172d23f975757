#include "ybmaps/maps.hpp"

#include <algorithm>
#include <cmath>

#include "ybmaps/errors.hpp"
#include "ybmaps/maps_2x2.hpp"
#include "ybmaps/maps_3x3.hpp"

namespace ybmaps {

namespace {

CVector vec2(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return v;
}

CVector vec4(Complex a, Complex b, Complex c, Complex d) {
  CVector v(4);
  v << a, b, c, d;
  return v;
}

class CaseMap final : public YBMap {
 public:
  explicit CaseMap(CaseKind kind) : kind_(kind) {}

  std::string id() const override { return kind_ == CaseKind::I ? "case1" : "case2"; }
  Eigen::Index coord_dim() const override { return 2; }
  Eigen::Index param_dim() const override { return 4; }
  std::vector<std::string> coord_names() const override { return {"x1", "x2"}; }

  std::pair<CVector, CVector> apply(const CVector& x, const CVector& a, const CVector& y,
                                    const CVector& b) const override {
    return case_map(kind_, x, a, y, b);
  }
  BinomialPencil lax(const CVector& x, const CVector& a) const override {
    return case_lax(kind_, x, a);
  }
  PoissonStructure reduced_structure(const CVector& a) const override {
    const Complex a1 = a(0), a2 = a(1);
    if (kind_ == CaseKind::I) {
      return planar_structure([a1](const CVector& p) { return -a1 * p(1); });
    }
    return planar_structure([a1, a2](const CVector& p) { return a2 * p(0) - a1 * p(1); });
  }
  double pole_distance(const CVector& x, const CVector& a, const CVector& y,
                       const CVector& b) const override {
    return case_pole_distance(kind_, x, a, y, b);
  }
  CVector sample_params(Rng& rng) const override {
    return vec4(annulus_complex(rng, 0.5, 2.0), annulus_complex(rng, 0.5, 2.0),
                uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0));
  }
  CVector sample_coords(Rng& rng, const CVector&) const override {
    return vec2(uniform_complex(rng, -1.0, 1.0), annulus_complex(rng, 0.3, 1.5));
  }

 private:
  CaseKind kind_;
};

class AdlerYamilovMap final : public YBMap {
 public:
  std::string id() const override { return "ay"; }
  Eigen::Index coord_dim() const override { return 2; }
  Eigen::Index param_dim() const override { return 3; }
  std::vector<std::string> coord_names() const override { return {"x1", "x2"}; }

  std::pair<CVector, CVector> apply(const CVector& x, const CVector& a, const CVector& y,
                                    const CVector& b) const override {
    return adler_yamilov_general(x, a, y, b);
  }
  BinomialPencil lax(const CVector& x, const CVector& a) const override { return ay_lax(x, a); }
  PoissonStructure reduced_structure(const CVector& a) const override {
    const Complex a3 = a(2);
    return planar_structure([a3](const CVector&) { return a3; });
  }
  double pole_distance(const CVector& x, const CVector& a, const CVector& y,
                       const CVector& b) const override {
    return ay_pole_distance(x, a, y, b);
  }
  CVector sample_params(Rng& rng) const override {
    CVector a(3);
    a << annulus_complex(rng, 0.5, 2.0), uniform_complex(rng, -1.0, 1.0),
        annulus_complex(rng, 0.5, 2.0);
    return a;
  }
  CVector sample_coords(Rng& rng, const CVector&) const override {
    return vec2(uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0));
  }
};

// yb3 takes (c1, c2); boussinesq and gv take a single parameter.
class LeafMap3 final : public YBMap {
 public:
  enum class Flavor { General, Boussinesq, GV };
  explicit LeafMap3(Flavor f) : flavor_(f) {}

  std::string id() const override {
    switch (flavor_) {
      case Flavor::General:
        return "yb3";
      case Flavor::Boussinesq:
        return "boussinesq";
      case Flavor::GV:
        return "gv";
    }
    return {};
  }
  Eigen::Index coord_dim() const override { return 4; }
  Eigen::Index param_dim() const override { return flavor_ == Flavor::General ? 2 : 1; }
  std::vector<std::string> coord_names() const override { return {"x1", "x2", "X1", "X2"}; }

  CVector leaf_params(const CVector& a) const {
    switch (flavor_) {
      case Flavor::Boussinesq:
        return boussinesq_params(a(0));
      case Flavor::GV:
        return gv_params(a(0));
      case Flavor::General:
        break;
    }
    return a;
  }

  std::pair<CVector, CVector> apply(const CVector& x, const CVector& a, const CVector& y,
                                    const CVector& b) const override {
    return map_3x3(x, leaf_params(a), y, leaf_params(b));
  }
  BinomialPencil lax(const CVector& x, const CVector& a) const override {
    return leaf_lax_3x3(x, leaf_params(a));
  }
  PoissonStructure reduced_structure(const CVector&) const override {
    return canonical_structure(2);
  }
  double pole_distance(const CVector& x, const CVector& a, const CVector& y,
                       const CVector& b) const override {
    return map_3x3_pole_distance(x, leaf_params(a), y, leaf_params(b));
  }
  CVector sample_params(Rng& rng) const override {
    if (flavor_ == Flavor::General) {
      return vec2(uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0));
    }
    CVector a(1);
    a << uniform_complex(rng, -1.0, 1.0);
    return a;
  }
  CVector sample_coords(Rng& rng, const CVector&) const override {
    return vec4(uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0),
                annulus_complex(rng, 0.3, 1.5), annulus_complex(rng, 0.3, 1.5));
  }

 private:
  Flavor flavor_;
};

// Coordinates (eta1, eta2, xi1, xi2) of the affine vectors (xi1, xi2, 1), (eta1, eta2, 1).
class GVVectorMap final : public YBMap {
 public:
  std::string id() const override { return "gv-vector"; }
  Eigen::Index coord_dim() const override { return 4; }
  Eigen::Index param_dim() const override { return 1; }
  std::vector<std::string> coord_names() const override { return {"eta1", "eta2", "xi1", "xi2"}; }

  std::pair<CVector, CVector> apply(const CVector& x, const CVector& a, const CVector& y,
                                    const CVector& b) const override {
    return gv_vector_map(x, a(0), y, b(0));
  }
  BinomialPencil lax(const CVector& x, const CVector& a) const override {
    return gv_b_lax(affine3(x(2), x(3)), affine3(x(0), x(1)), a(0));
  }
  PoissonStructure reduced_structure(const CVector& a) const override {
    const Complex lambda = a(0);
    return PoissonStructure(4, [lambda](const CVector& p) {
      const CMatrix jac = gv_inverse_jacobian(gv_transform(p, lambda), lambda);
      return CMatrix(jac * canonical_structure(2)(p) * jac.transpose());
    });
  }
  double pole_distance(const CVector& x, const CVector& a, const CVector& y,
                       const CVector& b) const override {
    try {
      return map_3x3_pole_distance(gv_transform(x, a(0)), gv_params(-a(0)),
                                   gv_transform(y, b(0)), gv_params(-b(0)));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DomainError) return 0.0;
      throw;
    }
  }
  CVector sample_params(Rng& rng) const override {
    CVector a(1);
    a << annulus_complex(rng, 0.5, 2.0);
    return a;
  }
  CVector sample_coords(Rng& rng, const CVector&) const override {
    return vec4(uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0),
                uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0));
  }
};

double coefficient_drift(const CharPolyCoeffs& got, const CharPolyCoeffs& want) {
  double drift = 0.0;
  for (std::size_t i = 0; i < want.coeffs.size(); ++i) {
    drift = std::max(drift, std::abs(got[i] - want[i]) / (1.0 + std::abs(want[i])));
  }
  return drift;
}

}  // namespace

const std::vector<std::string>& map_ids() {
  static const std::vector<std::string> ids{"case1", "case2", "ay", "yb3",
                                            "boussinesq", "gv", "gv-vector"};
  return ids;
}

std::shared_ptr<const YBMap> make_map(const std::string& id) {
  if (id == "case1") return std::make_shared<CaseMap>(CaseKind::I);
  if (id == "case2") return std::make_shared<CaseMap>(CaseKind::II);
  if (id == "ay") return std::make_shared<AdlerYamilovMap>();
  if (id == "yb3") return std::make_shared<LeafMap3>(LeafMap3::Flavor::General);
  if (id == "boussinesq") return std::make_shared<LeafMap3>(LeafMap3::Flavor::Boussinesq);
  if (id == "gv") return std::make_shared<LeafMap3>(LeafMap3::Flavor::GV);
  if (id == "gv-vector") return std::make_shared<GVVectorMap>();
  throw Error(ErrorKind::ConfigError, "unknown map id '" + id + "'");
}

CVector concat(const CVector& a, const CVector& b) {
  CVector out(a.size() + b.size());
  out << a, b;
  return out;
}

YBOutcome yang_baxter_residual(const YBMap& map, const Triple& t) {
  YBOutcome out;
  out.pole_distance = std::numeric_limits<double>::infinity();
  auto r = [&](const CVector& p, const CVector& pa, const CVector& q, const CVector& qa) {
    out.pole_distance = std::min(out.pole_distance, map.pole_distance(p, pa, q, qa));
    return map.apply(p, pa, q, qa);
  };
  const auto& [a1, a2, a3] = t.a;
  // R23 R13 R12
  const auto [p1, p2] = r(t.x[0], a1, t.x[1], a2);
  const auto [q1, p3] = r(p1, a1, t.x[2], a3);
  const auto [q2, q3] = r(p2, a2, p3, a3);
  // R12 R13 R23
  const auto [s2, s3] = r(t.x[1], a2, t.x[2], a3);
  const auto [t1, t3] = r(t.x[0], a1, s3, a3);
  const auto [r1, r2] = r(t1, a1, s2, a2);
  const CVector lhs = concat(concat(q1, q2), q3);
  const CVector rhs = concat(concat(r1, r2), t3);
  out.residual = max_abs(CVector(lhs - rhs)) / (1.0 + max_abs(lhs));
  return out;
}

double map_lax_residual(const YBMap& map, const CVector& x, const CVector& a, const CVector& y,
                        const CVector& b, const CVector& u, const CVector& v) {
  const BinomialPencil lx = map.lax(x, a), ly = map.lax(y, b), lu = map.lax(u, a),
                       lv = map.lax(v, b);
  double worst = 0.0;
  for (const Complex z : kSampleZetas) {
    const CMatrix rhs_l = ly(z), rhs_r = lx(z);
    const CMatrix diff = lu(z) * lv(z) - rhs_l * rhs_r;
    worst = std::max(worst, norm_inf(diff) / (1.0 + norm_inf(rhs_l) * norm_inf(rhs_r)));
  }
  return worst;
}

double map_casimir_drift(const YBMap& map, const CVector& x, const CVector& a, const CVector& y,
                         const CVector& b, const CVector& u, const CVector& v) {
  return std::max(coefficient_drift(char_poly_coeffs(map.lax(u, a)), char_poly_coeffs(map.lax(x, a))),
                  coefficient_drift(char_poly_coeffs(map.lax(v, b)), char_poly_coeffs(map.lax(y, b))));
}

PoissonCheck map_poisson_check(const YBMap& map, const CVector& x, const CVector& a,
                               const CVector& y, const CVector& b, double h) {
  const Eigen::Index k = map.coord_dim();
  const VectorMap f = [&map, &a, &b, k](const CVector& p) {
    const auto [u, v] = map.apply(p.head(k), a, p.tail(k), b);
    return concat(u, v);
  };
  const PoissonStructure j = product_structure(map.reduced_structure(a), map.reduced_structure(b));
  return poisson_map_check(f, j, j, concat(x, y), h);
}

}  // namespace ybmaps
