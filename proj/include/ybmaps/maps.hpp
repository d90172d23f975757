#pragma once

// Uniform interface over the shipped Yang-Baxter maps, addressable by id:
//   case1, case2, ay, yb3, boussinesq, gv, gv-vector.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ybmaps/matrix_core.hpp"
#include "ybmaps/sampling.hpp"
#include "ybmaps/sklyanin.hpp"

namespace ybmaps {

class YBMap {
 public:
  virtual ~YBMap() = default;

  virtual std::string id() const = 0;
  virtual Eigen::Index coord_dim() const = 0;
  virtual Eigen::Index param_dim() const = 0;
  /// Names of the coordinates, used in exports.
  virtual std::vector<std::string> coord_names() const = 0;

  /// ((x, a), (y, b)) -> (u, v); parameters are carried along unchanged.
  virtual std::pair<CVector, CVector> apply(const CVector& x, const CVector& a, const CVector& y,
                                            const CVector& b) const = 0;
  /// Strong Lax matrix: L(u;a) L(v;b) = L(y;b) L(x;a).
  virtual BinomialPencil lax(const CVector& x, const CVector& a) const = 0;
  /// Reduced Poisson structure on one factor.
  virtual PoissonStructure reduced_structure(const CVector& a) const = 0;
  /// Smallest relative denominator met by apply() at this input (0 at a pole).
  virtual double pole_distance(const CVector& x, const CVector& a, const CVector& y,
                               const CVector& b) const = 0;

  virtual CVector sample_params(Rng& rng) const = 0;
  virtual CVector sample_coords(Rng& rng, const CVector& a) const = 0;
};

/// Throws ConfigError for an unknown id.
std::shared_ptr<const YBMap> make_map(const std::string& id);
const std::vector<std::string>& map_ids();

struct Triple {
  std::array<CVector, 3> x;
  std::array<CVector, 3> a;
};

struct YBOutcome {
  double residual = 0.0;       ///< ||lhs - rhs||_inf / (1 + ||lhs||_inf)
  double pole_distance = 0.0;  ///< min over the six applications
};

/// Compares R23 R13 R12 with R12 R13 R23 on a triple.
YBOutcome yang_baxter_residual(const YBMap& map, const Triple& t);

/// max over kSampleZetas of ||L(u;a)L(v;b) - L(y;b)L(x;a)||_inf / (1 + ||L(y;b)|| ||L(x;a)||).
double map_lax_residual(const YBMap& map, const CVector& x, const CVector& a, const CVector& y,
                        const CVector& b, const CVector& u, const CVector& v);

/// max relative change of the Casimirs of L(u;a) vs L(x;a) and L(v;b) vs L(y;b).
double map_casimir_drift(const YBMap& map, const CVector& x, const CVector& a, const CVector& y,
                         const CVector& b, const CVector& u, const CVector& v);

/// Finite-difference check of the map against the product of reduced structures.
PoissonCheck map_poisson_check(const YBMap& map, const CVector& x, const CVector& a,
                               const CVector& y, const CVector& b, double h = 1e-3);

/// Concatenates two vectors.
CVector concat(const CVector& a, const CVector& b);

}  // namespace ybmaps
