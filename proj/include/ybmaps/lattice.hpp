#pragma once

// Periodic staircase dynamics. A state of period m holds sites x_1..x_m (parameters a_i)
// and y_1..y_m (parameters b_i). The monodromy is
//   T(z) = L(y_m; b_m) L(x_m; a_m) ... L(y_1; b_1) L(x_1; a_1),
// and one transfer step sets (u_i, v_i) = R(x_i, y_i), x'_i = u_i, y'_i = v_{i+1 mod m}
// (parameters move with their sites), which conjugates T by L(v_1; b_1).

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ybmaps/json_io.hpp"
#include "ybmaps/maps.hpp"

namespace ybmaps {

struct StaircaseState {
  std::vector<CVector> x, a;
  std::vector<CVector> y, b;

  std::size_t period() const noexcept { return x.size(); }
};

/// Throws DomainError when the site lists have inconsistent lengths or arities.
void validate_state(const YBMap& map, const StaircaseState& s);

CMatrix monodromy(const YBMap& map, const StaircaseState& s, Complex zeta);

/// Characteristic-polynomial coefficients of T(z) at each of kSampleZetas.
std::vector<CharPolyCoeffs> monodromy_spectrum(const YBMap& map, const StaircaseState& s);

/// Per sampled zeta, prod_i ||L(y_i; b_i)||_inf ||L(x_i; a_i)||_inf: the magnitude at which
/// the monodromy entries are formed, before any cancellation.
std::vector<double> monodromy_scale(const YBMap& map, const StaircaseState& s);

/// max coefficient change between two spectra. Coefficient i of an n x n spectrum at sample k
/// is compared against 1 + |f_i| + scale[k]^(n-i); an empty scale drops the last term.
double spectrum_drift(const std::vector<CharPolyCoeffs>& got,
                      const std::vector<CharPolyCoeffs>& want,
                      const std::vector<double>& scale = {});

StaircaseState transfer_step(const YBMap& map, const StaircaseState& s);

/// Integrals of the 1-periodic staircase for the Adler-Yamilov map:
///   J1 = a1 b1 / a3 x1 x2 + a1 b1 / b3 y1 y2,
///   J2 = x2 y1 + x1 y2 + a1 b1 / (a3 b3) (a2 + x1 x2)(b2 + y1 y2).
std::array<Complex, 2> integrals_ay(const CVector& x, const CVector& y, const CVector& a,
                                    const CVector& b);

/// Exact gradients with respect to (x1, x2, y1, y2); column k is grad J_{k+1}.
CMatrix integrals_ay_gradient(const CVector& x, const CVector& y, const CVector& a,
                              const CVector& b);

/// J1 or J2 (which = 1, 2) as an observable on (x1, x2, y1, y2).
Observable ay_integral_observable(int which, const CVector& a, const CVector& b);

struct EvolveOptions {
  std::size_t steps = 100;
  std::size_t trajectory_cap = 10000;  ///< stored states; drift statistics continue past it
};

struct DriftReport {
  std::size_t steps = 0;            ///< completed steps
  double max_coeff_drift = 0.0;     ///< monodromy spectrum vs the initial state, see spectrum_drift
  std::optional<double> j1_drift;   ///< 1-periodic Adler-Yamilov staircases only
  std::optional<double> j2_drift;
  double slope = 0.0;               ///< least-squares slope of drift against step
  double max_coord = 0.0;           ///< largest coordinate modulus met along the orbit
  std::optional<std::size_t> pole_step;  ///< step at which a pole stopped the run
  std::string pole_message;
  std::vector<StaircaseState> trajectory;  ///< initial state first
  std::vector<double> drift_history;       ///< per completed step
};

DriftReport transfer_evolve(const YBMap& map, const StaircaseState& initial,
                            const EvolveOptions& opt = {});

/// Independent trajectories evolved concurrently.
std::vector<DriftReport> evolve_many(const YBMap& map, const std::vector<StaircaseState>& states,
                                     const EvolveOptions& opt = {}, unsigned threads = 0);

/// Random 1-periodic (or m-periodic) staircase with one parameter pair for all sites.
StaircaseState random_staircase(const YBMap& map, Rng& rng, std::size_t period = 1);

/// CSV rows "step,site,coord,re,im"; sites are named x1..xm, y1..ym.
void write_trajectory_csv(std::ostream& os, const YBMap& map, const DriftReport& report);

/// {"schema", "steps", "max_coeff_drift", "j1_drift", "j2_drift", "slope", "max_coord",
/// "pole_step"}.
Json drift_report_json(const DriftReport& report);

}  // namespace ybmaps
