#include "ybmaps/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ybmaps/errors.hpp"

namespace ybmaps {

namespace {

bool is_ay_cell(const YBMap& map, const StaircaseState& s) {
  return map.id() == "ay" && s.period() == 1;
}

double relative_change(Complex now, Complex then) {
  return std::abs(now - then) / (1.0 + std::abs(then));
}

double state_size(const StaircaseState& s) {
  double m = 0.0;
  for (const auto& c : s.x) m = std::max(m, max_abs(c));
  for (const auto& c : s.y) m = std::max(m, max_abs(c));
  return m;
}

double least_squares_slope(const std::vector<double>& ys) {
  const std::size_t n = ys.size();
  if (n < 2) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1);
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace

void validate_state(const YBMap& map, const StaircaseState& s) {
  const std::size_t m = s.period();
  if (m == 0 || s.a.size() != m || s.y.size() != m || s.b.size() != m) {
    throw Error(ErrorKind::DomainError, "staircase needs m x-sites, m y-sites and their parameters");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (s.x[i].size() != map.coord_dim() || s.y[i].size() != map.coord_dim() ||
        s.a[i].size() != map.param_dim() || s.b[i].size() != map.param_dim()) {
      throw Error(ErrorKind::DomainError, "staircase site arity does not match map " + map.id());
    }
  }
}

CMatrix monodromy(const YBMap& map, const StaircaseState& s, Complex zeta) {
  validate_state(map, s);
  const Eigen::Index n = map.lax(s.x[0], s.a[0]).size();
  CMatrix t = CMatrix::Identity(n, n);
  for (std::size_t i = 0; i < s.period(); ++i) {
    t = map.lax(s.y[i], s.b[i])(zeta) * map.lax(s.x[i], s.a[i])(zeta) * t;
  }
  return t;
}

std::vector<CharPolyCoeffs> monodromy_spectrum(const YBMap& map, const StaircaseState& s) {
  std::vector<CharPolyCoeffs> out;
  out.reserve(kSampleZetas.size());
  for (const Complex z : kSampleZetas) out.push_back(matrix_char_poly(monodromy(map, s, z)));
  return out;
}

std::vector<double> monodromy_scale(const YBMap& map, const StaircaseState& s) {
  validate_state(map, s);
  std::vector<double> out;
  out.reserve(kSampleZetas.size());
  for (const Complex z : kSampleZetas) {
    double prod = 1.0;
    for (std::size_t i = 0; i < s.period(); ++i)
      prod *= norm_inf(map.lax(s.y[i], s.b[i])(z)) * norm_inf(map.lax(s.x[i], s.a[i])(z));
    out.push_back(prod);
  }
  return out;
}

double spectrum_drift(const std::vector<CharPolyCoeffs>& got,
                      const std::vector<CharPolyCoeffs>& want, const std::vector<double>& scale) {
  double drift = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) {
    const std::size_t n = want[k].degree();
    for (std::size_t i = 0; i <= n; ++i) {
      double denom = 1.0 + std::abs(want[k][i]);
      if (!scale.empty()) denom += std::pow(scale[k], static_cast<double>(n - i));
      drift = std::max(drift, std::abs(got[k][i] - want[k][i]) / denom);
    }
  }
  return drift;
}

StaircaseState transfer_step(const YBMap& map, const StaircaseState& s) {
  validate_state(map, s);
  const std::size_t m = s.period();
  StaircaseState next;
  next.x.resize(m);
  next.y.resize(m);
  next.a = s.a;
  next.b.resize(m);
  std::vector<CVector> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto [ui, vi] = map.apply(s.x[i], s.a[i], s.y[i], s.b[i]);
    next.x[i] = std::move(ui);
    v[i] = std::move(vi);
  }
  for (std::size_t i = 0; i < m; ++i) {
    next.y[i] = v[(i + 1) % m];
    next.b[i] = s.b[(i + 1) % m];
  }
  return next;
}

std::array<Complex, 2> integrals_ay(const CVector& x, const CVector& y, const CVector& a,
                                    const CVector& b) {
  const Complex k = a(0) * b(0);
  const Complex j1 = k / a(2) * x(0) * x(1) + k / b(2) * y(0) * y(1);
  const Complex j2 = x(1) * y(0) + x(0) * y(1) +
                     k / (a(2) * b(2)) * (a(1) + x(0) * x(1)) * (b(1) + y(0) * y(1));
  return {j1, j2};
}

CMatrix integrals_ay_gradient(const CVector& x, const CVector& y, const CVector& a,
                              const CVector& b) {
  const Complex k1 = a(0) * b(0) / a(2);
  const Complex k2 = a(0) * b(0) / b(2);
  const Complex k = a(0) * b(0) / (a(2) * b(2));
  const Complex px = a(1) + x(0) * x(1);
  const Complex py = b(1) + y(0) * y(1);
  CMatrix g(4, 2);
  g << k1 * x(1), y(1) + k * x(1) * py,
      k1 * x(0), y(0) + k * x(0) * py,
      k2 * y(1), x(1) + k * px * y(1),
      k2 * y(0), x(0) + k * px * y(0);
  return g;
}

Observable ay_integral_observable(int which, const CVector& a, const CVector& b) {
  if (which != 1 && which != 2) throw Error(ErrorKind::DomainError, "integral index is 1 or 2");
  const std::size_t idx = static_cast<std::size_t>(which - 1);
  Observable o;
  o.dim = 4;
  o.value = [a, b, idx](const CVector& p) {
    return integrals_ay(p.head(2), p.tail(2), a, b)[idx];
  };
  o.gradient = [a, b, idx](const CVector& p) {
    return CVector(integrals_ay_gradient(p.head(2), p.tail(2), a, b).col(static_cast<Eigen::Index>(idx)));
  };
  return o;
}

DriftReport transfer_evolve(const YBMap& map, const StaircaseState& initial,
                            const EvolveOptions& opt) {
  validate_state(map, initial);
  DriftReport r;
  const bool ay = is_ay_cell(map, initial);
  const auto spectrum0 = monodromy_spectrum(map, initial);
  const auto scale0 = monodromy_scale(map, initial);
  std::array<Complex, 2> j0{};
  if (ay) {
    j0 = integrals_ay(initial.x[0], initial.y[0], initial.a[0], initial.b[0]);
    r.j1_drift = 0.0;
    r.j2_drift = 0.0;
  }
  if (opt.trajectory_cap > 0) r.trajectory.push_back(initial);
  StaircaseState state = initial;
  r.max_coord = state_size(state);
  for (std::size_t step = 1; step <= opt.steps; ++step) {
    try {
      state = transfer_step(map, state);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleError && e.kind() != ErrorKind::DomainError &&
          e.kind() != ErrorKind::DegeneratePi && e.kind() != ErrorKind::ToleranceExceeded) {
        throw;
      }
      r.pole_step = step;
      r.pole_message = e.what();
      break;
    }
    r.max_coord = std::max(r.max_coord, state_size(state));
    auto scale = monodromy_scale(map, state);
    for (std::size_t k = 0; k < scale.size(); ++k) scale[k] = std::max(scale[k], scale0[k]);
    const double d = spectrum_drift(monodromy_spectrum(map, state), spectrum0, scale);
    r.max_coeff_drift = std::max(r.max_coeff_drift, d);
    double step_drift = d;
    if (ay) {
      const auto j = integrals_ay(state.x[0], state.y[0], state.a[0], state.b[0]);
      const double d1 = relative_change(j[0], j0[0]);
      const double d2 = relative_change(j[1], j0[1]);
      r.j1_drift = std::max(*r.j1_drift, d1);
      r.j2_drift = std::max(*r.j2_drift, d2);
      step_drift = std::max({step_drift, d1, d2});
    }
    r.drift_history.push_back(step_drift);
    r.steps = step;
    if (r.trajectory.size() < opt.trajectory_cap) r.trajectory.push_back(state);
  }
  r.slope = least_squares_slope(r.drift_history);
  return r;
}

std::vector<DriftReport> evolve_many(const YBMap& map, const std::vector<StaircaseState>& states,
                                     const EvolveOptions& opt, unsigned threads) {
  std::vector<DriftReport> out(states.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, states.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(states.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < states.size(); i = next++) {
      try {
        out[i] = transfer_evolve(map, states[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

StaircaseState random_staircase(const YBMap& map, Rng& rng, std::size_t period) {
  StaircaseState s;
  const CVector a = map.sample_params(rng);
  const CVector b = map.sample_params(rng);
  for (std::size_t i = 0; i < period; ++i) {
    s.a.push_back(a);
    s.b.push_back(b);
    s.x.push_back(map.sample_coords(rng, a));
    s.y.push_back(map.sample_coords(rng, b));
  }
  return s;
}

void write_trajectory_csv(std::ostream& os, const YBMap& map, const DriftReport& report) {
  const auto names = map.coord_names();
  os << "step,site,coord,re,im\n";
  os.precision(17);
  for (std::size_t step = 0; step < report.trajectory.size(); ++step) {
    const StaircaseState& s = report.trajectory[step];
    auto emit = [&](const std::string& site, const CVector& c) {
      for (Eigen::Index k = 0; k < c.size(); ++k) {
        os << step << ',' << site << ',' << names[static_cast<std::size_t>(k)] << ','
           << c(k).real() << ',' << c(k).imag() << '\n';
      }
    };
    for (std::size_t i = 0; i < s.period(); ++i) emit("x" + std::to_string(i + 1), s.x[i]);
    for (std::size_t i = 0; i < s.period(); ++i) emit("y" + std::to_string(i + 1), s.y[i]);
  }
}

Json drift_report_json(const DriftReport& report) {
  Json j;
  j["schema"] = "1";
  j["steps"] = report.steps;
  j["max_coeff_drift"] = report.max_coeff_drift;
  j["j1_drift"] = report.j1_drift ? Json(*report.j1_drift) : Json(nullptr);
  j["j2_drift"] = report.j2_drift ? Json(*report.j2_drift) : Json(nullptr);
  j["slope"] = report.slope;
  j["max_coord"] = report.max_coord;
  j["pole_step"] = report.pole_step ? Json(*report.pole_step) : Json(nullptr);
  if (report.pole_step) j["pole_message"] = report.pole_message;
  return j;
}

}  // namespace ybmaps
