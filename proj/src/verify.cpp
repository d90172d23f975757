#include "ybmaps/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "ybmaps/errors.hpp"
#include "ybmaps/lattice.hpp"
#include "ybmaps/maps_2x2.hpp"

namespace ybmaps {

namespace {

constexpr std::size_t kChunk = 50;
constexpr double kCoordBound = 1e3;

struct Tally {
  double max_residual = 0.0;
  std::size_t samples = 0, rejected = 0, failures = 0;

  void record(double r, double tol) {
    ++samples;
    if (!(r <= tol)) ++failures;
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    max_residual = std::max(max_residual, r);
  }
  void merge(const Tally& o) {
    max_residual = std::max(max_residual, o.max_residual);
    samples += o.samples;
    rejected += o.rejected;
    failures += o.failures;
  }
};

using Tallies = std::map<std::string, Tally>;

bool is_inadmissible(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::PoleError:
    case ErrorKind::DomainError:
    case ErrorKind::DegeneratePi:
    case ErrorKind::SingularMatrix:
      return true;
    default:
      return false;
  }
}

bool bounded(const CVector& v) { return v.allFinite() && max_abs(v) <= kCoordBound; }

double relative_distance(const CVector& got, const CVector& want) {
  return max_abs(CVector(got - want)) / (1.0 + max_abs(want));
}

// Runs `body`, filing inadmissible-input errors as rejections and any other library
// error as a failure of `name`.
template <typename F>
void guarded(Tallies& t, const std::string& name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    if (is_inadmissible(e)) {
      ++t[name].rejected;
    } else {
      t[name].record(std::numeric_limits<double>::infinity(), 0.0);
    }
  }
}

void run_sample(const YBMap& map, const VerifyConfig& cfg, Rng& rng, std::size_t index,
                Tallies& t) {
  const VerifyTolerances& tol = cfg.tol;
  Triple tr;
  for (int k = 0; k < 3; ++k) {
    tr.a[k] = map.sample_params(rng);
    tr.x[k] = map.sample_coords(rng, tr.a[k]);
  }

  guarded(t, "yang_baxter", [&] {
    const YBOutcome o = yang_baxter_residual(map, tr);
    if (o.pole_distance < tol.pole_guard) {
      ++t["yang_baxter"].rejected;
      return;
    }
    t["yang_baxter"].record(o.residual, tol.yang_baxter);
  });

  const CVector &x = tr.x[0], &a = tr.a[0], &y = tr.x[1], &b = tr.a[1];
  bool admissible = false;
  CVector u, v;
  try {
    if (map.pole_distance(x, a, y, b) >= tol.pole_guard) {
      std::tie(u, v) = map.apply(x, a, y, b);
      admissible = bounded(u) && bounded(v);
    }
  } catch (const Error& e) {
    if (!is_inadmissible(e)) throw;
  }
  if (!admissible) {
    for (const char* name : {"lax", "casimir"}) ++t[name].rejected;
    return;
  }
  guarded(t, "lax", [&] { t["lax"].record(map_lax_residual(map, x, a, y, b, u, v), tol.lax); });
  guarded(t, "casimir",
          [&] { t["casimir"].record(map_casimir_drift(map, x, a, y, b, u, v), tol.casimir); });

  if (index < cfg.poisson_samples) {
    guarded(t, "poisson", [&] {
      const PoissonCheck pc = map_poisson_check(map, x, a, y, b);
      t["poisson"].record(std::max(pc.residual, pc.residual_half), tol.poisson);
    });
  }

  if (map.id() == "ay") {
    const auto j_before = integrals_ay(x, y, a, b);
    const auto j_after = integrals_ay(u, v, a, b);
    double d = 0.0;
    for (int k = 0; k < 2; ++k) {
      d = std::max(d, std::abs(j_after[k] - j_before[k]) / (1.0 + std::abs(j_before[k])));
    }
    t["invariance"].record(d, tol.invariance);
    const PoissonStructure j = product_structure(map.reduced_structure(a), map.reduced_structure(b));
    const Complex br =
        bracket(j, ay_integral_observable(1, a, b), ay_integral_observable(2, a, b), concat(x, y));
    t["involution"].record(std::abs(br), tol.involution);
  }

  if (map.id() == "case1" || map.id() == "case2") {
    const CaseKind kind = map.id() == "case1" ? CaseKind::I : CaseKind::II;
    guarded(t, "strong_lax_recovery", [&] {
      const auto [x_rec, v_rec] = case_map_recover(kind, u, a, y, b);
      t["strong_lax_recovery"].record(
          std::max(relative_distance(x_rec, x), relative_distance(v_rec, v)), 1e-8);
    });
  }
}

std::vector<std::string> check_names(const std::string& id) {
  std::vector<std::string> names{"yang_baxter", "lax", "casimir", "poisson"};
  if (id == "ay") {
    names.emplace_back("invariance");
    names.emplace_back("involution");
  }
  if (id == "case1" || id == "case2") names.emplace_back("strong_lax_recovery");
  return names;
}

double tolerance_of(const std::string& name, const VerifyTolerances& tol) {
  if (name == "yang_baxter") return tol.yang_baxter;
  if (name == "lax") return tol.lax;
  if (name == "casimir") return tol.casimir;
  if (name == "poisson") return tol.poisson;
  if (name == "invariance") return tol.invariance;
  if (name == "involution") return tol.involution;
  return 1e-8;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& VerifyReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::ConfigError, "no check named " + name);
}

VerifyReport verify_map(const VerifyConfig& cfg) {
  const auto map = make_map(cfg.map_id);
  const VerifyTolerances& tol = cfg.tol;
  for (const double v : {tol.yang_baxter, tol.lax, tol.casimir, tol.poisson, tol.invariance,
                         tol.involution}) {
    if (!(v > 0.0)) throw Error(ErrorKind::ConfigError, "tolerances must be positive");
  }
  if (cfg.samples < 1) throw Error(ErrorKind::ConfigError, "samples must be at least 1");

  const std::size_t chunks = (cfg.samples + kChunk - 1) / kChunk;
  std::vector<Tallies> partial(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      try {
        Rng rng = make_rng(cfg.seed, c);
        const std::size_t end = std::min(cfg.samples, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) run_sample(*map, cfg, rng, i, partial[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(chunks));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Tallies total;
  for (const auto& p : partial) {
    for (const auto& [name, tally] : p) total[name].merge(tally);
  }

  VerifyReport report;
  report.map_id = cfg.map_id;
  report.seed = cfg.seed;
  report.samples = cfg.samples;
  report.tol = tol;
  for (const auto& name : check_names(cfg.map_id)) {
    const Tally& t = total[name];
    CheckResult c;
    c.name = name;
    c.tolerance = tolerance_of(name, tol);
    c.max_residual = t.max_residual;
    c.samples = t.samples;
    c.rejected = t.rejected;
    c.failures = t.failures;
    // At least one admissible sample, and no more rejections than evaluations.
    c.passed = t.failures == 0 && t.samples > 0 && t.rejected <= t.samples;
    report.checks.push_back(c);
  }
  return report;
}

Json tolerances_to_json(const VerifyTolerances& tol) {
  return Json{{"yang_baxter", tol.yang_baxter}, {"lax", tol.lax},
              {"casimir", tol.casimir},         {"poisson", tol.poisson},
              {"invariance", tol.invariance},   {"involution", tol.involution},
              {"pole_guard", tol.pole_guard}};
}

Json report_to_json(const VerifyReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"max_residual", c.max_residual},
                          {"tolerance", c.tolerance},
                          {"samples", c.samples},
                          {"rejected", c.rejected},
                          {"failures", c.failures},
                          {"passed", c.passed}});
  }
  return Json{{"schema", "1"},
              {"map", report.map_id},
              {"seed", report.seed},
              {"samples", report.samples},
              {"tolerances", tolerances_to_json(report.tol)},
              {"checks", checks},
              {"passed", report.passed()}};
}

}  // namespace ybmaps
