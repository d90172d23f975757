#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ybmaps/errors.hpp"
#include "ybmaps/lattice.hpp"
#include "ybmaps/maps.hpp"
#include "ybmaps/maps_3x3.hpp"
#include "ybmaps/verify.hpp"

namespace ybcli {

using ybmaps::CVector;
using ybmaps::Error;
using ybmaps::ErrorKind;
using ybmaps::Json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

std::string iso_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

template <typename T>
T field(const Json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception&) {
    config_error(std::string("field '") + key + "' has the wrong type");
  }
}

std::string map_id(const Json& doc) {
  if (!doc.contains("map")) config_error("config needs a 'map' id");
  return field<std::string>(doc, "map", "");
}

CVector vector_field(const Json& doc, const char* key) {
  if (!doc.contains(key)) config_error(std::string("config needs '") + key + "'");
  try {
    return ybmaps::vector_from_json(doc.at(key));
  } catch (const Json::exception&) {
    config_error(std::string("field '") + key + "' is not a vector");
  }
}

void require_size(const CVector& v, Eigen::Index n, const char* key) {
  if (v.size() != n) {
    config_error(std::string("'") + key + "' needs " + std::to_string(n) + " entries, got " +
                 std::to_string(v.size()));
  }
}

ybmaps::VerifyTolerances tolerances(const Json& doc) {
  ybmaps::VerifyTolerances tol;
  if (!doc.contains("tolerances")) return tol;
  const Json& t = doc.at("tolerances");
  if (!t.is_object()) config_error("'tolerances' must be an object");
  for (const auto& [key, value] : t.items()) {
    if (!value.is_number()) config_error("tolerance '" + key + "' must be a number");
    const double v = value.get<double>();
    if (!(v > 0.0)) config_error("tolerance '" + key + "' must be positive");
    if (key == "yang_baxter") tol.yang_baxter = v;
    else if (key == "lax") tol.lax = v;
    else if (key == "casimir") tol.casimir = v;
    else if (key == "poisson") tol.poisson = v;
    else if (key == "invariance") tol.invariance = v;
    else if (key == "involution") tol.involution = v;
    else if (key == "pole_guard") tol.pole_guard = v;
    else config_error("unknown tolerance '" + key + "'");
  }
  return tol;
}

std::size_t positive_count(const Json& doc, const char* key, std::size_t fallback) {
  const auto n = field<long long>(doc, key, static_cast<long long>(fallback));
  if (n < 1) config_error(std::string("'") + key + "' must be at least 1");
  return static_cast<std::size_t>(n);
}

double positive_number(const Json& doc, const char* key, double fallback) {
  const double v = field<double>(doc, key, fallback);
  if (!(v > 0.0)) config_error(std::string("'") + key + "' must be positive");
  return v;
}

void finish(Json& report, const RunConfig& cfg) {
  if (cfg.stamp) report["timestamp"] = iso_now();
}

std::vector<CVector> site_list(const Json& state, const char* key) {
  if (!state.contains(key) || !state.at(key).is_array()) {
    config_error(std::string("state needs an array '") + key + "'");
  }
  std::vector<CVector> out;
  for (const Json& v : state.at(key)) {
    try {
      out.push_back(ybmaps::vector_from_json(v));
    } catch (const Json::exception&) {
      config_error(std::string("state '") + key + "' holds a non-vector entry");
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 0.0;
  std::size_t n = 0;

  double at(std::size_t i) const {
    return n < 2 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
};

Axis axis(const Json& grid, const char* key) {
  Axis a;
  if (!grid.contains(key)) return a;
  const Json& j = grid.at(key);
  a.lo = field<double>(j, "min", 0.0);
  a.hi = field<double>(j, "max", 0.0);
  const auto n = field<long long>(j, "n", 0);
  if (n < 0) config_error(std::string("grid axis '") + key + "' needs n >= 0");
  a.n = static_cast<std::size_t>(n);
  return a;
}

std::vector<double> alpha_list(const Json& doc, const char* key) {
  std::vector<double> out;
  if (!doc.contains(key)) return out;
  if (!doc.at(key).is_array()) config_error(std::string("'") + key + "' must be an array");
  for (const Json& v : doc.at(key)) {
    if (!v.is_number()) config_error(std::string("'") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

CVector real_leaf_coords(ybmaps::Rng& rng) {
  CVector x(4);
  x << ybmaps::uniform(rng, -1.0, 1.0), ybmaps::uniform(rng, -1.0, 1.0),
      ybmaps::uniform(rng, 0.3, 1.5), ybmaps::uniform(rng, 0.3, 1.5);
  return x;
}

int exit_for(ErrorKind kind) {
  return kind == ErrorKind::ConfigError ? kConfigError : kNumericalError;
}

Json error_document(const RunConfig& cfg, const std::string& kind, const std::string& message) {
  Json j{{"schema", "1"}, {"command", cfg.command}, {"error", {{"kind", kind}, {"message", message}}}};
  if (cfg.doc.contains("map") && cfg.doc.at("map").is_string()) j["map"] = cfg.doc.at("map");
  if (cfg.stamp) j["timestamp"] = iso_now();
  return j;
}

}  // namespace

RunConfig make_config(const std::string& command, const Json& doc,
                      std::optional<std::uint64_t> seed, std::optional<std::size_t> samples,
                      std::optional<std::string> map, std::optional<std::string> out) {
  if (!doc.is_object()) config_error("config must be a JSON object");
  RunConfig cfg;
  cfg.command = command;
  cfg.doc = doc;
  if (seed) cfg.doc["seed"] = *seed;
  if (samples) cfg.doc["samples"] = *samples;
  if (map) cfg.doc["map"] = *map;
  if (out) cfg.doc["out"] = *out;
  if (cfg.doc.contains("out")) cfg.out = field<std::string>(cfg.doc, "out", "");
  return cfg;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  ybmaps::VerifyConfig vc;
  vc.map_id = map_id(cfg.doc);
  vc.seed = field<std::uint64_t>(cfg.doc, "seed", vc.seed);
  vc.samples = positive_count(cfg.doc, "samples", vc.samples);
  vc.poisson_samples = positive_count(cfg.doc, "poisson_samples", vc.poisson_samples);
  vc.threads = field<unsigned>(cfg.doc, "threads", 0u);
  vc.tol = tolerances(cfg.doc);
  ybmaps::make_map(vc.map_id);

  const ybmaps::VerifyReport report = ybmaps::verify_map(vc);
  Json j = ybmaps::report_to_json(report);
  j["command"] = "verify";
  finish(j, cfg);
  out << j.dump(2) << '\n';
  return report.passed() ? kPass : kFail;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  const std::string id = map_id(cfg.doc);
  const auto map = ybmaps::make_map(id);
  const CVector x = vector_field(cfg.doc, "x");
  const CVector a = vector_field(cfg.doc, "a");
  const CVector y = vector_field(cfg.doc, "y");
  const CVector b = vector_field(cfg.doc, "b");
  require_size(x, map->coord_dim(), "x");
  require_size(y, map->coord_dim(), "y");
  require_size(a, map->param_dim(), "a");
  require_size(b, map->param_dim(), "b");

  const auto [u, v] = map->apply(x, a, y, b);
  Json j{{"schema", "1"},
         {"command", "evaluate"},
         {"map", id},
         {"input",
          {{"x", ybmaps::vector_to_json(x)},
           {"a", ybmaps::vector_to_json(a)},
           {"y", ybmaps::vector_to_json(y)},
           {"b", ybmaps::vector_to_json(b)}}},
         {"output",
          {{"u", ybmaps::vector_to_json(u)},
           {"a", ybmaps::vector_to_json(a)},
           {"v", ybmaps::vector_to_json(v)},
           {"b", ybmaps::vector_to_json(b)}}}};
  finish(j, cfg);
  out << j.dump(2) << '\n';
  return kPass;
}

int cmd_lattice(const RunConfig& cfg, std::ostream& out) {
  const std::string id = map_id(cfg.doc);
  const auto map = ybmaps::make_map(id);
  ybmaps::EvolveOptions opt;
  opt.steps = static_cast<std::size_t>(field<long long>(cfg.doc, "steps", 100));
  if (field<long long>(cfg.doc, "steps", 100) < 0) config_error("'steps' must be nonnegative");
  opt.trajectory_cap = static_cast<std::size_t>(
      std::max(0LL, field<long long>(cfg.doc, "trajectory_cap", 10000)));
  const double tol = positive_number(cfg.doc, "tolerance", 1e-8);

  ybmaps::StaircaseState state;
  Json j{{"schema", "1"}, {"command", "lattice"}, {"map", id}, {"tolerance", tol}};
  if (cfg.doc.contains("state")) {
    const Json& s = cfg.doc.at("state");
    state.x = site_list(s, "x");
    state.a = site_list(s, "a");
    state.y = site_list(s, "y");
    state.b = site_list(s, "b");
    try {
      ybmaps::validate_state(*map, state);
    } catch (const Error& e) {
      config_error(e.what());
    }
  } else {
    const auto seed = field<std::uint64_t>(cfg.doc, "seed", 42);
    ybmaps::Rng rng = ybmaps::make_rng(seed);
    state = ybmaps::random_staircase(*map, rng, positive_count(cfg.doc, "period", 1));
    j["seed"] = seed;
  }

  const ybmaps::DriftReport r = ybmaps::transfer_evolve(*map, state, opt);
  j.update(ybmaps::drift_report_json(r));
  const double worst =
      std::max({r.max_coeff_drift, r.j1_drift.value_or(0.0), r.j2_drift.value_or(0.0)});
  const bool passed = !r.pole_step && worst <= tol;
  j["passed"] = passed;

  std::optional<std::string> csv;
  if (cfg.doc.contains("csv")) {
    csv = field<std::string>(cfg.doc, "csv", "");
  } else if (cfg.out) {
    std::string stem = *cfg.out;
    if (stem.size() > 5 && stem.ends_with(".json")) stem.resize(stem.size() - 5);
    csv = stem + ".csv";
  }
  if (csv) {
    std::ofstream f(*csv);
    if (!f) config_error("cannot write " + *csv);
    ybmaps::write_trajectory_csv(f, *map, r);
    j["csv"] = *csv;
  }
  finish(j, cfg);
  out << j.dump(2) << '\n';
  if (r.pole_step) return kNumericalError;
  return passed ? kPass : kFail;
}

int cmd_surface_scan(const RunConfig& cfg, std::ostream& out) {
  const double tol = positive_number(cfg.doc, "tolerance", 1e-9);
  const auto leaf_samples =
      static_cast<std::size_t>(std::max(0LL, field<long long>(cfg.doc, "leaf_samples",
                                                               field<long long>(cfg.doc, "samples", 0))));
  ybmaps::Rng rng = ybmaps::make_rng(field<std::uint64_t>(cfg.doc, "seed", 42));
  const Json grid = cfg.doc.contains("grid") ? cfg.doc.at("grid") : Json::object();
  if (!grid.is_object()) config_error("'grid' must be an object");
  const Axis c1 = axis(grid, "c1");
  const Axis c2 = axis(grid, "c2");
  const auto boussinesq = alpha_list(cfg.doc, "boussinesq");
  const auto gv = alpha_list(cfg.doc, "gv");

  out << "alpha0,alpha1,alpha2,residual\n";
  out << std::setprecision(17);
  bool ok = true;
  auto emit = [&](const ybmaps::BinomialPencil& lax) {
    const auto f = ybmaps::char_poly_coeffs(lax);
    const double res = ybmaps::discriminant_relative(f[0], f[1], f[2]);
    ok = ok && res <= tol;
    out << f[0].real() << ',' << f[1].real() << ',' << f[2].real() << ',' << res << '\n';
  };
  for (std::size_t i = 0; i < leaf_samples; ++i) {
    CVector c(2);
    c << ybmaps::uniform(rng, -2.0, 2.0), ybmaps::uniform(rng, -2.0, 2.0);
    emit(ybmaps::leaf_lax_3x3(real_leaf_coords(rng), c));
  }
  for (std::size_t i = 0; i < c1.n; ++i) {
    for (std::size_t k = 0; k < c2.n; ++k) {
      CVector c(2);
      c << c1.at(i), c2.at(k);
      emit(ybmaps::leaf_lax_3x3(real_leaf_coords(rng), c));
    }
  }
  for (const double a : boussinesq) emit(ybmaps::boussinesq_lax(real_leaf_coords(rng), a));
  for (const double a : gv) emit(ybmaps::gv_lax(real_leaf_coords(rng), a));
  return ok ? kPass : kFail;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.out) {
    file.open(*cfg.out);
    if (!file) {
      err << "ConfigError: cannot write " << *cfg.out << '\n';
      return kConfigError;
    }
    sink = &file;
  }
  // Buffer so that a failing command leaves only the error document behind.
  std::ostringstream body;
  int code = kPass;
  try {
    if (cfg.command == "verify") code = cmd_verify(cfg, body);
    else if (cfg.command == "evaluate") code = cmd_evaluate(cfg, body);
    else if (cfg.command == "lattice") code = cmd_lattice(cfg, body);
    else if (cfg.command == "surface-scan") code = cmd_surface_scan(cfg, body);
    else config_error("unknown command " + cfg.command);
  } catch (const Error& e) {
    const std::string kind(ybmaps::to_string(e.kind()));
    *sink << error_document(cfg, kind, e.what()).dump(2) << '\n';
    err << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const Json::exception& e) {
    *sink << error_document(cfg, "ConfigError", e.what()).dump(2) << '\n';
    err << "ConfigError: " << e.what() << '\n';
    return kConfigError;
  }
  *sink << body.str();
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Parametric Yang-Baxter maps: verification, evaluation, lattice dynamics"};
  app.require_subcommand(1);
  struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::string> map;
    std::optional<std::string> out;
  } flags;
  for (const char* name : {"verify", "evaluate", "lattice", "surface-scan"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--samples", flags.samples, "sample count");
    sub->add_option("--map", flags.map, "map id");
    sub->add_option("--out", flags.out, "output path (stdout when absent)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Json doc = Json::object();
  try {
    if (!flags.config.empty()) {
      std::ifstream f(flags.config);
      if (!f) throw Error(ErrorKind::ConfigError, "cannot read " + flags.config);
      doc = Json::parse(f);
    }
    const RunConfig cfg = make_config(command, doc, flags.seed, flags.samples, flags.map, flags.out);
    return run(cfg, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "ConfigError: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace ybcli
