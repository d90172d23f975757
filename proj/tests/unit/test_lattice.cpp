#include <doctest.h>

#include <sstream>

#include "../support.hpp"
#include "ybmaps/errors.hpp"
#include "ybmaps/lattice.hpp"

using namespace ybmaps;

namespace {

CVector vec(std::initializer_list<Complex> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Complex c : v) out(i++) = c;
  return out;
}

CVector real_vec(Rng& rng, Eigen::Index n, double lo, double hi) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

StaircaseState ay_state(Rng& rng) {
  const auto map = make_map("ay");
  return random_staircase(*map, rng);
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("monodromy is the ordered product of Lax matrices") {
    const auto map = make_map("case1");
    Rng rng = make_rng(71);
    const StaircaseState s = random_staircase(*map, rng, 2);
    for (const Complex z : kSampleZetas) {
      const CMatrix want = map->lax(s.y[1], s.b[1])(z) * map->lax(s.x[1], s.a[1])(z) *
                           map->lax(s.y[0], s.b[0])(z) * map->lax(s.x[0], s.a[0])(z);
      CHECK(max_abs(CMatrix(monodromy(*map, s, z) - want)) <= 1e-12 * (1.0 + max_abs(want)));
    }
  }

  TEST_CASE("integrals at the origin") {
    const CVector a = vec({1.2, 0.7, 0.9}), b = vec({0.8, -0.4, 1.3});
    const auto j = integrals_ay(CVector::Zero(2), CVector::Zero(2), a, b);
    CHECK(std::abs(j[0]) == 0.0);
    CHECK(std::abs(j[1] - a(0) * b(0) / (a(2) * b(2)) * a(1) * b(1)) <= 1e-15);
  }

  TEST_CASE("monodromy trace carries the integrals") {
    const auto map = make_map("ay");
    Rng rng = make_rng(72);
    StaircaseState s = ay_state(rng);
    StaircaseState t = s;
    t.x[0] = map->sample_coords(rng, s.a[0]);
    t.y[0] = map->sample_coords(rng, s.b[0]);
    auto offsets = [&](const StaircaseState& st) {
      const auto j = integrals_ay(st.x[0], st.y[0], st.a[0], st.b[0]);
      const Complex t0 = monodromy(*map, st, 0.0).trace();
      const Complex tp = monodromy(*map, st, 1.0).trace();
      const Complex tm = monodromy(*map, st, -1.0).trace();
      return std::array<Complex, 2>{(tm - tp) / 2.0 - j[0], t0 - j[1]};
    };
    const auto o1 = offsets(s), o2 = offsets(t);
    CHECK(std::abs(o1[0] - o2[0]) <= 1e-12);
    CHECK(std::abs(o1[1] - o2[1]) <= 1e-12);
  }

  TEST_CASE("integrals are independent and in involution") {
    Rng rng = make_rng(73);
    const auto map = make_map("ay");
    double min_ratio = 1.0, grad_gap = 0.0, involution = 0.0;
    for (int s = 0; s < 100; ++s) {
      const StaircaseState st = ay_state(rng);
      const CVector &x = st.x[0], &y = st.y[0], &a = st.a[0], &b = st.b[0];
      const CMatrix g = integrals_ay_gradient(x, y, a, b);
      const Eigen::JacobiSVD<CMatrix> svd(g);
      min_ratio = std::min(min_ratio, svd.singularValues()(1) / svd.singularValues()(0));
      const CVector p = concat(x, y);
      for (int k = 0; k < 2; ++k) {
        const Observable o = ay_integral_observable(k + 1, a, b);
        grad_gap = std::max(grad_gap, max_abs(CVector(fd_gradient(o.value, p) - g.col(k))) /
                                          (1.0 + max_abs(CVector(g.col(k)))));
      }
      const PoissonStructure j =
          product_structure(map->reduced_structure(a), map->reduced_structure(b));
      involution = std::max(involution, std::abs(bracket(j, ay_integral_observable(1, a, b),
                                                         ay_integral_observable(2, a, b), p)));
    }
    CHECK(min_ratio > 1e-6);
    CHECK(grad_gap <= 1e-8);
    CHECK(involution <= 1e-9);
  }

  TEST_CASE("zero steps leave everything unchanged") {
    Rng rng = make_rng(74);
    const auto map = make_map("ay");
    const DriftReport r = transfer_evolve(*map, ay_state(rng), {0, 10});
    CHECK(r.steps == 0);
    CHECK(r.max_coeff_drift == 0.0);
    CHECK(r.j1_drift.value() == 0.0);
    CHECK(r.j2_drift.value() == 0.0);
    CHECK(r.trajectory.size() == 1);
    CHECK_FALSE(r.pole_step.has_value());
  }

  TEST_CASE("one step preserves the monodromy spectrum for every map") {
    for (const auto& id : map_ids()) {
      CAPTURE(id);
      const auto map = make_map(id);
      Rng rng = make_rng(75);
      double worst = 0.0;
      int done = 0;
      for (int draw = 0; draw < 2000 && done < 50; ++draw) {
        const StaircaseState s = random_staircase(*map, rng, 1 + draw % 2);
        try {
          const StaircaseState n = transfer_step(*map, s);
          auto scale = monodromy_scale(*map, s);
          const auto after = monodromy_scale(*map, n);
          for (std::size_t k = 0; k < scale.size(); ++k) scale[k] = std::max(scale[k], after[k]);
          worst = std::max(worst, spectrum_drift(monodromy_spectrum(*map, n),
                                                 monodromy_spectrum(*map, s), scale));
          ++done;
        } catch (const Error& e) {
          CHECK(e.kind() == ErrorKind::PoleError);
        }
      }
      CHECK(done == 50);
      CHECK(worst <= 1e-9);
    }
  }

  TEST_CASE("Adler-Yamilov integrals over 100 steps") {
    Rng rng = make_rng(76);
    const auto map = make_map("ay");
    std::vector<StaircaseState> states;
    for (int s = 0; s < 10; ++s) states.push_back(ay_state(rng));
    const auto reports = evolve_many(*map, states, {100, 0}, 4);
    REQUIRE(reports.size() == 10);
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const DriftReport& r = reports[k];
      if (r.pole_step) continue;
      CHECK(r.steps == 100);
      CHECK(*r.j1_drift <= 1e-8);
      CHECK(*r.j2_drift <= 1e-8);
      CHECK(r.drift_history.size() == 100);
      CHECK(r.trajectory.empty());
      const DriftReport serial = transfer_evolve(*map, states[k], {100, 0});
      CHECK(serial.max_coeff_drift == r.max_coeff_drift);
    }
  }

  TEST_CASE("bounded 3x3 orbits keep their monodromy spectrum over 100 steps") {
    for (const std::string id : {"yb3", "boussinesq", "gv"}) {
      CAPTURE(id);
      const auto map = make_map(id);
      Rng rng = make_rng(77);
      int bounded = 0;
      double worst = 0.0;
      for (int draw = 0; draw < 200 && bounded < 5; ++draw) {
        StaircaseState s;
        const CVector a = real_vec(rng, map->param_dim(), 0.5, 1.5);
        const CVector b = real_vec(rng, map->param_dim(), 0.5, 1.5);
        s.x = {real_vec(rng, 4, -1.0, 1.0)};
        s.y = {real_vec(rng, 4, -1.0, 1.0)};
        s.a = {a};
        s.b = {b};
        const DriftReport r = transfer_evolve(*map, s, {100, 0});
        if (r.pole_step || r.max_coord > 1e3) continue;
        worst = std::max(worst, r.max_coeff_drift);
        ++bounded;
      }
      CHECK(bounded == 5);
      CHECK(worst <= 1e-8);
    }
  }

  TEST_CASE("state validation") {
    const auto map = make_map("ay");
    Rng rng = make_rng(78);
    StaircaseState s = ay_state(rng);
    s.y.push_back(s.y[0]);
    CHECK_THROWS_AS(validate_state(*map, s), Error);
    StaircaseState t = ay_state(rng);
    t.x[0] = CVector::Zero(3);
    CHECK_THROWS_AS(validate_state(*map, t), Error);
  }

  TEST_CASE("drift scale") {
    const auto map = make_map("ay");
    Rng rng = make_rng(80);
    const StaircaseState s = random_staircase(*map, rng, 2);
    const auto scale = monodromy_scale(*map, s);
    REQUIRE(scale.size() == kSampleZetas.size());
    for (std::size_t k = 0; k < scale.size(); ++k)
      CHECK(norm_inf(monodromy(*map, s, kSampleZetas[k])) <= scale[k] * (1.0 + 1e-12));
    auto spec = monodromy_spectrum(*map, s);
    const auto base = spec;
    spec[0].coeffs[0] += 1e-3;
    CHECK(spectrum_drift(spec, base) == doctest::Approx(1e-3 / (1.0 + std::abs(base[0][0]))));
    CHECK(spectrum_drift(spec, base, scale) ==
          doctest::Approx(1e-3 / (1.0 + std::abs(base[0][0]) + scale[0] * scale[0])));
  }

  TEST_CASE("exports") {
    const auto map = make_map("ay");
    Rng rng = make_rng(79);
    const DriftReport r = transfer_evolve(*map, random_staircase(*map, rng, 2), {5, 3});
    REQUIRE_FALSE(r.pole_step.has_value());
    CHECK(r.trajectory.size() == 3);
    std::ostringstream csv;
    write_trajectory_csv(csv, *map, r);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "step,site,coord,re,im");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3 * 2 * 2 * 2);

    const Json j = drift_report_json(r);
    for (const char* key :
         {"schema", "steps", "max_coeff_drift", "j1_drift", "j2_drift", "slope", "max_coord"})
      CHECK(j.contains(key));
    CHECK(j.at("steps") == 5);
    // The J integrals are defined for 1-periodic staircases only.
    CHECK(j.at("j1_drift").is_null());
  }
}
