#include <doctest.h>

#include "../support.hpp"
#include "ybmaps/errors.hpp"
#include "ybmaps/maps.hpp"
#include "ybmaps/maps_2x2.hpp"

using namespace ybmaps;

namespace {

CVector vec(std::initializer_list<Complex> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Complex c : v) out(i++) = c;
  return out;
}

double gap(const CVector& a, const CVector& b) { return max_abs(CVector(a - b)); }

}  // namespace

TEST_SUITE("maps_2x2") {
  TEST_CASE("Case I embedding") {
    const CMatrix m = case1_embed(1.0, 1.0, vec({1, 1, 0, 1}));
    CMatrix want(2, 2);
    want << 1.0, 1.0, 0.0, 0.0;
    CHECK(max_abs(CMatrix(m - want)) <= 1e-15);

    Rng rng = make_rng(41);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const CVector a = vec({annulus_complex(rng, 0.5, 2.0), annulus_complex(rng, 0.5, 2.0),
                             uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0)});
      const Complex x1 = uniform_complex(rng, -1.0, 1.0), x2 = annulus_complex(rng, 0.5, 1.5);
      const CMatrix e = case1_embed(x1, x2, a);
      CHECK(e(0, 0) == x1);
      CHECK(e(0, 1) == x2);
      worst = std::max({worst, std::abs(det(e) - a(2)),
                        std::abs(a(1) * e(0, 0) + a(0) * e(1, 1) - a(3))});
      const auto f = char_poly_coeffs(e, case_family(CaseKind::I, a));
      worst = std::max({worst, std::abs(f[0] - a(2)), std::abs(f[1] - a(3))});
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("Case II embedding") {
    const CMatrix m = case2_embed(0.0, 1.0, vec({1, 0, 0, 0}));
    CHECK(std::abs(m(1, 0)) <= 1e-15);
    CHECK(std::abs(m(1, 1)) <= 1e-15);

    Rng rng = make_rng(42);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const CVector a = vec({annulus_complex(rng, 0.5, 2.0), uniform_complex(rng, -1.0, 1.0),
                             uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0)});
      const CVector x = vec({uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0)});
      if (std::abs(a(0) * x(1) - a(1) * x(0)) < 1e-2) continue;
      const auto f = char_poly_coeffs(case_embed(CaseKind::II, x, a), case_family(CaseKind::II, a));
      worst = std::max({worst, std::abs(f[0] - a(2)), std::abs(f[1] - a(3))});
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("embedding denominators") {
    for (const auto& [kind, x, a] :
         {std::tuple{CaseKind::I, vec({1.0, 0.0}), vec({1, 1, 1, 1})},
          std::tuple{CaseKind::II, vec({1.0, 1.0}), vec({1, 1, 1, 1})}}) {
      try {
        case_embed(kind, x, a);
        FAIL("zero denominator not detected");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainError);
      }
    }
  }

  TEST_CASE("reduced brackets") {
    const CVector x = vec({0.4, -0.9});
    const CVector a = vec({1.3, 0.6, 0.2, 0.5});
    const CMatrix j1 = make_map("case1")->reduced_structure(a)(x);
    const CMatrix j2 = make_map("case2")->reduced_structure(a)(x);
    CHECK(std::abs(j1(0, 1) - (-a(0) * x(1))) <= 1e-15);
    CHECK(std::abs(j2(0, 1) - (a(1) * x(0) - a(0) * x(1))) <= 1e-15);
    const CVector b = vec({1.3, 0.6, 0.7});
    CHECK(std::abs(make_map("ay")->reduced_structure(b)(x)(0, 1) - b(2)) <= 1e-15);
  }

  TEST_CASE("equal parameters give the trivial involution") {
    Rng rng = make_rng(43);
    for (const std::string id : {"case1", "case2", "ay"}) {
      const auto map = make_map(id);
      for (int s = 0; s < 20; ++s) {
        const CVector a = map->sample_params(rng);
        const CVector x = map->sample_coords(rng, a), y = map->sample_coords(rng, a);
        const auto [u, v] = map->apply(x, a, y, a);
        CHECK(gap(u, y) <= 1e-10);
        CHECK(gap(v, x) <= 1e-10);
      }
    }
    const CVector a = vec({1.0, 2.0, 1.5});
    CHECK(std::abs(ay_q(vec({0.3, 0.5}), a, vec({0.7, -0.2}), a)) == 0.0);
  }

  TEST_CASE("strong Lax equation and recovery for the case maps") {
    Rng rng = make_rng(44);
    for (const auto kind : {CaseKind::I, CaseKind::II}) {
      const auto map = make_map(kind == CaseKind::I ? "case1" : "case2");
      double lax = 0.0, cas = 0.0, rec = 0.0;
      int done = 0;
      while (done < 200) {
        const CVector a = map->sample_params(rng), b = map->sample_params(rng);
        const CVector x = map->sample_coords(rng, a), y = map->sample_coords(rng, b);
        if (map->pole_distance(x, a, y, b) < 1e-3) continue;
        const auto [u, v] = case_map(kind, x, a, y, b);
        lax = std::max(lax, map_lax_residual(*map, x, a, y, b, u, v));
        cas = std::max(cas, map_casimir_drift(*map, x, a, y, b, u, v));
        const auto [xr, vr] = case_map_recover(kind, u, a, y, b);
        rec = std::max(rec, (gap(xr, x) + gap(vr, v)) / (1.0 + max_abs(x) + max_abs(v)));
        ++done;
      }
      CHECK(lax <= 1e-10);
      CHECK(cas <= 1e-10);
      CHECK(rec <= 1e-8);
    }
  }

  TEST_CASE("unit parameters reduce to the Adler-Yamilov map") {
    Rng rng = make_rng(45);
    for (int s = 0; s < 50; ++s) {
      const Complex al = uniform_complex(rng, -1.0, 1.0), be = uniform_complex(rng, -1.0, 1.0);
      const CVector x = vec({uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0)});
      const CVector y = vec({uniform_complex(rng, -1.0, 1.0), uniform_complex(rng, -1.0, 1.0)});
      const Complex p = (al - be) / (1.0 + x(0) * y(1));
      if (std::abs(1.0 + x(0) * y(1)) < 1e-2) continue;
      const auto [u, v] = adler_yamilov_general(x, vec({1.0, al, 1.0}), y, vec({1.0, be, 1.0}));
      CHECK(gap(u, vec({y(0) - p * x(0), y(1)})) <= 1e-12);
      CHECK(gap(v, vec({x(0), x(1) + p * y(1)})) <= 1e-12);
    }
  }

  TEST_CASE("generalized Adler-Yamilov map satisfies the strong Lax equation") {
    const auto map = make_map("ay");
    Rng rng = make_rng(46);
    double worst = 0.0;
    for (int s = 0; s < 500; ++s) {
      const CVector a = map->sample_params(rng), b = map->sample_params(rng);
      const CVector x = map->sample_coords(rng, a), y = map->sample_coords(rng, b);
      if (ay_pole_distance(x, a, y, b) < 1e-3) continue;
      const auto [u, v] = adler_yamilov_general(x, a, y, b);
      worst = std::max(worst, map_lax_residual(*map, x, a, y, b, u, v));
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("Adler-Yamilov pole") {
    const CVector a = vec({1.0, 0.5, 1.0}), b = vec({1.0, 0.2, 1.0});
    try {
      adler_yamilov_general(vec({1.0, 0.0}), a, vec({0.0, -1.0}), b);
      FAIL("pole not detected");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleError);
    }
  }

  TEST_CASE("degenerate limit probe") {
    const CVector x = vec({0.3, 0.5}), a = vec({1.0, 1.0, 1.0});
    const double d1 = ay_limit_distance(x, a, 1e-4), d2 = ay_limit_distance(x, a, 2e-4);
    const double c = d2 / 2e-4;
    CHECK(d1 <= 1.01 * c * 1e-4);
    CHECK(d1 > 0.0);

    const LimitProbe p = ay_limit_probe(x, a, {1e-2, 1e-3, 1e-4});
    CHECK(p.monotone);
    CHECK(p.distance[2] < p.distance[1]);
    CHECK(p.distance[1] < p.distance[0]);
    CHECK(p.order.size() == 2);

    const std::vector<double> h = halving_sequence(1e-2, 1e-5);
    CHECK(h.size() == 10);
    CHECK(h.front() == 1e-2);
    CHECK(h.back() >= 1e-5);
  }

  TEST_CASE("limit Lax matrix at the origin of the leaf") {
    const BinomialPencil l = ay_epsilon_lax(vec({0.0, 0.0}), vec({1.0, 0.0, 1.5}), 1e-3);
    CHECK(std::abs(l.point()(0, 0)) <= 1e-12);
  }

  TEST_CASE("branch cut of the finite-epsilon Lax matrix") {
    try {
      ay_epsilon_lax(vec({0.0, 0.0}), vec({1.0, 5.0, 1.0}), 0.1);
      FAIL("branch cut not detected");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BranchCut);
    }
  }
}
