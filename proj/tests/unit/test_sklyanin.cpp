#include <doctest.h>

#include "../support.hpp"
#include "ybmaps/errors.hpp"
#include "ybmaps/maps_3x3.hpp"
#include "ybmaps/sklyanin.hpp"

using namespace ybmaps;

namespace {

Observable char_poly_observable(Eigen::Index n, const CMatrix& a, std::size_t k) {
  return {n * n, [=](const CVector& p) { return char_poly_coeffs(unflatten(p, n), a)[k]; }, {}};
}

std::vector<CVector> random_points(Rng& rng, Eigen::Index dim, int count) {
  std::vector<CVector> pts;
  for (int s = 0; s < count; ++s) {
    CVector p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) p(i) = uniform_complex(rng, -1.0, 1.0);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_SUITE("sklyanin") {
  TEST_CASE("2x2 structure with A = I") {
    CVector x(4);
    x << 0.3, -1.1, 0.7, 2.0;
    const CMatrix j = sklyanin_2x2(CMatrix::Identity(2, 2))(x);
    CHECK(j(0, 1) == -x(1));
    CHECK(j(0, 2) == x(2));
    CHECK(j(0, 3) == Complex{});
    CHECK(j(1, 2) == x(3) - x(0));
    CHECK(j(1, 3) == -x(1));
    CHECK(j(2, 3) == x(2));
    CHECK(max_abs(CMatrix(j + j.transpose())) == 0.0);
  }

  TEST_CASE("2x2 closed forms agree with the general structure") {
    Rng rng = make_rng(31);
    for (int s = 0; s < 100; ++s) {
      const CMatrix a = random_matrix(rng, 2, -1.0, 1.0);
      const CVector x = flatten(random_matrix(rng, 2, -1.0, 1.0));
      const CMatrix j = sklyanin_2x2(a)(x);
      CHECK(std::abs(j(0, 1) - (-x(1) * a(0, 0) + x(0) * a(0, 1))) <= 1e-15);
      CHECK(max_abs(CMatrix(j - sklyanin_structure(a)(x))) <= 1e-15);
      CHECK(max_abs(CMatrix(j + j.transpose())) == 0.0);
    }
  }

  TEST_CASE("3x3 identity structure") {
    Rng rng = make_rng(32);
    const CVector x = flatten(random_matrix(rng, 3, -1.0, 1.0));
    const CMatrix j = sklyanin_3x3_identity()(x);
    CHECK(j(0, 0) == Complex{});
    CHECK(std::abs(j(1, 3) - (x(4) - x(0))) <= 1e-15);
    CHECK(max_abs(CMatrix(j - sklyanin_structure(CMatrix::Identity(3, 3))(x))) <= 1e-15);
    CHECK(numeric_rank(j) == 6);
  }

  TEST_CASE("the printed 3x3 display is not antisymmetric") {
    Rng rng = make_rng(33);
    const CVector x = flatten(random_matrix(rng, 3, -1.0, 1.0));
    const CMatrix p = sklyanin_3x3_printed(x);
    CHECK(max_abs(CMatrix(p + p.transpose())) > 1e-3);
    CHECK_THROWS_AS(sklyanin_3x3_printed(CVector::Zero(4)), Error);
  }

  TEST_CASE("Jacobi identity") {
    Rng rng = make_rng(34);
    for (int s = 0; s < 5; ++s) {
      const CMatrix a = random_matrix(rng, 2, -1.0, 1.0);
      CHECK(jacobi_residual(sklyanin_2x2(a), flatten(random_matrix(rng, 2, -1.0, 1.0))) <= 1e-7);
      CHECK(jacobi_residual(sklyanin_3x3_identity(), flatten(random_matrix(rng, 3, -1.0, 1.0))) <=
            1e-7);
    }
    CHECK(jacobi_residual(reduced_bracket_q(), random_points(rng, 4, 1)[0]) <= 1e-7);
  }

  TEST_CASE("brackets and Casimirs of the 2x2 structure") {
    Rng rng = make_rng(35);
    const CMatrix a = random_matrix(rng, 2, -1.0, 1.0);
    const PoissonStructure j = sklyanin_2x2(a);
    const auto pts = random_points(rng, 4, 50);
    const Observable f0{4, [](const CVector& p) { return det(unflatten(p, 2)); }, {}};
    const Observable f1{4,
                        [&](const CVector& p) {
                          return a(1, 1) * p(0) - a(1, 0) * p(1) - a(0, 1) * p(2) +
                                 a(0, 0) * p(3);
                        },
                        {}};
    CHECK(std::abs(bracket(j, f0, f0, pts[0])) <= 1e-12);
    CHECK(std::abs(bracket(j, f0, coordinate(4, 0), pts[1])) <= 1e-8);
    CHECK(casimir_check(j, f0, pts) <= 1e-8);
    CHECK(casimir_check(j, f1, pts) <= 1e-8);
    const Observable f1_generic = char_poly_observable(2, a, 1);
    CHECK(std::abs(f1.value(pts[2]) - f1_generic.value(pts[2])) <= 1e-14);
    // x_11 is not a Casimir.
    CHECK(casimir_check(j, coordinate(4, 0), pts) > 1e-3);
  }

  TEST_CASE("exact and finite-difference gradients agree") {
    Rng rng = make_rng(36);
    const CVector p = random_points(rng, 3, 1)[0];
    const Observable f{3, [](const CVector& q) { return q(0) * q(1) * q(1) + std::exp(q(2)); },
                       [](const CVector& q) {
                         CVector g(3);
                         g << q(1) * q(1), 2.0 * q(0) * q(1), std::exp(q(2));
                         return g;
                       }};
    CHECK(max_abs(CVector(fd_gradient(f.value, p) - f.grad(p))) <= 1e-8);
  }

  TEST_CASE("circle-stencil Jacobian") {
    Rng rng = make_rng(37);
    const CVector p = random_points(rng, 2, 1)[0];
    const VectorMap f = [](const CVector& q) {
      CVector out(2);
      out << q(0) * q(0) * q(1), 1.0 / (2.0 + q(0)) + q(1);
      return out;
    };
    CMatrix want(2, 2);
    want << 2.0 * p(0) * p(1), p(0) * p(0), -1.0 / ((2.0 + p(0)) * (2.0 + p(0))), 1.0;
    CHECK(max_abs(CMatrix(fd_jacobian(f, p, 1e-3) - want)) <= 1e-12);
  }

  TEST_CASE("Casimirs of the minors-constrained 3x3 structure") {
    Rng rng = make_rng(38);
    const PoissonStructure j = sklyanin_3x3_identity();
    std::vector<CVector> pts;
    double closed_form = 0.0;
    for (int s = 0; s < 20; ++s) {
      std::array<Complex, 6> e{};
      for (auto& v : e) v = annulus_complex(rng, 0.5, 1.5);
      const CMatrix x = complete_minors(e[0], e[1], e[2], e[3], e[4], e[5]);
      pts.push_back(flatten(x));
      const auto f = char_poly_coeffs(x, CMatrix::Identity(3, 3));
      const auto c = constrained_casimirs(e[0], e[1], e[2], e[3], e[4], e[5]);
      for (std::size_t k = 0; k < 3; ++k)
        closed_form = std::max(closed_form, std::abs(c[k] - f[k]) / (1.0 + std::abs(f[k])));
    }
    CHECK(closed_form <= 1e-10);
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(casimir_check(j, char_poly_observable(3, CMatrix::Identity(3, 3), k), pts) <= 1e-7);
  }

  TEST_CASE("product and canonical structures") {
    const PoissonStructure c = canonical_structure(2);
    const CMatrix w = c(CVector::Zero(4));
    CHECK(w(0, 2) == Complex{1.0, 0.0});
    CHECK(w(2, 0) == Complex{-1.0, 0.0});
    CHECK(w(0, 1) == Complex{});
    const PoissonStructure planar = planar_structure([](const CVector& p) { return p(0) * p(1); });
    const PoissonStructure prod = product_structure(planar, c);
    CHECK(prod.dim() == 6);
    CVector p(6);
    p << 2.0, 3.0, 0.1, 0.2, 0.3, 0.4;
    const CMatrix m = prod(p);
    CHECK(m(0, 1) == Complex{6.0, 0.0});
    CHECK(m.block(0, 2, 2, 4).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m(2, 4) == Complex{1.0, 0.0});
  }

  TEST_CASE("Poisson map check") {
    Rng rng = make_rng(39);
    const CMatrix a = random_matrix(rng, 2, -1.0, 1.0);
    const PoissonStructure j = sklyanin_2x2(a);
    const VectorMap id = [](const CVector& q) { return q; };
    const CVector p = random_points(rng, 4, 1)[0];
    CHECK(poisson_map_check(id, j, j, p).residual <= 1e-8);

    // Conjugation X -> G X G^{-1} with G commuting with A preserves the bracket.
    CMatrix g = CMatrix::Identity(2, 2);
    g(0, 0) = 1.7;
    CMatrix diag_a = CMatrix::Zero(2, 2);
    diag_a(0, 0) = 0.8;
    diag_a(1, 1) = -1.3;
    const PoissonStructure jd = sklyanin_2x2(diag_a);
    const VectorMap conj = [&](const CVector& q) {
      return flatten(CMatrix(g * unflatten(q, 2) * inverse(g)));
    };
    CHECK(poisson_map_check(conj, jd, jd, p).residual <= 1e-8);

    const PoissonStructure wrong(4, [&](const CVector& q) { return CMatrix(1.01 * j(q)); });
    CHECK(poisson_map_check(id, j, wrong, p).residual >= 1e-3);
  }

  TEST_CASE("numeric rank") {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    CHECK(numeric_rank(m) == 2);
    CHECK(numeric_rank(CMatrix::Identity(4, 4)) == 4);
    CHECK(numeric_rank(CMatrix::Zero(2, 2)) == 0);
  }
}
