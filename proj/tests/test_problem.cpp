// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include "ccvp/errors.hpp"
#include "ccvp/fixtures.hpp"
#include "ccvp/problem.hpp"
#include "ccvp/rng.hpp"
#include "oracles.hpp"

using namespace ccvp;

TEST_CASE("evaluation collects values and exact first derivatives") {
  const Problem pr = builtin_example(1).problem;
  const Evaluation ev = pr.evaluate({1.0, 0.0});

  CHECK(ev.f == Vec{0.0, 0.0});
  CHECK(ev.g == Vec{-1.0, 0.0, 0.0});
  CHECK(ev.grad_f.row(0) == Vec{-3.0, -2.0});
  CHECK(ev.grad_f.row(1) == Vec{-1.0, -3.0});
  CHECK(ev.jac_g.row(0) == Vec{-1.0, 0.0});
  CHECK(ev.jac_g.row(1) == Vec{0.0, -1.0});
  CHECK(ev.jac_g.row(2) == Vec{0.0, 1.0});

  const Evaluation ev2 = builtin_example(2).problem.evaluate({0.0, 0.0});
  CHECK(ev2.grad_f.row(0) == Vec{1.0, 0.0});
  CHECK(ev2.jac_g.row(0) == Vec{-1.0, 0.0});
  CHECK(ev2.jac_g.row(1) == Vec{0.0, -1.0});
  CHECK(ev2.jac_g.row(2) == Vec{0.0, 1.0});
}

TEST_CASE("jacobian of the set-only fixture follows the variable point") {
  const Problem pr = builtin_example(3).problem;
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    const Vec x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const Evaluation ev = pr.evaluate(x);
    CHECK(ev.jac_g.row(0) == Vec{1.0, 0.0});
    CHECK(ev.jac_g(1, 0) == doctest::Approx(2.0 * x[0]).epsilon(1e-14));
    CHECK(ev.jac_g(1, 1) == 0.0);
  }
}

TEST_CASE("adjoint action is the transposed jacobian product") {
  const Problem pr = builtin_example(1).problem;
  const Evaluation ev = pr.evaluate({1.5, 0.25});
  const Vec mu{2.0, 3.0, 5.0};
  const Vec w = ev.adjoint_g(mu);
  Vec want(2, 0.0);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t v = 0; v < 2; ++v) want[v] += ev.jac_g(j, v) * mu[j];
  CHECK(w == want);
}

TEST_CASE("feasibility against the cone") {
  const Problem ex1 = builtin_example(1).problem;
  CHECK(ex1.is_feasible({1.0, 0.0}, 0.0));
  for (int k = 2; k <= 32; k *= 2) {
    CHECK_FALSE(ex1.is_feasible({1.0 + 1.0 / k, 0.0}, 0.0));
  }
  const Problem ex2 = builtin_example(2).problem;
  CHECK_FALSE(ex2.is_feasible({-1.0, 0.0}, 0.0));
  CHECK(ex2.is_feasible({-1.0, 0.0}, 1.0 + 1e-12));
}

TEST_CASE("symbolic gradients match finite differences on stored polynomials") {
  std::vector<Problem> problems;
  for (int id = 1; id <= 3; ++id) problems.push_back(builtin_example(id).problem);
  problems.push_back(convex_biobjective_fixture());

  Rng rng(31);
  for (const Problem& pr : problems) {
    std::vector<Polynomial> polys = pr.objectives();
    for (const auto& g : pr.constraints()) polys.push_back(g);
    for (const Polynomial& poly : polys) {
      std::vector<Polynomial> grads;
      for (std::size_t v = 0; v < pr.n(); ++v) grads.push_back(poly.differentiate(v));
      for (int trial = 0; trial < 20; ++trial) {
        Vec x(pr.n());
        for (double& xi : x) xi = rng.uniform(-2.0, 2.0);
        const Vec fd = testing::finite_difference_gradient(poly, x);
        for (std::size_t v = 0; v < pr.n(); ++v) {
          const double sym = grads[v].eval(x);
          CHECK(std::fabs(sym - fd[v]) <= 1e-6 * (1.0 + std::fabs(sym)));
        }
      }
    }
  }
}

TEST_CASE("quadratic problems with psd hessians auto-verify as convex") {
  const std::vector<std::string> vars{"x1", "x2"};
  // The declared flag is off here; detection alone must accept this copy.
  Problem quad(vars,
               {parse_expression("x1^2 + x2^2", vars),
                parse_expression("(x1 - 2)^2 + x2^2", vars)},
               {parse_expression("x1 + x2 - 1", vars)},
               Cone::orthant(1));
  CHECK(quad.auto_verified_convex());
  CHECK(quad.is_convex());

  CHECK_FALSE(builtin_example(1).problem.is_convex());  // cubic constraint

  Problem saddle(vars, {parse_expression("x1^2 - x2^2", vars)},
                 {parse_expression("x1", vars)}, Cone::orthant(1));
  CHECK_FALSE(saddle.is_convex());

  // A quadratic pinned to the zero cone is not an affine equation.
  Problem quad_eq(vars, {parse_expression("x1", vars)},
                  {parse_expression("x1^2", vars)}, Cone::zero(1));
  CHECK_FALSE(quad_eq.auto_verified_convex());

  Problem declared(vars, {parse_expression("x1^4", vars)},
                   {parse_expression("x1", vars)}, Cone::orthant(1),
                   /*declared_convex=*/true);
  CHECK(declared.is_convex());
  CHECK_FALSE(declared.auto_verified_convex());
}

TEST_CASE("hessian evaluation") {
  const Problem quad = convex_biobjective_fixture();
  const Matrix h = quad.objective_hessian({0.5, 0.5}, {0.3, -0.7});
  CHECK(h(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(h(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(h(0, 1) == 0.0);

  const Problem ex1 = builtin_example(1).problem;
  const Matrix hg = ex1.constraint_hessian(2, {1.5, 0.0});
  CHECK(hg(0, 0) == doctest::Approx(3.0).epsilon(1e-13));  // 6(x1-1)
  CHECK(hg(0, 1) == 0.0);
}

TEST_CASE("construction and evaluation guards") {
  const std::vector<std::string> vars{"x1"};
  const Polynomial x = parse_expression("x1", vars);
  CHECK_THROWS_AS(Problem(vars, {x}, {x}, Cone::orthant(2)), UsageError);
  CHECK_THROWS_AS(Problem(vars, {}, {x}, Cone::orthant(1)), UsageError);
  CHECK_THROWS_AS(Problem(vars, {x}, {}, Cone::orthant(1)), UsageError);
  CHECK_THROWS_AS(Problem(vars, {x}, {x}, Cone::orthant(1), false, {{"bad", {1.0, 2.0}}}),
                  UsageError);

  const Problem ok(vars, {x}, {x}, Cone::orthant(1));
  CHECK_THROWS_AS(ok.evaluate({1.0, 2.0}), UsageError);
  CHECK_THROWS_AS(ok.named_point("missing"), UsageError);
}
