// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cmath>

#include "ccvp/certify.hpp"
#include "ccvp/errors.hpp"
#include "ccvp/fixtures.hpp"
#include "ccvp/generate.hpp"
#include "ccvp/rng.hpp"

using namespace ccvp;

namespace {

Problem one_var(const std::string& objective, const std::string& constraint) {
  const std::vector<std::string> vars{"x1"};
  return Problem(vars, {parse_expression(objective, vars)},
                 {parse_expression(constraint, vars)}, Cone::orthant(1));
}

}  // namespace

TEST_CASE("penalty is inactive on the feasible side") {
  const Problem pr = convex_biobjective_fixture();
  const PenaltyEval pe = penalty_value_grad(pr, {0.5, 0.5}, 10.0, {0.0, 0.0});
  CHECK(pe.mu == Vec{0.0});
  CHECK(pe.value == doctest::Approx(2.0));
  CHECK(pe.gradient == Vec{-2.0, 0.0});
}

TEST_CASE("orthant multipliers are the scaled positive parts") {
  const Problem ex1 = builtin_example(1).problem;
  const double k = 5.0;
  const double rho = 7.0;
  const Vec x{1.0 + 1.0 / k, 0.0};
  const PenaltyEval pe = penalty_value_grad(ex1, {0.5, 0.5}, rho, x);
  CHECK(pe.mu[0] == 0.0);
  CHECK(pe.mu[1] == 0.0);
  const double h = x[0] - 1.0;
  CHECK(pe.mu[2] == doctest::Approx(rho * h * h * h).epsilon(1e-13));
}

TEST_CASE("multiplier estimate is orthogonal to the feasible part") {
  const Problem ex1 = builtin_example(1).problem;
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double rho = std::pow(10.0, rng.uniform(0.0, 4.0));
    const PenaltyEval pe = penalty_value_grad(ex1, {0.5, 0.5}, rho, x);
    const Vec g = ex1.eval_constraints(x);
    const Vec neg_part = ex1.cone().project_negative(g);

    CHECK(ex1.cone().polar_contains(pe.mu, 0.0));
    CHECK(std::fabs(dot(pe.mu, neg_part)) <= 1e-10 * (1.0 + rho * dot(g, g)));

    // complementarity identity: <mu, g> = rho * ||polar part||^2 >= 0
    const Vec polar_part = ex1.cone().project_polar(g);
    const double comp = dot(pe.mu, g);
    CHECK(comp >= 0.0);
    CHECK(std::fabs(comp - rho * dot(polar_part, polar_part)) <=
          1e-10 * (1.0 + std::fabs(comp)));
  }
}

TEST_CASE("penalty input guards") {
  const Problem pr = convex_biobjective_fixture();
  CHECK_THROWS_AS(penalty_value_grad(pr, {0.7, 0.7}, 1.0, {0.0, 0.0}), UsageError);
  CHECK_THROWS_AS(penalty_value_grad(pr, {0.5, 0.5}, -1.0, {0.0, 0.0}), UsageError);
  PenaltyConfig bad;
  bad.gamma = 0.5;
  CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("inner descent solves a smooth quadratic") {
  const Problem pr = one_var("(x1 - 2)^2", "-1");
  const Vec x = inner_minimize(pr, {1.0}, 1.0, {0.0}, 1e-8, {});
  CHECK(std::fabs(x[0] - 2.0) <= 1e-6);
}

TEST_CASE("inner descent balances objective against the penalty wall") {
  // minimizer of x + 5 max(0, -x)^2 sits where 1 = 10(-x)
  const Problem pr = one_var("x1", "-x1");
  const Vec x = inner_minimize(pr, {1.0}, 10.0, {1.0}, 1e-10, {});
  CHECK(std::fabs(x[0] + 0.1) <= 1e-6);
}

TEST_CASE("inner descent never increases the penalty value") {
  const Problem ex1 = builtin_example(1).problem;
  const Vec start{3.0, 2.5};
  const double before = penalty_value_grad(ex1, {0.5, 0.5}, 100.0, start).value;
  const Vec x = inner_minimize(ex1, {0.5, 0.5}, 100.0, start, 1e-8, {});
  const double after = penalty_value_grad(ex1, {0.5, 0.5}, 100.0, x).value;
  CHECK(after <= before);
}

TEST_CASE("generated certificate on the convex fixture pins the analytic limit") {
  const Problem pr = convex_biobjective_fixture();
  const AkktCertificate cert = generate_akkt(pr, {0.5, 0.5}, {0.0, 0.0});
  // weighted-sum minimizer (1, 0) sits exactly on the constraint boundary
  CHECK(norm2(sub(cert.limit, {1.0, 0.0})) <= 1e-9);

  const AkktReport rep = verify_akkt_certificate(pr, cert);
  CHECK(rep.converged_a0);
  CHECK(rep.converged_a1);
  CHECK(rep.converged_a2);
  CHECK(rep.bakkt);
  for (const auto& st : cert.steps) CHECK(pr.cone().polar_contains(st.mu, 0.0));
}

TEST_CASE("strictly feasible problems emit zero multipliers") {
  const Problem pr = one_var("(x1 - 2)^2", "-1");
  const AkktCertificate cert = generate_akkt(pr, {1.0}, {5.0});
  CHECK(std::fabs(cert.limit[0] - 2.0) <= 1e-7);
  for (const auto& st : cert.steps) CHECK(st.mu == Vec{0.0});
}

TEST_CASE("generation approaches the ray fixture from the infeasible side") {
  // the penalty path satisfies 1 = ρ·(-x1) exactly, so the iterates are
  // infeasible by 1/ρ_k while the multiplier estimate is pinned at (1, 0, 0)
  const Problem ex2 = builtin_example(2).problem;
  const AkktCertificate cert = generate_akkt(ex2, {1.0}, {1.0, 1.0});
  CHECK(cert.limit[0] < 0.0);
  CHECK(std::fabs(cert.limit[0] + 1e-11) <= 1e-13);
  CHECK(cert.limit[1] == 0.0);

  const AkktReport rep = verify_akkt_certificate(ex2, cert);
  CHECK(rep.akkt_verified());
  CHECK(rep.bakkt);
  CHECK(rep.tail_mu_norm_sup == doctest::Approx(1.0).epsilon(1e-9));

  // bounded multipliers leave an exact multiplier at the (near-feasible) limit
  const KktSearchResult res = search_kkt_multipliers(ex2, cert.limit, 1e-6);
  CHECK(res.kkt_holds);
}

TEST_CASE("diverging multipliers emerge where no exact multiplier exists") {
  const Problem ex1 = builtin_example(1).problem;
  const AkktCertificate cert = generate_akkt(ex1, {0.5, 0.5}, {1.2, 0.1});
  REQUIRE(cert.steps.size() == 12);
  CHECK(norm2(sub(cert.limit, {1.0, 0.0})) <= 0.01);

  std::vector<double> norms;
  for (const auto& st : cert.steps) norms.push_back(norm2(st.mu));
  for (std::size_t k = norms.size() - 3; k < norms.size(); ++k)
    CHECK(norms[k] > norms[k - 1]);
  CHECK_FALSE(check_bakkt(ex1, cert, 1e6));
}

TEST_CASE("generation from the origin crosses the flat region and still converges") {
  // at the origin the weighted objective is linear and no penalty is active,
  // so the curvature-free start must fall through to gradient steps
  const Problem ex1 = builtin_example(1).problem;
  const AkktCertificate cert = generate_akkt(ex1, {0.5, 0.5}, {0.0, 0.0});
  CHECK(norm2(sub(cert.limit, {1.0, 0.0})) <= 0.01);
  CHECK_FALSE(check_bakkt(ex1, cert, 1e6));
}

TEST_CASE("generation is deterministic") {
  const Problem ex1 = builtin_example(1).problem;
  const AkktCertificate a = generate_akkt(ex1, {0.5, 0.5}, {1.2, 0.1});
  const AkktCertificate b = generate_akkt(ex1, {0.5, 0.5}, {1.2, 0.1});
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    CHECK(a.steps[k].x == b.steps[k].x);
    CHECK(a.steps[k].mu == b.steps[k].mu);
  }
}

TEST_CASE("second-order cones run through the gradient-only path") {
  const std::vector<std::string> vars{"x1"};
  const Problem pr(vars, {parse_expression("(x1 - 5)^2", vars)},
                   {parse_expression("-2", vars), parse_expression("x1", vars)},
                   Cone::second_order(2));
  const AkktCertificate cert = generate_akkt(pr, {1.0}, {0.0});
  CHECK(std::fabs(cert.limit[0] - 2.0) <= 1e-3);
  const AkktReport rep = verify_akkt_certificate(pr, cert, 1e-3);
  CHECK(rep.converged_a0);
  CHECK(rep.converged_a1);
  CHECK(rep.converged_a2);
  CHECK(rep.bakkt);
}

TEST_CASE("runaway objectives raise a numerical error") {
  const Problem pr = one_var("-x1^4", "-1");
  CHECK_THROWS_AS(generate_akkt(pr, {1.0}, {2.0}), NumericalError);
}

TEST_CASE("generator input guards") {
  const Problem pr = convex_biobjective_fixture();
  CHECK_THROWS_AS(generate_akkt(pr, {0.7, 0.7}, {0.0, 0.0}), UsageError);
  CHECK_THROWS_AS(generate_akkt(pr, {0.5, 0.5}, {0.0}), UsageError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(generate_akkt(pr, {0.5, 0.5}, {nan, 0.0}), UsageError);
}
