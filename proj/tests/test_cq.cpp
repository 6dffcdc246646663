// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cmath>

#include "ccvp/certify.hpp"
#include "ccvp/cq.hpp"
#include "ccvp/errors.hpp"
#include "ccvp/fixtures.hpp"
#include "ccvp/generate.hpp"
#include "ccvp/rng.hpp"

using namespace ccvp;

namespace {

// Random affine-constraint instances, feasible at the origin by construction,
// with coefficients in {-1, 0, 1} and half the rows active so both outcomes
// of the qualification checks occur often; integer data keeps both checks
// far from their tolerances.
Problem random_orthant_instance(Rng& rng) {
  const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform01() * 3.0) % 3;
  const std::size_t p = 1 + static_cast<std::size_t>(rng.uniform01() * 3.0) % 3;
  std::vector<std::string> vars;
  for (std::size_t v = 0; v < n; ++v) vars.push_back("x" + std::to_string(v + 1));

  std::vector<Polynomial> constraints;
  for (std::size_t j = 0; j < p; ++j) {
    Polynomial g(n);
    for (std::size_t v = 0; v < n; ++v) {
      const double coef = std::floor(rng.uniform(-1.0, 2.0));
      if (coef != 0.0) {
        Polynomial::Exponents e(n, 0);
        e[v] = 1;
        g.add_term(e, coef);
      }
    }
    const double b = rng.uniform01() < 0.5 ? 0.0 : -1.0;
    g.add_term(Polynomial::Exponents(n, 0), b);
    constraints.push_back(g);
  }
  return Problem(vars, {Polynomial::variable(n, 0)}, std::move(constraints),
                 Cone::orthant(p));
}

}  // namespace

TEST_CASE("robinson condition fails on the ray fixture") {
  const Problem ex2 = builtin_example(2).problem;
  const RcqResult r = check_rcq(ex2, {0.0, 0.0});
  CHECK_FALSE(r.holds);
  REQUIRE(r.failing_direction.has_value());
  CHECK(*r.failing_direction == Vec{0.0, -1.0, 0.0});
}

TEST_CASE("robinson condition fails on the zero-cone fixture") {
  const Problem ex3 = builtin_example(3).problem;
  const RcqResult r = check_rcq(ex3, {0.0, 0.0});
  CHECK_FALSE(r.holds);
  REQUIRE(r.failing_direction.has_value());
  CHECK(*r.failing_direction == Vec{0.0, -1.0});
}

TEST_CASE("robinson condition holds at a regular point") {
  const std::vector<std::string> vars{"x1", "x2"};
  const Problem pr(vars, {parse_expression("x1", vars)},
                   {parse_expression("x1 - 1", vars)}, Cone::orthant(1));
  CHECK(check_rcq(pr, {0.0, 0.0}).holds);
}

TEST_CASE("robinson check guards") {
  const Problem ex1 = builtin_example(1).problem;
  CHECK_THROWS_AS(check_rcq(ex1, {5.0, 5.0}), PreconditionError);

  const std::vector<std::string> vars{"x1", "x2"};
  const Problem soc(vars, {parse_expression("x1", vars)},
                    {parse_expression("-2", vars), parse_expression("x1", vars)},
                    Cone::second_order(2));
  CHECK_THROWS_AS(check_rcq(soc, {0.0, 0.0}), UnsupportedError);
}

TEST_CASE("direction lp rejects the ray fixture and accepts a slater point") {
  const Problem ex2 = builtin_example(2).problem;
  const auto r2 = check_mfcq(ex2, {0.0, 0.0});
  REQUIRE(r2.has_value());
  CHECK_FALSE(r2->holds);
  CHECK(r2->slack == doctest::Approx(0.0).epsilon(1e-9));

  const std::vector<std::string> vars{"x1"};
  const Problem slater(vars, {parse_expression("x1", vars)},
                       {parse_expression("x1", vars)}, Cone::orthant(1));
  const auto rs = check_mfcq(slater, {0.0});
  REQUIRE(rs.has_value());
  CHECK(rs->holds);
  REQUIRE(rs->witness_d.has_value());
  const Evaluation ev = slater.evaluate({0.0});
  const double moved = ev.g[0] + dot(ev.jac_g.row(0), *rs->witness_d);
  CHECK(moved < 0.0);
}

TEST_CASE("direction lp is not applicable without cone interior") {
  const Problem ex3 = builtin_example(3).problem;
  CHECK_FALSE(check_mfcq(ex3, {0.0, 0.0}).has_value());
}

TEST_CASE("robinson and mangasarian-fromovitz agree on random orthant instances") {
  Rng rng(555);
  int holds_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Problem pr = random_orthant_instance(rng);
    Vec origin(pr.n(), 0.0);
    const RcqResult rcq = check_rcq(pr, origin);
    const auto mfcq = check_mfcq(pr, origin);
    REQUIRE(mfcq.has_value());
    CHECK(rcq.holds == mfcq->holds);
    if (rcq.holds) ++holds_count;
  }
  // the generator must exercise both outcomes
  CHECK(holds_count >= 5);
  CHECK(holds_count <= 45);
}

TEST_CASE("distance to the zero-complementarity image cone") {
  const Problem ex3 = builtin_example(3).problem;
  CHECK(distance_to_K0(ex3, {0.0, 0.0}, {5.0, 0.0}) <= 1e-9);
  CHECK(distance_to_K0(ex3, {0.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-9));

  const Problem ex1 = builtin_example(1).problem;
  CHECK(distance_to_K0(ex1, {1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(distance_to_K0(ex1, {1.0, 0.0}, {0.0, -7.0}) <= 1e-9);

  // membership: random admissible multipliers map to zero distance
  Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    const Evaluation ev = ex1.evaluate({1.0, 0.0});
    const Vec mu{0.0, rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)};
    CHECK(distance_to_K0(ex1, {1.0, 0.0}, ev.adjoint_g(mu)) <= 1e-9);
  }
}

TEST_CASE("aligned opposite gradients collapse the image cone to a line") {
  const std::vector<std::string> vars{"x1"};
  const Problem pr(vars, {parse_expression("x1", vars)},
                   {parse_expression("x1", vars), parse_expression("-x1", vars)},
                   Cone::orthant(2));
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const double t = rng.uniform(0.0, 1e6);
    const Evaluation ev = pr.evaluate({0.0});
    CHECK(distance_to_K0(pr, {0.0}, ev.adjoint_g({t, t})) <= 1e-9);
  }
}

TEST_CASE("image cone scaling: admissible multipliers scale with the slack") {
  const Problem ex1 = builtin_example(1).problem;
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    Vec x{1.0 + rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
    const Evaluation ev = ex1.evaluate(x);
    Vec mu{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    const double r = std::fabs(dot(mu, ev.g));
    const double alpha = rng.uniform(0.25, 4.0);

    Vec amu = mu;
    for (double& v : amu) v *= alpha;
    CHECK(std::fabs(dot(amu, ev.g)) <= alpha * r * (1.0 + 1e-12) + 1e-300);

    Vec w = ev.adjoint_g(mu);
    Vec aw = ev.adjoint_g(amu);
    for (std::size_t v = 0; v < w.size(); ++v)
      CHECK(std::fabs(aw[v] - alpha * w[v]) <= 1e-12 * (1.0 + std::fabs(aw[v])));
  }
}

TEST_CASE("probe finds no violation on the regular zero-cone fixture") {
  const Problem ex3 = builtin_example(3).problem;
  const ProbeReport rep = probe_akkt_regularity(ex3, {0.0, 0.0});
  CHECK_FALSE(rep.violation);
  CHECK(rep.max_distance <= 1e-9);
  CHECK(rep.samples_tested == 1200);
}

TEST_CASE("probe baseline on the ray fixture stays at zero distance") {
  const Problem ex2 = builtin_example(2).problem;
  const ProbeReport rep = probe_akkt_regularity(ex2, {0.0, 0.0});
  CHECK_FALSE(rep.violation);
  CHECK(rep.max_distance <= 1e-9);
}

TEST_CASE("probe flags the squared constraint whose image cone degenerates") {
  const std::vector<std::string> vars{"x1"};
  const Problem pr(vars, {parse_expression("x1", vars)},
                   {parse_expression("x1^2", vars)}, Cone::orthant(1));
  const ProbeReport rep = probe_akkt_regularity(pr, {0.0});
  CHECK(rep.violation);
  CHECK(rep.max_distance > 1e-3);
  REQUIRE(rep.worst_sample.has_value());
  CHECK(rep.worst_sample->distance == doctest::Approx(rep.max_distance));
}

TEST_CASE("a probe violation predicts certificates without exact multipliers") {
  // minimize -x over { x^2 <= 0 } = {0}: the only feasible point is trivially
  // weakly efficient, so approximate certificates exist, but stationarity
  // -1 + 2xμ can never vanish at x = 0. The probe's violation is exactly the
  // warning that verified certificates here cannot be capped.
  const std::vector<std::string> vars{"x1"};
  const Problem pr(vars, {parse_expression("-x1", vars)},
                   {parse_expression("x1^2", vars)}, Cone::orthant(1));

  CHECK(probe_akkt_regularity(pr, {0.0}).violation);

  const AkktCertificate cert = generate_akkt(pr, {1.0}, {0.5});
  const AkktReport rep = verify_akkt_certificate(pr, cert, 1e-3);
  CHECK(rep.converged_a0);
  CHECK(rep.converged_a1);
  CHECK(rep.converged_a2);
  CHECK(std::fabs(cert.limit[0]) <= 1e-3);
  CHECK_FALSE(rep.bakkt);

  const KktSearchResult res = search_kkt_multipliers(pr, {0.0}, 1e-6);
  CHECK_FALSE(res.kkt_holds);
  CHECK(res.min_residual == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("probe stress on opposing gradients with unbounded admissible rays") {
  const std::vector<std::string> vars{"x1"};
  const Problem pr(vars, {parse_expression("x1", vars)},
                   {parse_expression("x1", vars), parse_expression("-x1", vars)},
                   Cone::orthant(2));
  const ProbeReport rep = probe_akkt_regularity(pr, {0.0});
  CHECK_FALSE(rep.violation);
  CHECK(rep.max_distance <= 1e-9);
}

TEST_CASE("probe is deterministic in the seed") {
  const Problem ex3 = builtin_example(3).problem;
  ProbeConfig config = ProbeConfig::defaults();
  config.samples_per_scale = 40;
  const ProbeReport a = probe_akkt_regularity(ex3, {0.0, 0.0}, config);
  const ProbeReport b = probe_akkt_regularity(ex3, {0.0, 0.0}, config);
  CHECK(a.max_distance == b.max_distance);
  CHECK(a.per_scale_max == b.per_scale_max);

  config.seed = 43;
  const ProbeReport c = probe_akkt_regularity(ex3, {0.0, 0.0}, config);
  CHECK(a.samples_tested == c.samples_tested);
}

TEST_CASE("no probe violation and a verified certificate imply a multiplier") {
  // Consistency of the weakest-qualification direction on the fixtures: the
  // probe finds nothing, a certificate verifies, and the multiplier search
  // succeeds at the limit.
  {
    const Fixture fx = builtin_example(2);
    CHECK_FALSE(probe_akkt_regularity(fx.problem, {0.0, 0.0}).violation);
    const AkktReport rep = verify_akkt_certificate(fx.problem, *fx.certificate, 1e-8);
    REQUIRE(rep.akkt_verified());
    CHECK(search_kkt_multipliers(fx.problem, rep.limit, 1e-6).kkt_holds);
  }
  {
    const Problem ex3 = builtin_example(3).problem;
    CHECK_FALSE(probe_akkt_regularity(ex3, {0.0, 0.0}).violation);
    // the neutral objective makes (0, 0) trivially stationary
    CHECK(search_kkt_multipliers(ex3, {0.0, 0.0}, 1e-6).kkt_holds);
  }
}

TEST_CASE("cq guards reject unsupported shapes") {
  const std::vector<std::string> vars{"x1", "x2"};
  const Problem soc(vars, {parse_expression("x1", vars)},
                    {parse_expression("-2", vars), parse_expression("x1", vars)},
                    Cone::second_order(2));
  CHECK_THROWS_AS(distance_to_K0(soc, {0.0, 0.0}, {1.0, 0.0}), UnsupportedError);
  CHECK_THROWS_AS(probe_akkt_regularity(soc, {0.0, 0.0}), UnsupportedError);

  const Problem ex1 = builtin_example(1).problem;
  ProbeConfig bad = ProbeConfig::defaults();
  bad.samples_per_scale = 0;
  CHECK_THROWS_AS(probe_akkt_regularity(ex1, {1.0, 0.0}, bad), UsageError);
}
