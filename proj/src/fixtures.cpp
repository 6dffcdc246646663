// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/fixtures.hpp"

#include "ccvp/errors.hpp"

namespace ccvp {

namespace {

Polynomial expr(const std::string& text, const std::vector<std::string>& vars) {
  return parse_expression(text, vars);
}

Fixture make_example1() {
  const std::vector<std::string> vars{"x1", "x2"};
  Problem problem(vars,
                  {expr("-3*x1 - 2*x2 + 3", vars), expr("-x1 - 3*x2 + 1", vars)},
                  {expr("-x1", vars), expr("-x2", vars), expr("(x1 - 1)^3 + x2", vars)},
                  Cone::orthant(3),
                  /*declared_convex=*/false,
                  {{"xbar", {1.0, 0.0}}, {"origin", {0.0, 0.0}}});

  AkktCertificate cert;
  cert.lambda = {0.5, 0.5};
  cert.limit = {1.0, 0.0};
  for (int k = 2; k <= 1000; ++k) {
    const double kk = static_cast<double>(k);
    const double mu3 = 2.0 * kk * kk / 3.0;
    cert.steps.push_back({{1.0 + 1.0 / kk, 0.0}, {0.0, mu3 - 2.5, mu3}});
  }
  return {std::move(problem), std::move(cert)};
}

Fixture make_example2() {
  const std::vector<std::string> vars{"x1", "x2"};
  Problem problem(vars,
                  {expr("x1", vars)},
                  {expr("-x1", vars), expr("-x2", vars), expr("x2", vars)},
                  Cone::orthant(3),
                  /*declared_convex=*/false,
                  {{"xbar", {0.0, 0.0}}});

  // Constant trajectory at the exact multiplier.
  AkktCertificate cert;
  cert.lambda = {1.0};
  cert.limit = {0.0, 0.0};
  for (int k = 0; k < 10; ++k) cert.steps.push_back({{0.0, 0.0}, {1.0, 0.0, 0.0}});
  return {std::move(problem), std::move(cert)};
}

Fixture make_example3() {
  const std::vector<std::string> vars{"x1", "x2"};
  // The fixture defines a feasible set only; the neutral objective 0 keeps
  // the problem type satisfied and the cq checks ignore it entirely.
  Problem problem(vars,
                  {expr("0", vars)},
                  {expr("x1", vars), expr("x1^2", vars)},
                  Cone::product({Cone::zero(1), Cone::orthant(1)}),
                  /*declared_convex=*/false,
                  {{"xbar", {0.0, 0.0}}});
  return {std::move(problem), std::nullopt};
}

}  // namespace

Fixture builtin_example(int id) {
  switch (id) {
    case 1: return make_example1();
    case 2: return make_example2();
    case 3: return make_example3();
    default: throw UsageError("builtin_example: id must be 1, 2 or 3");
  }
}

Problem convex_biobjective_fixture() {
  const std::vector<std::string> vars{"x1", "x2"};
  return Problem(vars,
                 {expr("x1^2 + x2^2", vars), expr("(x1 - 2)^2 + x2^2", vars)},
                 {expr("x1 + x2 - 1", vars)},
                 Cone::orthant(1),
                 /*declared_convex=*/true,
                 {{"xstar", {1.0, 0.0}}, {"origin", {0.0, 0.0}}});
}

}  // namespace ccvp
