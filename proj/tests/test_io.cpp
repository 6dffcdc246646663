// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <sstream>

#include "ccvp/errors.hpp"
#include "ccvp/fixtures.hpp"
#include "ccvp/io.hpp"

using namespace ccvp;

namespace {

void check_same_problem(const Problem& a, const Problem& b) {
  REQUIRE(a.n() == b.n());
  REQUIRE(a.m() == b.m());
  REQUIRE(a.p() == b.p());
  CHECK(a.var_names() == b.var_names());
  for (std::size_t i = 0; i < a.m(); ++i)
    CHECK(a.objectives()[i].terms() == b.objectives()[i].terms());
  for (std::size_t j = 0; j < a.p(); ++j)
    CHECK(a.constraints()[j].terms() == b.constraints()[j].terms());
  CHECK(a.cone().describe() == b.cone().describe());
  CHECK(a.declared_convex() == b.declared_convex());
  CHECK(a.named_points() == b.named_points());
}

}  // namespace

TEST_CASE("bundled problem files parse to the builtin fixtures") {
  check_same_problem(read_problem_file(std::string(CCVP_DATA_DIR) + "/example1.ccvp"),
                     builtin_example(1).problem);
  check_same_problem(read_problem_file(std::string(CCVP_DATA_DIR) + "/example2.ccvp"),
                     builtin_example(2).problem);
  check_same_problem(read_problem_file(std::string(CCVP_DATA_DIR) + "/example3.ccvp"),
                     builtin_example(3).problem);

  const Problem conv =
      read_problem_file(std::string(CCVP_DATA_DIR) + "/convex_biobjective.ccvp");
  CHECK(conv.declared_convex());
  CHECK(conv.is_convex());
}

TEST_CASE("problem files accept comments, blank lines and stacked cones") {
  std::istringstream in(
      "# heading comment\n"
      "vars a b\n"
      "\n"
      "objective a + b  # trailing comment\n"
      "constraint a\n"
      "constraint b\n"
      "constraint a - b\n"
      "cone zero 1\n"
      "cone orthant 2\n"
      "convex false\n"
      "point start 0.5 -0.5\n");
  const Problem pr = read_problem(in);
  CHECK(pr.n() == 2);
  CHECK(pr.p() == 3);
  CHECK(pr.cone().describe() == "zero(1) x orthant(2)");
  CHECK(pr.named_point("start") == Vec{0.5, -0.5});
}

TEST_CASE("problem file diagnostics") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_problem(in);
  };
  CHECK_THROWS_AS(parse("objective x\n"), ParseError);                    // no vars
  CHECK_THROWS_AS(parse("vars x\nvars y\n"), ParseError);                 // duplicate
  CHECK_THROWS_AS(parse("vars x\nobjective x\nconstraint x\n"), ParseError);  // no cone
  CHECK_THROWS_AS(
      parse("vars x\nobjective x\nconstraint x\ncone orthant 2\n"), ParseError);
  CHECK_THROWS_AS(
      parse("vars x\nobjective x\nconstraint x\ncone orthant 1\npoint p 1 2\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse("vars x\nobjective x\nconstraint x\ncone banana 1\n"), ParseError);
  CHECK_THROWS_AS(
      parse("vars x\nobjective x\nconstraint x\ncone orthant 1\nwat 1\n"), ParseError);
  CHECK_THROWS_AS(
      parse("vars x\nobjective y + 1\nconstraint x\ncone orthant 1\n"), ParseError);

  try {
    parse("vars x\nobjective x\nconstraint x ^ -1\ncone orthant 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("certificates round-trip through text") {
  const AkktCertificate cert = *builtin_example(1).certificate;
  std::ostringstream out;
  write_certificate(out, cert);
  std::istringstream in(out.str());
  const AkktCertificate back = read_certificate(in);

  CHECK(back.lambda == cert.lambda);
  CHECK(back.limit == cert.limit);
  REQUIRE(back.steps.size() == cert.steps.size());
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    CHECK(back.steps[k].x == cert.steps[k].x);
    CHECK(back.steps[k].mu == cert.steps[k].mu);
  }
}

TEST_CASE("certificate diagnostics") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_certificate(in);
  };
  CHECK_THROWS_AS(parse("limit 0\nstep 0 ; 0\n"), ParseError);         // no lambda
  CHECK_THROWS_AS(parse("lambda 1\nstep 0 ; 0\n"), ParseError);        // no limit
  CHECK_THROWS_AS(parse("lambda 1\nlimit 0\n"), ParseError);           // no steps
  CHECK_THROWS_AS(parse("lambda 1\nlimit 0\nstep 0 0\n"), ParseError); // no separator
  CHECK_THROWS_AS(parse("lambda 1\nlimit 0\nstep 0 ; 0 ; 0\n"), ParseError);
  CHECK_THROWS_AS(parse("lambda one\nlimit 0\nstep 0 ; 0\n"), ParseError);
  CHECK_THROWS_AS(read_problem_file("/nonexistent/path.ccvp"), UsageError);
}
