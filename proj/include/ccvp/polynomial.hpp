// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccvp/linalg.hpp"

namespace ccvp {

/// Multivariate polynomial as a term map: exponent vector -> coefficient.
/// Zero coefficients are never stored. Differentiation is exact coefficient
/// arithmetic; evaluation uses compensated (double-double) accumulation so
/// that values stay accurate even under the heavy cancellation of expanded
/// forms near multiple roots.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, double>;

  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, double c);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total degree over terms; 0 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;

  void add_term(const Exponents& exps, double coeff);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial negate() const;
  Polynomial pow(int e) const;

  Polynomial differentiate(std::size_t var) const;

  double eval(const Vec& x) const;

  /// Grammar-conforming rendering; parsing it back gives a term-identical map.
  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

/// Parses `text` against the grammar
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' nonneg-int)?
///   base   := number | varname | '(' expr ')'
/// into an expanded polynomial over the given variable ordering.
/// Throws ParseError (with line/column) on malformed input or unknown names.
Polynomial parse_expression(const std::string& text,
                            const std::vector<std::string>& vars,
                            int line_for_errors = 1,
                            int column_offset = 0);

}  // namespace ccvp
