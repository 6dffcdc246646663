// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <limits>
#include <vector>

#include "ccvp/linalg.hpp"

namespace ccvp {

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class RowSense { Le, Ge, Eq };

inline double lp_infinity() { return std::numeric_limits<double>::infinity(); }

/// maximize cᵀx  subject to  a_r·x {<=,=,>=} b_r  and  lower <= x <= upper.
/// Bounds may be ±infinity. Dense desk-scale data only (<= 200 rows/cols).
struct LpProblem {
  Matrix a;
  Vec b;
  Vec c;
  std::vector<RowSense> sense;
  Vec lower;  // defaults to 0 when empty
  Vec upper;  // defaults to +inf when empty
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;             // populated when Optimal
  double objective = 0.0;
};

/// Two-phase dense tableau simplex under Bland's anti-cycling rule with
/// pivot tolerance 1e-10. Deterministic: identical inputs always produce the
/// identical vertex. Optimal solutions satisfy the row system within 1e-9
/// (relative to the data scale).
LpResult lp_solve(const LpProblem& lp);

}  // namespace ccvp
