// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>

#include "ccvp/certify.hpp"
#include "ccvp/problem.hpp"

namespace ccvp {

/// A bundled reference problem with its point of interest and, where one
/// exists in closed form, a ready-made certificate trajectory.
struct Fixture {
  Problem problem;
  std::optional<AkktCertificate> certificate;
};

/// Bundled reference problems:
///   1: bi-objective linear problem over a cubic boundary; at xbar = (1, 0)
///      no exact multiplier exists, yet the explicit trajectory
///      x^k = (1 + 1/k, 0), μ^k = (0, 2k²/3 − 5/2, 2k²/3) certifies the
///      approximate conditions with diverging multipliers (k = 2..1000).
///   2: single objective on the ray R₊×{0}; xbar = (0, 0) carries the exact
///      multiplier (1, 0, 0) but the Robinson condition fails.
///   3: feasible-set-only fixture (neutral zero objective) with the cone
///      {0}×R₊; the Robinson condition fails at xbar = (0, 0) while the
///      multiplier image map stays inside K(xbar, 0) everywhere.
Fixture builtin_example(int id);

/// The convex regression fixture: f = (‖x‖², ‖x − (2,0)‖²) under
/// x₁ + x₂ <= 1, declared convex, with named point xstar = (1, 0).
Problem convex_biobjective_fixture();

}  // namespace ccvp
