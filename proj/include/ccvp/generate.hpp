// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include "ccvp/certify.hpp"
#include "ccvp/problem.hpp"

namespace ccvp {

/// Knobs of the exterior quadratic-penalty generator. The outer loop raises
/// ρ_k = rho0·γ^k while the inner stationarity target ε_k = eps0/γ^k shrinks,
/// so the recorded iterates trace an approximate-certificate trajectory.
struct PenaltyConfig {
  double rho0 = 1.0;
  double gamma = 10.0;
  int outer_iters = 12;
  double eps0 = 1e-2;
  int inner_max_steps = 5000;
  double armijo_c = 1e-4;
  double armijo_backtrack = 0.5;
  double armijo_initial_step = 1.0;

  void validate() const;
};

struct PenaltyEval {
  double value = 0.0;
  Vec gradient;
  Vec mu;  // ρ·Π_{Θ₊}(g(x)), always in Θ₊
};

/// Penalty value Σλ_i f_i(x) + (ρ/2)·dist(g(x), −Θ)², its exact gradient
/// Σλ_i ∇f_i(x) + ∇g(x)*μ, and the multiplier estimate μ = ρ·Π_{Θ₊}(g(x)).
PenaltyEval penalty_value_grad(const Problem& problem, const Vec& lambda, double rho,
                               const Vec& x);

/// Drives ‖∇penalty‖ below eps (or runs out of steps) by monotone descent
/// with Armijo backtracking. Directions come from the exact penalty Hessian
/// (Levenberg-damped) when the cone is polyhedral, otherwise from
/// Barzilai–Borwein-scaled gradients. Throws NumericalError on non-finite
/// values.
Vec inner_minimize(const Problem& problem, const Vec& lambda, double rho,
                   const Vec& x_start, double eps, const PenaltyConfig& config);

/// Runs the outer penalty loop and records one (x^k, μ^k) pair per outer
/// iteration; the last iterate becomes the certificate's candidate limit.
/// Throws NumericalError with the trajectory attached if iterates diverge
/// beyond ‖x‖ > 1e8.
AkktCertificate generate_akkt(const Problem& problem, const Vec& lambda, const Vec& x0,
                              const PenaltyConfig& config = {});

}  // namespace ccvp
