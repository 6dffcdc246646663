// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccvp/problem.hpp"

namespace ccvp {

/// Residuals of the multiplier conditions at a single (x, λ, μ) triple:
///   stationarity     ‖∇g(x)*μ + Σ λ_i ∇f_i(x_ref)‖
///   complementarity  |⟨μ, g(x)⟩|
///   feasibility      dist(g(x), −Θ)
///   simplex_defect   |Σλ − 1| + Σ max(0, −λ_i)
///   polar_defect     dist(μ, Θ₊)
/// The point satisfies the multiplier conditions within tol iff all five
/// fields are <= tol.
struct ResidualRecord {
  double stationarity = 0.0;
  double complementarity = 0.0;
  double feasibility = 0.0;
  double simplex_defect = 0.0;
  double polar_defect = 0.0;

  bool within(double tol) const {
    return stationarity <= tol && complementarity <= tol && feasibility <= tol &&
           simplex_defect <= tol && polar_defect <= tol;
  }
};

/// A finite approximate-certificate: fixed simplex weights, a candidate limit
/// point, and the primal-dual trajectory (x^k, μ^k).
struct AkktCertificate {
  Vec lambda;
  Vec limit;
  struct Step {
    Vec x;
    Vec mu;
  };
  std::vector<Step> steps;
};

/// Outcome of checking a certificate trajectory against the three
/// convergence conditions. Stationarity in `records` evaluates objective
/// gradients at the candidate limit; `variant_stationarity` repeats the
/// computation with gradients at x^k as a diagnostic (the two coincide in the
/// limit for continuously differentiable objectives).
struct AkktReport {
  std::vector<ResidualRecord> records;
  std::vector<double> variant_stationarity;
  std::vector<double> limit_distances;  // ‖x^k − limit‖
  std::vector<double> mu_norms;

  bool converged_a0 = false;
  bool converged_a1 = false;
  bool converged_a2 = false;
  double tail_mu_norm_sup = 0.0;
  bool bakkt = false;

  double tol_final = 1e-6;
  double tail_fraction = 0.25;
  double bakkt_bound = 1e6;
  double limit_feasibility = 0.0;
  Vec lambda;
  Vec limit;

  bool akkt_verified() const { return converged_a0 && converged_a1 && converged_a2; }
};

struct KktSearchResult {
  Vec lambda;
  Vec mu;
  double min_residual = 0.0;
  bool kkt_holds = false;
};

enum class GlobalClaim { GlobalWeakEfficient, NoClaim };

struct WeakEfficiencyResult {
  bool is_weak_efficient_on_grid = true;
  std::optional<Vec> worst_point;  // a dominating witness when found
  double worst_gap = 0.0;          // most negative ψ value seen
};

ResidualRecord kkt_residual(const Problem& problem, const Vec& x, const Vec& lambda,
                            const Vec& mu, const Vec* x_ref = nullptr);

/// Minimizes the stationarity norm over λ in the simplex and μ ∈ Θ₊ with
/// complementarity enforced structurally: orthant components of μ are fixed
/// to zero on constraints inactive beyond tol, zero-cone components stay
/// free. Only polyhedral cones; projected-gradient descent on the convex
/// least-squares objective, with seeded random restarts reduced by the
/// deterministic (residual, ‖μ‖) tie-break.
KktSearchResult search_kkt_multipliers(const Problem& problem, const Vec& x_bar,
                                       double tol, int restarts = 10,
                                       std::uint64_t seed = 42);

/// Checks a certificate trajectory:
///   A0: last ‖x^k − limit‖ <= tol_final and non-increasing over the tail
///   A1: last stationarity (gradients at limit) <= tol_final
///   A2: last complementarity <= tol_final
/// Throws CertificateError when some μ^k leaves Θ₊ (tol 1e-9) or the weights
/// leave the simplex (defect above 1e-12).
AkktReport verify_akkt_certificate(const Problem& problem, const AkktCertificate& cert,
                                   double tol_final = 1e-6, double tail_fraction = 0.25,
                                   double bakkt_bound = 1e6);

/// Numerical boundedness judgment on the multiplier norms: the tail
/// supremum must stay within bakkt_bound and the sequence must not diverge
/// (last-quartile sup within twice the first-quartile sup, or at noise
/// level). A finite sequence is trivially bounded, so this is explicitly a
/// judgment call, not a limit statement.
bool check_bakkt(const std::vector<double>& mu_norms, double bakkt_bound,
                 double tail_fraction = 0.25);
bool check_bakkt(const AkktReport& report, double bakkt_bound);
bool check_bakkt(const Problem& problem, const AkktCertificate& cert, double bakkt_bound,
                 double tail_fraction = 0.25);

/// ψ(x) = max_i (f_i(x) − f_i(x_bar)); nonnegative near x_bar exactly when
/// x_bar is locally weakly efficient.
double max_scalarization(const Problem& problem, const Vec& x_bar, const Vec& x);

/// Grid search for a feasible point dominating x_bar in every objective by
/// more than tol. Evidence only, never a proof; n <= 4.
WeakEfficiencyResult weak_efficiency_oracle(const Problem& problem, const Vec& x_bar,
                                            const Vec& box_lo, const Vec& box_hi,
                                            int steps_per_dim, double tol);

/// GlobalWeakEfficient iff the problem is convex (declared or auto-verified),
/// the certificate verified all three conditions, and the limit is feasible
/// within the report tolerance.
GlobalClaim convex_global_claim(const Problem& problem, const AkktReport& report);

}  // namespace ccvp
