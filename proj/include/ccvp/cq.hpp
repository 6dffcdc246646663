// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ccvp/problem.hpp"

namespace ccvp {

/// Robinson condition outcome. When it fails, failing_direction is an axis
/// direction ±e_j certified (by an infeasible membership LP) to lie outside
/// ∇g(x̄)(R^n) + cone(Θ + g(x̄)).
struct RcqResult {
  bool holds = false;
  std::optional<Vec> failing_direction;
};

/// Mangasarian–Fromovitz outcome; absent (nullopt at the call site) when the
/// cone has an empty interior and the condition is not applicable.
struct MfcqResult {
  bool holds = false;
  std::optional<Vec> witness_d;
  double slack = 0.0;  // margin −t*; positive when the condition holds
};

struct ProbeSample {
  Vec x;
  double r = 0.0;
  Vec mu;
  Vec w;
  double distance = 0.0;
};

/// Falsification probe outcome. `violation` means the sampled perturbations
/// of the multiplier image cone stayed far from K(x̄, 0) even at the finest
/// scale; absence of a violation is evidence, never a regularity proof.
struct ProbeReport {
  std::size_t samples_tested = 0;
  double max_distance = 0.0;
  std::optional<ProbeSample> worst_sample;
  bool violation = false;
  std::vector<double> per_scale_max;
  std::vector<double> per_scale_q90;  // upper-tail statistic used for the decay trend
};

struct ProbeConfig {
  std::vector<std::pair<double, double>> scales;  // (δ_j, r_j), shrinking
  int samples_per_scale = 200;
  std::vector<double> mu_magnitudes = {1.0, 10.0, 1e3, 1e6};
  std::uint64_t seed = 42;
  double tolerance = 1e-6;

  static ProbeConfig defaults();
};

struct CQReport {
  RcqResult rcq;
  std::optional<MfcqResult> mfcq;
  std::optional<ProbeReport> regularity_probe;
};

/// Robinson constraint qualification via the full-space test: every axis
/// direction ±e_j must be a conic combination of {±columns of ∇g(x̄)} ∪
/// {cone generators} ∪ {g(x̄)} (2p small membership LPs). Polyhedral cones
/// with p <= 50 only.
RcqResult check_rcq(const Problem& problem, const Vec& x_bar);

/// Mangasarian–Fromovitz via one LP: minimize t with
/// g_j(x̄) + ⟨∇g_j(x̄), d⟩ <= t and ‖d‖_inf <= 1e3; holds iff t* < −1e-9.
/// Returns nullopt when int Θ = ∅ (zero factors present).
std::optional<MfcqResult> check_mfcq(const Problem& problem, const Vec& x_bar);

/// Euclidean distance from w to K(x̄, 0) = {∇g(x̄)*μ : μ ∈ Θ₊, ⟨μ, g(x̄)⟩ = 0}
/// by projected-gradient nonnegative least squares over the admissible
/// generator directions. Polyhedral cones only.
double distance_to_K0(const Problem& problem, const Vec& x_bar, const Vec& w);

/// Samples the perturbation map K(x, r) = {∇g(x)*μ : μ ∈ Θ₊, |⟨μ, g(x)⟩| <= r}
/// at shrinking scales (δ_j, r_j) around x̄ and measures how far the sampled
/// images stray from K(x̄, 0).
ProbeReport probe_akkt_regularity(const Problem& problem, const Vec& x_bar,
                                  const ProbeConfig& config = ProbeConfig::defaults());

}  // namespace ccvp
