// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccvp/errors.hpp"
#include "ccvp/rng.hpp"

namespace ccvp {

namespace {

// Multiplier norms at or below this level are treated as bounded regardless
// of their internal trend; below it the quartile ratio only measures noise.
constexpr double kMuNoiseFloor = 1e-6;

double simplex_defect(const Vec& lambda) {
  double sum = 0.0;
  double neg = 0.0;
  for (double l : lambda) {
    sum += l;
    neg += std::max(0.0, -l);
  }
  return std::fabs(sum - 1.0) + neg;
}

Vec stationarity_vector(const Evaluation& ev_x, const Matrix& grad_f_ref,
                        const Vec& lambda, const Vec& mu) {
  Vec s = ev_x.adjoint_g(mu);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t v = 0; v < s.size(); ++v) s[v] += lambda[i] * grad_f_ref(i, v);
  return s;
}

}  // namespace

ResidualRecord kkt_residual(const Problem& problem, const Vec& x, const Vec& lambda,
                            const Vec& mu, const Vec* x_ref) {
  require_size(x, problem.n(), "kkt_residual x");
  require_size(lambda, problem.m(), "kkt_residual lambda");
  require_size(mu, problem.p(), "kkt_residual mu");
  if (x_ref != nullptr) require_size(*x_ref, problem.n(), "kkt_residual x_ref");

  const Evaluation ev = problem.evaluate(x);
  const Evaluation* ref = &ev;
  Evaluation ev_ref;
  if (x_ref != nullptr && *x_ref != x) {
    ev_ref = problem.evaluate(*x_ref);
    ref = &ev_ref;
  }

  ResidualRecord r;
  r.stationarity = norm2(stationarity_vector(ev, ref->grad_f, lambda, mu));
  r.complementarity = std::fabs(dot(mu, ev.g));
  r.feasibility = problem.cone().distance_to_negative(ev.g);
  r.simplex_defect = simplex_defect(lambda);
  r.polar_defect = norm2(sub(mu, problem.cone().project_polar(mu)));
  return r;
}

namespace {

// Structure of the admissible multiplier set at x_bar for a polyhedral cone:
// orthant coordinates with g_j(x_bar) < -tol are pinned to zero, the rest
// carry a sign restriction (orthant: >= 0) or none (zero cone).
struct AdmissibleSet {
  std::vector<std::size_t> coords;  // constraint indices with a live multiplier
  std::vector<bool> nonneg;         // per live coordinate
};

AdmissibleSet admissible_multipliers(const Problem& problem, const Vec& g, double tol) {
  AdmissibleSet adm;
  for (std::size_t j = 0; j < problem.p(); ++j) {
    const ConeKind kind = problem.cone().factor_of(j).kind;
    if (kind == ConeKind::Zero) {
      adm.coords.push_back(j);
      adm.nonneg.push_back(false);
    } else if (g[j] >= -tol) {
      adm.coords.push_back(j);
      adm.nonneg.push_back(true);
    }
  }
  return adm;
}

}  // namespace

KktSearchResult search_kkt_multipliers(const Problem& problem, const Vec& x_bar,
                                       double tol, int restarts, std::uint64_t seed) {
  require_size(x_bar, problem.n(), "search_kkt_multipliers x_bar");
  if (!problem.cone().polyhedral())
    throw UnsupportedError(
        "search_kkt_multipliers: multiplier search needs a polyhedral cone; "
        "check user-supplied multipliers with kkt_residual instead");
  if (!problem.is_feasible(x_bar, tol))
    throw PreconditionError("search_kkt_multipliers: x_bar is not feasible within tol");

  const Evaluation ev = problem.evaluate(x_bar);
  const AdmissibleSet adm = admissible_multipliers(problem, ev.g, tol);
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const std::size_t q = adm.coords.size();

  // Columns of the least-squares system: objective gradients then admissible
  // constraint gradients.
  Matrix cols(n, m + q, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t v = 0; v < n; ++v) cols(v, i) = ev.grad_f(i, v);
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t v = 0; v < n; ++v) cols(v, m + k) = ev.jac_g(adm.coords[k], v);

  double lipschitz = 0.0;
  for (double v : cols.data) lipschitz += v * v;
  lipschitz = std::max(2.0 * lipschitz, 1e-12);
  const double step = 1.0 / lipschitz;

  auto objective_grad = [&](const Vec& z, Vec& grad) {
    Vec r(n, 0.0);
    for (std::size_t j = 0; j < m + q; ++j)
      for (std::size_t v = 0; v < n; ++v) r[v] += cols(v, j) * z[j];
    grad.assign(m + q, 0.0);
    for (std::size_t j = 0; j < m + q; ++j)
      for (std::size_t v = 0; v < n; ++v) grad[j] += 2.0 * cols(v, j) * r[v];
    return dot(r, r);
  };

  auto project = [&](Vec& z) {
    Vec lam(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(m));
    lam = project_simplex(lam);
    std::copy(lam.begin(), lam.end(), z.begin());
    for (std::size_t k = 0; k < q; ++k)
      if (adm.nonneg[k]) z[m + k] = std::max(0.0, z[m + k]);
  };

  auto run_from = [&](Vec z) {
    project(z);
    Vec grad;
    for (int it = 0; it < 20000; ++it) {
      objective_grad(z, grad);
      Vec next = z;
      axpy(-step, grad, next);
      project(next);
      double delta = 0.0;
      for (std::size_t j = 0; j < next.size(); ++j)
        delta = std::max(delta, std::fabs(next[j] - z[j]));
      z = std::move(next);
      if (delta <= 1e-15 * (1.0 + norm_inf(z))) break;
    }
    return z;
  };

  // Restart s draws from its own derived stream, so the restarts are
  // order-independent and could run concurrently; the (residual, ‖μ‖)
  // tie-break below reduces them deterministically either way.
  Vec best_z;
  double best_res = std::numeric_limits<double>::infinity();
  double best_mu_norm = std::numeric_limits<double>::infinity();
  const int total_starts = std::max(1, restarts) + 1;
  for (int s = 0; s < total_starts; ++s) {
    Vec z(m + q, 0.0);
    if (s == 0) {
      for (std::size_t i = 0; i < m; ++i) z[i] = 1.0 / static_cast<double>(m);
    } else {
      Rng rng(Rng::derive_seed(seed, static_cast<std::uint64_t>(s)));
      for (std::size_t i = 0; i < m; ++i) z[i] = rng.uniform01();
      for (std::size_t k = 0; k < q; ++k)
        z[m + k] = adm.nonneg[k] ? 2.0 * rng.uniform01() : 4.0 * rng.uniform01() - 2.0;
    }
    z = run_from(std::move(z));
    Vec grad;
    const double res = std::sqrt(objective_grad(z, grad));
    double mu_norm = 0.0;
    for (std::size_t k = 0; k < q; ++k) mu_norm += z[m + k] * z[m + k];
    mu_norm = std::sqrt(mu_norm);
    if (res < best_res || (res == best_res && mu_norm < best_mu_norm)) {
      best_res = res;
      best_mu_norm = mu_norm;
      best_z = z;
    }
  }

  KktSearchResult out;
  out.lambda.assign(best_z.begin(), best_z.begin() + static_cast<std::ptrdiff_t>(m));
  out.mu.assign(problem.p(), 0.0);
  for (std::size_t k = 0; k < q; ++k) out.mu[adm.coords[k]] = best_z[m + k];
  out.min_residual = best_res;
  out.kkt_holds = best_res <= tol;
  return out;
}

AkktReport verify_akkt_certificate(const Problem& problem, const AkktCertificate& cert,
                                   double tol_final, double tail_fraction,
                                   double bakkt_bound) {
  require_size(cert.lambda, problem.m(), "certificate lambda");
  require_size(cert.limit, problem.n(), "certificate limit");
  if (cert.steps.empty()) throw CertificateError("certificate has no steps");
  if (tail_fraction <= 0.0 || tail_fraction > 1.0)
    throw UsageError("verify_akkt_certificate: tail_fraction must be in (0, 1]");
  if (simplex_defect(cert.lambda) > 1e-12)
    throw CertificateError("certificate weights are not on the unit simplex");

  const Evaluation ev_limit = problem.evaluate(cert.limit);

  AkktReport rep;
  rep.tol_final = tol_final;
  rep.tail_fraction = tail_fraction;
  rep.bakkt_bound = bakkt_bound;
  rep.lambda = cert.lambda;
  rep.limit = cert.limit;
  rep.limit_feasibility = problem.cone().distance_to_negative(ev_limit.g);

  const std::size_t nsteps = cert.steps.size();
  rep.records.reserve(nsteps);
  rep.variant_stationarity.reserve(nsteps);
  rep.limit_distances.reserve(nsteps);
  rep.mu_norms.reserve(nsteps);

  for (std::size_t k = 0; k < nsteps; ++k) {
    const auto& st = cert.steps[k];
    require_size(st.x, problem.n(), "certificate step x");
    require_size(st.mu, problem.p(), "certificate step mu");
    if (!problem.cone().polar_contains(st.mu, 1e-9))
      throw CertificateError("certificate step " + std::to_string(k) +
                             ": multiplier lies outside the polar cone");

    const Evaluation ev = problem.evaluate(st.x);
    ResidualRecord r;
    r.stationarity = norm2(stationarity_vector(ev, ev_limit.grad_f, cert.lambda, st.mu));
    r.complementarity = std::fabs(dot(st.mu, ev.g));
    r.feasibility = problem.cone().distance_to_negative(ev.g);
    r.simplex_defect = simplex_defect(cert.lambda);
    r.polar_defect = norm2(sub(st.mu, problem.cone().project_polar(st.mu)));
    rep.records.push_back(r);

    rep.variant_stationarity.push_back(
        norm2(stationarity_vector(ev, ev.grad_f, cert.lambda, st.mu)));
    rep.limit_distances.push_back(norm2(sub(st.x, cert.limit)));
    rep.mu_norms.push_back(norm2(st.mu));
  }

  const std::size_t tail =
      std::max<std::size_t>(1, static_cast<std::size_t>(
                                   std::ceil(tail_fraction * static_cast<double>(nsteps))));
  const std::size_t tail_begin = nsteps - tail;

  bool monotone = true;
  for (std::size_t k = tail_begin + 1; k < nsteps; ++k) {
    if (rep.limit_distances[k] >
        rep.limit_distances[k - 1] + 1e-12 * (1.0 + rep.limit_distances[k - 1])) {
      monotone = false;
      break;
    }
  }
  rep.converged_a0 = rep.limit_distances.back() <= tol_final && monotone;
  rep.converged_a1 = rep.records.back().stationarity <= tol_final;
  rep.converged_a2 = rep.records.back().complementarity <= tol_final;

  rep.tail_mu_norm_sup = 0.0;
  for (std::size_t k = tail_begin; k < nsteps; ++k)
    rep.tail_mu_norm_sup = std::max(rep.tail_mu_norm_sup, rep.mu_norms[k]);

  rep.bakkt = check_bakkt(rep.mu_norms, bakkt_bound, tail_fraction);
  return rep;
}

bool check_bakkt(const std::vector<double>& mu_norms, double bakkt_bound,
                 double tail_fraction) {
  if (bakkt_bound <= 0.0) throw UsageError("check_bakkt: bound must be positive");
  if (mu_norms.empty()) return false;
  const std::size_t nsteps = mu_norms.size();
  const std::size_t tail =
      std::max<std::size_t>(1, static_cast<std::size_t>(
                                   std::ceil(tail_fraction * static_cast<double>(nsteps))));
  double tail_sup = 0.0;
  for (std::size_t k = nsteps - tail; k < nsteps; ++k)
    tail_sup = std::max(tail_sup, mu_norms[k]);
  if (tail_sup > bakkt_bound) return false;

  const std::size_t quart = std::max<std::size_t>(1, (nsteps + 3) / 4);
  double first_q = 0.0;
  double last_q = 0.0;
  for (std::size_t k = 0; k < quart; ++k) first_q = std::max(first_q, mu_norms[k]);
  for (std::size_t k = nsteps - quart; k < nsteps; ++k)
    last_q = std::max(last_q, mu_norms[k]);
  return last_q <= 2.0 * first_q || last_q <= kMuNoiseFloor;
}

bool check_bakkt(const AkktReport& report, double bakkt_bound) {
  return check_bakkt(report.mu_norms, bakkt_bound, report.tail_fraction);
}

bool check_bakkt(const Problem& problem, const AkktCertificate& cert, double bakkt_bound,
                 double tail_fraction) {
  std::vector<double> norms;
  norms.reserve(cert.steps.size());
  for (const auto& st : cert.steps) {
    require_size(st.mu, problem.p(), "certificate step mu");
    norms.push_back(norm2(st.mu));
  }
  return check_bakkt(norms, bakkt_bound, tail_fraction);
}

double max_scalarization(const Problem& problem, const Vec& x_bar, const Vec& x) {
  const Vec f_bar = problem.eval_objectives(x_bar);
  const Vec f_x = problem.eval_objectives(x);
  double psi = f_x[0] - f_bar[0];
  for (std::size_t i = 1; i < f_x.size(); ++i) psi = std::max(psi, f_x[i] - f_bar[i]);
  return psi;
}

WeakEfficiencyResult weak_efficiency_oracle(const Problem& problem, const Vec& x_bar,
                                            const Vec& box_lo, const Vec& box_hi,
                                            int steps_per_dim, double tol) {
  const std::size_t n = problem.n();
  require_size(x_bar, n, "weak_efficiency_oracle x_bar");
  require_size(box_lo, n, "weak_efficiency_oracle box_lo");
  require_size(box_hi, n, "weak_efficiency_oracle box_hi");
  if (n > 4)
    throw UnsupportedError("weak_efficiency_oracle: grid enumeration is limited to n <= 4");
  if (steps_per_dim < 3) throw UsageError("weak_efficiency_oracle: steps_per_dim must be >= 3");
  for (std::size_t i = 0; i < n; ++i) {
    if (box_lo[i] > box_hi[i]) throw UsageError("weak_efficiency_oracle: empty box");
    if (x_bar[i] < box_lo[i] || x_bar[i] > box_hi[i])
      throw UsageError("weak_efficiency_oracle: x_bar outside the search box");
  }

  const Vec f_bar = problem.eval_objectives(x_bar);
  WeakEfficiencyResult out;

  std::vector<int> idx(n, 0);
  Vec x(n, 0.0);
  const double denom = static_cast<double>(steps_per_dim - 1);
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      x[i] = box_lo[i] + (box_hi[i] - box_lo[i]) * static_cast<double>(idx[i]) / denom;
    if (problem.is_feasible(x, tol)) {
      const Vec f_x = problem.eval_objectives(x);
      double psi = f_x[0] - f_bar[0];
      for (std::size_t i = 1; i < f_x.size(); ++i) psi = std::max(psi, f_x[i] - f_bar[i]);
      if (psi < -tol && psi < out.worst_gap) {
        out.is_weak_efficient_on_grid = false;
        out.worst_point = x;
        out.worst_gap = psi;
      }
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == steps_per_dim) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

GlobalClaim convex_global_claim(const Problem& problem, const AkktReport& report) {
  if (!problem.is_convex()) return GlobalClaim::NoClaim;
  if (!report.akkt_verified()) return GlobalClaim::NoClaim;
  if (report.limit_feasibility > report.tol_final) return GlobalClaim::NoClaim;
  return GlobalClaim::GlobalWeakEfficient;
}

}  // namespace ccvp
