// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/generate.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "ccvp/errors.hpp"

namespace ccvp {

namespace {

double simplex_defect(const Vec& lambda) {
  double sum = 0.0, neg = 0.0;
  for (double l : lambda) {
    sum += l;
    neg += std::max(0.0, -l);
  }
  return std::fabs(sum - 1.0) + neg;
}

std::string format_point(const Vec& x) {
  std::string s = "[";
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6g", x[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s + "]";
}

// Exact Hessian of the penalty for polyhedral cones. Orthant coordinates
// contribute ρ∇g_j∇g_jᵀ + μ_j∇²g_j only where the penalty is active
// (g_j > 0); zero-cone coordinates contribute always.
Matrix penalty_hessian(const Problem& problem, const Vec& lambda, double rho,
                       const Vec& x, const Evaluation& ev, const Vec& mu) {
  const std::size_t n = problem.n();
  Matrix h = problem.objective_hessian(lambda, x);
  for (std::size_t j = 0; j < problem.p(); ++j) {
    const ConeKind kind = problem.cone().factor_of(j).kind;
    const bool active = (kind == ConeKind::Zero) || ev.g[j] > 0.0;
    if (!active) continue;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) h(a, b) += rho * ev.jac_g(j, a) * ev.jac_g(j, b);
    if (mu[j] != 0.0) {
      const Matrix hj = problem.constraint_hessian(j, x);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) h(a, b) += mu[j] * hj(a, b);
    }
  }
  return h;
}

// Solve (H + τI) d = -g with escalating Levenberg damping until the Cholesky
// factorization goes through. Returns false if damping fails outright.
bool damped_newton_direction(Matrix h, const Vec& grad, Vec& dir) {
  const std::size_t n = h.rows;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(h(i, i)));
  // A vanishing Hessian (linear objective, no active penalty) carries no
  // curvature information; let the gradient path handle it.
  if (scale <= 1e-10) return false;
  double tau = 0.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Matrix l(n, n, 0.0);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      double d = h(j, j) + tau;
      for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
      if (d <= 1e-14 * scale) {
        ok = false;
        break;
      }
      l(j, j) = std::sqrt(d);
      for (std::size_t i = j + 1; i < n; ++i) {
        double v = h(i, j);
        for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
        l(i, j) = v / l(j, j);
      }
    }
    if (ok) {
      Vec y(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double v = -grad[i];
        for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * y[k];
        y[i] = v / l(i, i);
      }
      dir.assign(n, 0.0);
      for (std::size_t ii = n; ii-- > 0;) {
        double v = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * dir[k];
        dir[ii] = v / l(ii, ii);
      }
      return true;
    }
    tau = (tau == 0.0) ? 1e-8 * scale : 10.0 * tau;
  }
  return false;
}

}  // namespace

void PenaltyConfig::validate() const {
  if (rho0 <= 0.0 || gamma <= 1.0 || outer_iters < 1 || eps0 <= 0.0 ||
      inner_max_steps < 1 || armijo_c <= 0.0 || armijo_backtrack <= 0.0 ||
      armijo_backtrack >= 1.0 || armijo_initial_step <= 0.0)
    throw UsageError("penalty config: values out of range (need rho0>0, gamma>1, ...)");
}

PenaltyEval penalty_value_grad(const Problem& problem, const Vec& lambda, double rho,
                               const Vec& x) {
  require_size(lambda, problem.m(), "penalty lambda");
  require_size(x, problem.n(), "penalty x");
  if (rho <= 0.0) throw UsageError("penalty: rho must be positive");
  if (simplex_defect(lambda) > 1e-9)
    throw UsageError("penalty: weights are not on the unit simplex");

  const Evaluation ev = problem.evaluate(x);
  PenaltyEval out;
  out.mu = scale(rho, problem.cone().project_polar(ev.g));

  double value = 0.0;
  for (std::size_t i = 0; i < problem.m(); ++i) value += lambda[i] * ev.f[i];
  const double dist = problem.cone().distance_to_negative(ev.g);
  out.value = value + 0.5 * rho * dist * dist;

  out.gradient = ev.adjoint_g(out.mu);
  for (std::size_t i = 0; i < problem.m(); ++i)
    for (std::size_t v = 0; v < problem.n(); ++v)
      out.gradient[v] += lambda[i] * ev.grad_f(i, v);
  return out;
}

Vec inner_minimize(const Problem& problem, const Vec& lambda, double rho,
                   const Vec& x_start, double eps, const PenaltyConfig& config) {
  config.validate();
  require_size(x_start, problem.n(), "inner_minimize x_start");
  const bool have_hessian = problem.cone().polyhedral();

  Vec x = x_start;
  PenaltyEval cur = penalty_value_grad(problem, lambda, rho, x);
  if (!std::isfinite(cur.value) || !all_finite(cur.gradient))
    throw NumericalError("inner_minimize: non-finite penalty at start " + format_point(x));

  Vec prev_x, prev_grad;
  for (int it = 0; it < config.inner_max_steps; ++it) {
    const double gnorm = norm2(cur.gradient);
    if (gnorm <= eps) break;

    Vec dir;
    double trial = config.armijo_initial_step;
    bool newton = false;
    if (have_hessian) {
      const Evaluation ev = problem.evaluate(x);
      const Matrix h = penalty_hessian(problem, lambda, rho, x, ev, cur.mu);
      newton = damped_newton_direction(h, cur.gradient, dir);
      if (newton && dot(dir, cur.gradient) >= 0.0) newton = false;
    }
    if (!newton) {
      dir = scale(-1.0, cur.gradient);
      // Barzilai–Borwein scaling keeps gradient steps usable when ρ makes
      // the landscape stiff; the very first step falls back to the config.
      if (!prev_x.empty()) {
        const Vec s = sub(x, prev_x);
        const Vec yv = sub(cur.gradient, prev_grad);
        const double sy = dot(s, yv);
        if (sy > 0.0) trial = std::min(config.armijo_initial_step, dot(s, s) / sy);
      }
    }

    const double slope = dot(dir, cur.gradient);
    prev_x = x;
    prev_grad = cur.gradient;

    double step = trial;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      Vec cand = x;
      axpy(step, dir, cand);
      PenaltyEval next = penalty_value_grad(problem, lambda, rho, cand);
      if (!std::isfinite(next.value) || !all_finite(next.gradient))
        throw NumericalError("inner_minimize: non-finite penalty at " + format_point(cand));
      if (next.value <= cur.value + config.armijo_c * step * slope) {
        x = std::move(cand);
        cur = std::move(next);
        accepted = true;
        break;
      }
      step *= config.armijo_backtrack;
    }
    if (!accepted) break;  // step collapsed below representable progress
  }
  return x;
}

AkktCertificate generate_akkt(const Problem& problem, const Vec& lambda, const Vec& x0,
                              const PenaltyConfig& config) {
  config.validate();
  require_size(lambda, problem.m(), "generate_akkt lambda");
  require_size(x0, problem.n(), "generate_akkt x0");
  if (simplex_defect(lambda) > 1e-9)
    throw UsageError("generate_akkt: weights are not on the unit simplex");
  if (!all_finite(x0)) throw UsageError("generate_akkt: x0 must be finite");

  AkktCertificate cert;
  cert.lambda = lambda;

  Vec x = x0;
  double rho = config.rho0;
  double eps = config.eps0;
  for (int k = 0; k < config.outer_iters; ++k) {
    x = inner_minimize(problem, lambda, rho, x, eps, config);
    const PenaltyEval pe = penalty_value_grad(problem, lambda, rho, x);
    cert.steps.push_back({x, pe.mu});
    if (norm2(x) > 1e8) {
      std::string dump = "generate_akkt: iterates diverged; trajectory:";
      for (const auto& st : cert.steps) dump += " " + format_point(st.x);
      throw NumericalError(dump);
    }
    rho *= config.gamma;
    eps /= config.gamma;
  }
  cert.limit = cert.steps.back().x;
  return cert;
}

}  // namespace ccvp
