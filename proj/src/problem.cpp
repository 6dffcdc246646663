// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/problem.hpp"

#include <cmath>

#include "ccvp/errors.hpp"

namespace ccvp {

namespace {

std::size_t packed_index(std::size_t i, std::size_t j) {
  // upper triangle, i <= j
  if (i > j) std::swap(i, j);
  return j * (j + 1) / 2 + i;
}

// Constant Hessian of a degree-<=2 polynomial; caller guarantees the degree.
Matrix quadratic_hessian(const Polynomial& q, std::size_t n) {
  Matrix h(n, n, 0.0);
  for (const auto& [e, c] : q.terms()) {
    int total = 0;
    std::size_t vi = 0, vj = 0, seen = 0;
    for (std::size_t k = 0; k < n; ++k) {
      total += e[k];
      if (e[k] >= 1) {
        if (seen == 0) vi = k;
        vj = k;
        seen += static_cast<std::size_t>(e[k]);
      }
    }
    if (total != 2) continue;
    if (vi == vj) {
      h(vi, vi) += 2.0 * c;
    } else {
      h(vi, vj) += c;
      h(vj, vi) += c;
    }
  }
  return h;
}

bool hessian_psd(const Polynomial& q, std::size_t n) {
  const Matrix h = quadratic_hessian(q, n);
  const auto [lo, hi] = symmetric_eigen_bounds(h);
  return lo >= -1e-9 * (1.0 + std::fabs(hi));
}

}  // namespace

Problem::Problem(std::vector<std::string> var_names,
                 std::vector<Polynomial> objectives,
                 std::vector<Polynomial> constraints,
                 Cone cone,
                 bool declared_convex,
                 std::map<std::string, Vec> named_points)
    : var_names_(std::move(var_names)),
      objectives_(std::move(objectives)),
      constraints_(std::move(constraints)),
      cone_(std::move(cone)),
      declared_convex_(declared_convex),
      named_points_(std::move(named_points)) {
  const std::size_t n = var_names_.size();
  if (n == 0) throw UsageError("problem: needs at least one variable");
  if (objectives_.empty()) throw UsageError("problem: needs at least one objective");
  if (constraints_.empty()) throw UsageError("problem: needs at least one constraint");
  if (cone_.dim() != constraints_.size())
    throw UsageError("problem: cone dimension " + std::to_string(cone_.dim()) +
                     " does not match constraint count " +
                     std::to_string(constraints_.size()));
  for (const Polynomial& f : objectives_)
    if (f.nvars() != n) throw UsageError("problem: objective variable count mismatch");
  for (const Polynomial& g : constraints_)
    if (g.nvars() != n) throw UsageError("problem: constraint variable count mismatch");
  for (const auto& [name, pt] : named_points_)
    if (pt.size() != n)
      throw UsageError("problem: named point '" + name + "' has wrong dimension");

  auto derive = [n](const std::vector<Polynomial>& fs,
                    std::vector<std::vector<Polynomial>>& grads,
                    std::vector<std::vector<Polynomial>>& hessians) {
    for (const Polynomial& f : fs) {
      std::vector<Polynomial> row;
      row.reserve(n);
      for (std::size_t v = 0; v < n; ++v) row.push_back(f.differentiate(v));
      std::vector<Polynomial> hess;
      hess.reserve(n * (n + 1) / 2);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) hess.push_back(row[i].differentiate(j));
      grads.push_back(std::move(row));
      hessians.push_back(std::move(hess));
    }
  };
  derive(objectives_, grad_f_, hess_f_);
  derive(constraints_, grad_g_, hess_g_);

  auto_convex_ = detect_convexity();
}

bool Problem::detect_convexity() const {
  if (!cone_.polyhedral()) return false;
  const std::size_t n = this->n();
  for (const Polynomial& f : objectives_) {
    if (f.degree() > 2) return false;
    if (!hessian_psd(f, n)) return false;
  }
  for (std::size_t j = 0; j < constraints_.size(); ++j) {
    const Polynomial& g = constraints_[j];
    if (g.degree() > 2) return false;
    const ConeKind k = cone_.factor_of(j).kind;
    if (k == ConeKind::Zero) {
      if (g.degree() > 1) return false;  // Θ-convexity on {0} means affine
    } else {
      if (!hessian_psd(g, n)) return false;
    }
  }
  return true;
}

const Vec& Problem::named_point(const std::string& name) const {
  auto it = named_points_.find(name);
  if (it == named_points_.end())
    throw UsageError("problem: no named point '" + name + "'");
  return it->second;
}

Evaluation Problem::evaluate(const Vec& x) const {
  require_size(x, n(), "problem evaluate");
  Evaluation ev;
  ev.x = x;
  ev.f.resize(m());
  ev.g.resize(p());
  ev.grad_f = Matrix(m(), n());
  ev.jac_g = Matrix(p(), n());
  for (std::size_t i = 0; i < m(); ++i) {
    ev.f[i] = objectives_[i].eval(x);
    for (std::size_t v = 0; v < n(); ++v) ev.grad_f(i, v) = grad_f_[i][v].eval(x);
  }
  for (std::size_t j = 0; j < p(); ++j) {
    ev.g[j] = constraints_[j].eval(x);
    for (std::size_t v = 0; v < n(); ++v) ev.jac_g(j, v) = grad_g_[j][v].eval(x);
  }
  return ev;
}

Vec Problem::eval_objectives(const Vec& x) const {
  require_size(x, n(), "problem eval_objectives");
  Vec f(m());
  for (std::size_t i = 0; i < m(); ++i) f[i] = objectives_[i].eval(x);
  return f;
}

Vec Problem::eval_constraints(const Vec& x) const {
  require_size(x, n(), "problem eval_constraints");
  Vec g(p());
  for (std::size_t j = 0; j < p(); ++j) g[j] = constraints_[j].eval(x);
  return g;
}

bool Problem::is_feasible(const Vec& x, double tol) const {
  return feasibility_distance(x) <= tol;
}

double Problem::feasibility_distance(const Vec& x) const {
  return cone_.distance_to_negative(eval_constraints(x));
}

Matrix Problem::objective_hessian(const Vec& lambda, const Vec& x) const {
  require_size(lambda, m(), "objective_hessian lambda");
  require_size(x, n(), "objective_hessian x");
  Matrix h(n(), n(), 0.0);
  for (std::size_t i = 0; i < m(); ++i) {
    if (lambda[i] == 0.0) continue;
    for (std::size_t cj = 0; cj < n(); ++cj) {
      for (std::size_t ci = 0; ci <= cj; ++ci) {
        const double v = lambda[i] * hess_f_[i][packed_index(ci, cj)].eval(x);
        h(ci, cj) += v;
        if (ci != cj) h(cj, ci) += v;
      }
    }
  }
  return h;
}

Matrix Problem::constraint_hessian(std::size_t j, const Vec& x) const {
  if (j >= p()) throw UsageError("constraint_hessian: index out of range");
  require_size(x, n(), "constraint_hessian x");
  Matrix h(n(), n(), 0.0);
  for (std::size_t cj = 0; cj < n(); ++cj) {
    for (std::size_t ci = 0; ci <= cj; ++ci) {
      const double v = hess_g_[j][packed_index(ci, cj)].eval(x);
      h(ci, cj) = v;
      h(cj, ci) = v;
    }
  }
  return h;
}

}  // namespace ccvp
