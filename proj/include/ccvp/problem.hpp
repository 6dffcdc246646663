// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccvp/cone.hpp"
#include "ccvp/polynomial.hpp"

namespace ccvp {

/// Values and first derivatives of all problem functions at one point.
struct Evaluation {
  Vec x;
  Vec f;          // m objective values
  Vec g;          // p constraint values
  Matrix grad_f;  // m x n, row i = ∇f_i(x)
  Matrix jac_g;   // p x n, row j = ∇g_j(x)

  /// Adjoint action ∇g(x)*μ = jac_gᵀ μ.
  Vec adjoint_g(const Vec& mu) const { return matvec_transpose(jac_g, mu); }
};

/// Minimize f(x) over g(x) ∈ −Θ, with polynomial f: R^n -> R^m and
/// g: R^n -> R^p. Immutable after construction; all evaluation is exact
/// symbolic differentiation plus compensated arithmetic.
class Problem {
 public:
  Problem(std::vector<std::string> var_names,
          std::vector<Polynomial> objectives,
          std::vector<Polynomial> constraints,
          Cone cone,
          bool declared_convex = false,
          std::map<std::string, Vec> named_points = {});

  std::size_t n() const { return var_names_.size(); }
  std::size_t m() const { return objectives_.size(); }
  std::size_t p() const { return constraints_.size(); }

  const std::vector<std::string>& var_names() const { return var_names_; }
  const std::vector<Polynomial>& objectives() const { return objectives_; }
  const std::vector<Polynomial>& constraints() const { return constraints_; }
  const Cone& cone() const { return cone_; }
  bool declared_convex() const { return declared_convex_; }
  const std::map<std::string, Vec>& named_points() const { return named_points_; }
  const Vec& named_point(const std::string& name) const;

  /// Declared convex, or auto-verified: every function of degree <= 2 with
  /// PSD Hessian (affine only on zero-cone components) under a polyhedral
  /// cone. Anything beyond that is taken on the caller's word only.
  bool is_convex() const { return declared_convex_ || auto_convex_; }
  bool auto_verified_convex() const { return auto_convex_; }

  Evaluation evaluate(const Vec& x) const;

  Vec eval_objectives(const Vec& x) const;
  Vec eval_constraints(const Vec& x) const;

  /// dist(g(x), −Θ) <= tol.
  bool is_feasible(const Vec& x, double tol) const;
  double feasibility_distance(const Vec& x) const;

  /// Exact Hessian of λᵀf; available because objectives are polynomial.
  Matrix objective_hessian(const Vec& lambda, const Vec& x) const;
  /// Exact Hessian of constraint component j.
  Matrix constraint_hessian(std::size_t j, const Vec& x) const;

 private:
  bool detect_convexity() const;

  std::vector<std::string> var_names_;
  std::vector<Polynomial> objectives_;
  std::vector<Polynomial> constraints_;
  Cone cone_;
  bool declared_convex_;
  std::map<std::string, Vec> named_points_;
  bool auto_convex_ = false;

  // Cached symbolic first and second derivatives.
  std::vector<std::vector<Polynomial>> grad_f_;     // m x n
  std::vector<std::vector<Polynomial>> grad_g_;     // p x n
  std::vector<std::vector<Polynomial>> hess_f_;     // m x (n*(n+1)/2, packed)
  std::vector<std::vector<Polynomial>> hess_g_;     // p x packed
};

}  // namespace ccvp
