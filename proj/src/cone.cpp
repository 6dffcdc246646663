// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/cone.hpp"

#include <cmath>

namespace ccvp {

namespace {

double block_norm(const Vec& y, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += y[i] * y[i];
  return std::sqrt(s);
}

// Projection of one second-order block (t, x) onto {(t, x) : ‖x‖ ≤ t},
// written into out. The apex-boundary case ‖x‖ = −t takes the closed form's
// limit and maps to the origin.
void project_soc_block(const Vec& y, std::size_t off, std::size_t d, Vec& out) {
  const double t = y[off];
  const double xn = block_norm(y, off + 1, off + d);
  if (xn <= t) {
    for (std::size_t i = 0; i < d; ++i) out[off + i] = y[off + i];
    return;
  }
  if (xn <= -t) {
    for (std::size_t i = 0; i < d; ++i) out[off + i] = 0.0;
    return;
  }
  const double a = 0.5 * (t + xn);
  out[off] = a;
  for (std::size_t i = 1; i < d; ++i) out[off + i] = a * y[off + i] / xn;
}

}  // namespace

Cone Cone::orthant(std::size_t p) {
  if (p < 1) throw UsageError("cone: orthant dimension must be >= 1");
  return Cone({{ConeKind::Orthant, 0, p}}, p);
}

Cone Cone::zero(std::size_t p) {
  if (p < 1) throw UsageError("cone: zero-cone dimension must be >= 1");
  return Cone({{ConeKind::Zero, 0, p}}, p);
}

Cone Cone::second_order(std::size_t p) {
  if (p < 2) throw UsageError("cone: second-order cone needs dimension >= 2");
  return Cone({{ConeKind::SecondOrderCone, 0, p}}, p);
}

Cone Cone::product(const std::vector<Cone>& factors) {
  if (factors.empty()) throw UsageError("cone: product of zero factors");
  std::vector<Factor> flat;
  std::size_t off = 0;
  for (const Cone& c : factors) {
    for (Factor f : c.factors_) {
      f.offset = off;
      flat.push_back(f);
      off += f.dim;
    }
  }
  return Cone(std::move(flat), off);
}

ConeKind Cone::kind() const {
  return factors_.size() == 1 ? factors_[0].kind : ConeKind::Product;
}

bool Cone::polyhedral() const {
  for (const Factor& f : factors_)
    if (f.kind == ConeKind::SecondOrderCone) return false;
  return true;
}

const Cone::Factor& Cone::factor_of(std::size_t coordinate) const {
  for (const Factor& f : factors_)
    if (coordinate >= f.offset && coordinate < f.offset + f.dim) return f;
  throw UsageError("cone: coordinate out of range");
}

Vec Cone::project(const Vec& y) const {
  require_size(y, dim_, "cone project");
  Vec out(dim_, 0.0);
  for (const Factor& f : factors_) {
    switch (f.kind) {
      case ConeKind::Orthant:
        for (std::size_t i = f.offset; i < f.offset + f.dim; ++i)
          out[i] = std::max(0.0, y[i]);
        break;
      case ConeKind::Zero:
        break;  // already zero
      case ConeKind::SecondOrderCone:
        project_soc_block(y, f.offset, f.dim, out);
        break;
      case ConeKind::Product:
        throw UsageError("cone: nested product factor");
    }
  }
  return out;
}

Vec Cone::project_negative(const Vec& y) const {
  Vec neg = scale(-1.0, y);
  Vec p = project(neg);
  return scale(-1.0, p);
}

Vec Cone::project_polar(const Vec& y) const {
  require_size(y, dim_, "cone project_polar");
  return sub(y, project_negative(y));
}

bool Cone::polar_contains(const Vec& mu, double tol) const {
  require_size(mu, dim_, "cone polar_contains");
  for (const Factor& f : factors_) {
    switch (f.kind) {
      case ConeKind::Orthant:
        // Θ₊ = Θ for the orthant.
        for (std::size_t i = f.offset; i < f.offset + f.dim; ++i)
          if (mu[i] < -tol) return false;
        break;
      case ConeKind::Zero:
        break;  // the dual of {0} is the whole space
      case ConeKind::SecondOrderCone: {
        // Self-dual: (t, x) with ‖x‖ ≤ t.
        const double xn = block_norm(mu, f.offset + 1, f.offset + f.dim);
        if (xn > mu[f.offset] + tol) return false;
        break;
      }
      case ConeKind::Product:
        throw UsageError("cone: nested product factor");
    }
  }
  return true;
}

double Cone::distance_to_negative(const Vec& y) const {
  require_size(y, dim_, "cone distance_to_negative");
  return norm2(sub(y, project_negative(y)));
}

bool Cone::contains(const Vec& y, double tol) const {
  require_size(y, dim_, "cone contains");
  return norm2(sub(y, project(y))) <= tol;
}

std::optional<Vec> Cone::interior_direction() const {
  Vec d(dim_, 0.0);
  for (const Factor& f : factors_) {
    switch (f.kind) {
      case ConeKind::Orthant:
        for (std::size_t i = f.offset; i < f.offset + f.dim; ++i) d[i] = 1.0;
        break;
      case ConeKind::Zero:
        return std::nullopt;  // {0} has empty interior in R^p, p >= 1
      case ConeKind::SecondOrderCone:
        d[f.offset] = 1.0;
        break;
      case ConeKind::Product:
        throw UsageError("cone: nested product factor");
    }
  }
  return d;
}

std::vector<Vec> Cone::polyhedral_generators() const {
  std::vector<Vec> gens;
  for (const Factor& f : factors_) {
    switch (f.kind) {
      case ConeKind::Orthant:
        for (std::size_t i = f.offset; i < f.offset + f.dim; ++i) {
          Vec e(dim_, 0.0);
          e[i] = 1.0;
          gens.push_back(std::move(e));
        }
        break;
      case ConeKind::Zero:
        break;
      case ConeKind::SecondOrderCone:
        throw UnsupportedError("cone: second-order factors have no finite generator list");
      case ConeKind::Product:
        throw UsageError("cone: nested product factor");
    }
  }
  return gens;
}

std::string Cone::describe() const {
  std::string s;
  for (const Factor& f : factors_) {
    if (!s.empty()) s += " x ";
    switch (f.kind) {
      case ConeKind::Orthant: s += "orthant(" + std::to_string(f.dim) + ")"; break;
      case ConeKind::Zero: s += "zero(" + std::to_string(f.dim) + ")"; break;
      case ConeKind::SecondOrderCone: s += "soc(" + std::to_string(f.dim) + ")"; break;
      case ConeKind::Product: break;
    }
  }
  return s;
}

}  // namespace ccvp
