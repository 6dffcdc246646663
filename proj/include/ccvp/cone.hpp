// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ccvp/linalg.hpp"

namespace ccvp {

enum class ConeKind { Orthant, Zero, SecondOrderCone, Product };

/// Closed convex cone Θ ⊂ R^p built from orthant, zero and second-order
/// factors. Product cones are flattened left-to-right into one coordinate
/// block, so a coordinate index always identifies a unique factor.
///
/// Second-order factors use the (t, x) ordering: the first coordinate is the
/// axis and membership means ‖x‖ ≤ t. A second-order factor needs dim ≥ 2.
///
/// Every supported cone lives in finite dimension and is therefore dually
/// compact; there is no runtime check because no supported cone can fail it.
class Cone {
 public:
  struct Factor {
    ConeKind kind;       // never Product after flattening
    std::size_t offset;  // start coordinate in the ambient space
    std::size_t dim;
  };

  static Cone orthant(std::size_t p);
  static Cone zero(std::size_t p);
  static Cone second_order(std::size_t p);
  static Cone product(const std::vector<Cone>& factors);

  std::size_t dim() const { return dim_; }
  ConeKind kind() const;
  const std::vector<Factor>& factors() const { return factors_; }

  /// True when every factor is polyhedral (orthant or zero).
  bool polyhedral() const;

  /// Factor owning a given coordinate.
  const Factor& factor_of(std::size_t coordinate) const;

  /// Euclidean projection onto Θ.
  Vec project(const Vec& y) const;

  /// Euclidean projection onto −Θ.
  Vec project_negative(const Vec& y) const;

  /// Projection onto the polar cone Θ₊ = {μ : ⟨μ, θ⟩ ≥ 0 ∀θ ∈ Θ},
  /// obtained from the Moreau split y = Π₋Θ(y) + Π_{Θ₊}(y).
  Vec project_polar(const Vec& y) const;

  /// Membership test for Θ₊, factor-wise with slack tol.
  bool polar_contains(const Vec& mu, double tol) const;

  /// dist(y, −Θ) = ‖y − Π₋Θ(y)‖.
  double distance_to_negative(const Vec& y) const;

  bool contains(const Vec& y, double tol) const;

  /// A point of int Θ when the interior is nonempty; absent for zero factors
  /// (and any product containing one).
  std::optional<Vec> interior_direction() const;

  /// Generators of a polyhedral cone: each orthant coordinate contributes its
  /// unit vector, zero factors contribute nothing. Throws UnsupportedError for
  /// second-order factors.
  std::vector<Vec> polyhedral_generators() const;

  std::string describe() const;

 private:
  Cone(std::vector<Factor> factors, std::size_t dim)
      : factors_(std::move(factors)), dim_(dim) {}

  std::vector<Factor> factors_;
  std::size_t dim_ = 0;
};

}  // namespace ccvp
