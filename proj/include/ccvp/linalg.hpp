// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ccvp/errors.hpp"

namespace ccvp {

using Vec = std::vector<double>;

/// Dense row-major matrix, sized for desk-scale problems.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  Vec row(std::size_t i) const {
    return Vec(data.begin() + static_cast<std::ptrdiff_t>(i * cols),
               data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
  }
};

inline void require_size(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw UsageError(std::string(what) + ": expected length " + std::to_string(n) +
                     ", got " + std::to_string(v.size()));
  }
}

inline double dot(const Vec& a, const Vec& b) {
  require_size(b, a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

inline Vec add(const Vec& a, const Vec& b) {
  require_size(b, a.size(), "add");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  require_size(b, a.size(), "sub");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double t, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

/// y += t * x
inline void axpy(double t, const Vec& x, Vec& y) {
  require_size(y, x.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += t * x[i];
}

inline Vec matvec(const Matrix& a, const Vec& x) {
  require_size(x, a.cols, "matvec");
  Vec y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

/// Returns Aᵀ y.
inline Vec matvec_transpose(const Matrix& a, const Vec& y) {
  require_size(y, a.rows, "matvec_transpose");
  Vec x(a.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) x[j] += a(i, j) * y[i];
  return x;
}

bool all_finite(const Vec& v);

/// Eigenvalue range of a symmetric matrix by cyclic Jacobi rotations.
/// Intended for the small constant Hessians of quadratic expressions.
std::pair<double, double> symmetric_eigen_bounds(const Matrix& sym);

/// Euclidean projection onto the unit simplex {w >= 0, sum w = 1}.
Vec project_simplex(const Vec& w);

}  // namespace ccvp
