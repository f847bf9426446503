#pragma once

#include <functional>

#include "bcfem/geometry.hpp"

namespace bcfem {

struct ScalarField {
  std::function<double(Vec2)> value;

  static ScalarField constant(double c) {
    return {[c](Vec2) { return c; }};
  }
  static ScalarField zero() { return constant(0.0); }
};

struct VectorField {
  std::function<Vec2(Vec2)> value;

  static VectorField constant(Vec2 v) {
    return {[v](Vec2) { return v; }};
  }
  static VectorField zero() { return constant({0.0, 0.0}); }
};

/// Symmetric 2x2 coefficient tensor. row_divergence, when present, returns
/// the vector d with d_j = sum_i d(kappa_ij)/dx_i; the SUPG strong residual
/// needs it.
struct TensorField {
  std::function<Mat2(Vec2)> value;
  std::function<Vec2(Vec2)> row_divergence;

  static TensorField isotropic(double c) {
    return {[c](Vec2) { return Mat2::identity(c); }, [](Vec2) { return Vec2{0.0, 0.0}; }};
  }
  static TensorField identity() { return isotropic(1.0); }
};

}  // namespace bcfem
