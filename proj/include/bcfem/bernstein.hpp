#pragma once

#include <array>
#include <span>
#include <vector>

#include "bcfem/mesh.hpp"

namespace bcfem {

/// Barycentric point on a triangle.
using Bary = std::array<double, 3>;

struct MultiIndex {
  std::array<int, 3> alpha{};

  int degree() const { return alpha[0] + alpha[1] + alpha[2]; }
  int operator[](int i) const { return alpha[i]; }
};

/// All multiindices of total degree n, in ascending lexicographic order by
/// (alpha0, alpha1). This ordering is fixed; coefficient files depend on it.
std::vector<MultiIndex> enumerate_multiindices(int n);

int num_basis_functions(int degree);

/// b^n_i(x) = C(n,i) x^i (1-x)^(n-i) on [0,1].
double univariate_bernstein(int n, int i, double x);

/// Basis values and physical-space derivatives at a batch of barycentric
/// points. Layout: entry (basis, point) at index basis * num_points + point.
struct BasisTabulation {
  int degree = 0;
  int num_basis = 0;
  int num_points = 0;
  std::vector<double> values;
  std::vector<Vec2> gradients;                 // empty unless order >= 1
  std::vector<std::array<double, 3>> hessians; // (xx, xy, yy); empty unless order == 2

  double value(int basis, int point) const { return values[basis * num_points + point]; }
  const Vec2& gradient(int basis, int point) const { return gradients[basis * num_points + point]; }
  const std::array<double, 3>& hessian(int basis, int point) const {
    return hessians[basis * num_points + point];
  }
};

/// Tabulates the simplicial Bernstein basis of the given degree on one cell.
/// order 0 = values, 1 = +gradients, 2 = +hessians (exact via chain rule).
BasisTabulation tabulate(int degree, const CellGeometry& geom, std::span<const Bary> points, int order);

struct QuadratureRule {
  std::vector<Bary> points;
  std::vector<double> weights;  // sum to the reference area 1/2
  int exactness = 0;
};

/// Positive-weight rule on the reference triangle, exact for all polynomials
/// of total degree <= exactness (collapsed tensor Gauss). Supports exactness
/// up to 12.
QuadratureRule triangle_quadrature(int exactness);

/// Gauss-Legendre nodes/weights on [0,1]; exact through degree 2n-1.
std::vector<std::pair<double, double>> gauss_legendre_01(int num_points);

/// True iff every coefficient lies in [lo, hi]. A true certificate implies
/// the represented polynomial has range within [lo, hi]; false is
/// inconclusive (the box test is sufficient, not necessary).
bool coefficient_box_certificate(std::span<const double> coeffs, double lo, double hi);

/// Closed-form integral of x^a y^b over the reference triangle: a! b! / (a+b+2)!.
double reference_triangle_monomial_integral(int a, int b);

}  // namespace bcfem
