#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "bcfem/bernstein.hpp"
#include "bcfem/mesh.hpp"

namespace bcfem {

enum class DofEntityKind { vertex, edge, interior };

struct DofEntity {
  DofEntityKind kind = DofEntityKind::vertex;
  int entity = 0;  // vertex id, edge id, or cell id
};

/// Global C0 numbering for degree-k Bernstein elements: vertex dofs first,
/// then k-1 dofs per edge ordered along the edge's canonical direction
/// (ascending global vertex id), then cell-interior dofs.
struct FunctionSpace {
  const Mesh* mesh = nullptr;
  int degree = 1;
  int ndofs = 0;
  std::vector<MultiIndex> cell_multiindices;    // shared slot layout
  std::vector<std::vector<int>> cell_dofs;      // [cell][slot] -> global dof
  std::vector<DofEntity> dof_entity;            // per global dof
  std::vector<Vec2> dof_position;               // Bernstein lattice point of each dof
  std::vector<std::array<int, 2>> edges;        // canonical ascending pairs
  std::vector<std::array<int, 3>> cell_edges;   // edge id opposite each local vertex

  int num_edges() const { return static_cast<int>(edges.size()); }
  int dofs_per_cell() const { return static_cast<int>(cell_multiindices.size()); }
};

FunctionSpace build_space(const Mesh& mesh, int degree);

/// Dofs whose entity lies on a boundary facet carrying one of the tags.
std::vector<int> dirichlet_dofs(const FunctionSpace& space, std::span<const FacetTag> tags);

struct FEFunction {
  const FunctionSpace* space = nullptr;
  std::vector<double> coeffs;

  FEFunction() = default;
  explicit FEFunction(const FunctionSpace& s, double fill = 0.0)
      : space(&s), coeffs(s.ndofs, fill) {}
};

/// Point evaluation; locates the containing cell by barycentric test
/// (boundary tolerance 1e-10) and throws std::domain_error outside the mesh.
double evaluate(const FEFunction& f, const Vec2& point);

double evaluate_in_cell(const FEFunction& f, int cell, const Bary& point);

/// C0 interpolant matching the field at the Bernstein lattice points of each
/// entity; exact for polynomials of degree <= k.
FEFunction interpolate_field(const FunctionSpace& space, const std::function<double(Vec2)>& field);

struct BoundsBox {
  std::vector<double> lb, ub;

  static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
  static BoundsBox unbounded(int n) { return uniform(n, -inf(), inf()); }
  static BoundsBox uniform(int n, double lo, double hi);

  void fix(int dof, double value) { lb[dof] = ub[dof] = value; }
  int size() const { return static_cast<int>(lb.size()); }
  bool contains(std::span<const double> x, double tol) const;
};

}  // namespace bcfem
