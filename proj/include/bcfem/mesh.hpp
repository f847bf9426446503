#pragma once

#include <array>
#include <vector>

#include "bcfem/geometry.hpp"

namespace bcfem {

enum class FacetTag { exterior, hole, none };

/// Boundary facet stored with its vertices in the traversal order of the
/// owning cell, so the outward normal is the right-hand rotation of b - a.
struct BoundaryFacet {
  std::array<int, 2> vertices{};
  FacetTag tag = FacetTag::none;
};

struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> cells;  // counterclockwise vertex triples
  std::vector<BoundaryFacet> boundary_facets;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
};

enum class DomainKind { unit_square, square_with_hole, centered_square };

struct DomainSpec {
  DomainKind kind = DomainKind::unit_square;
  int n = 1;  // subdivisions per side
};

/// Structured triangulation of the requested domain. Squares are split along
/// the diagonal from the lower-left to the upper-right corner.
Mesh build_mesh(const DomainSpec& spec);

/// Red refinement: each triangle splits into 4 congruent children through
/// edge midpoints. Boundary facet tags are inherited.
Mesh refine_uniform(const Mesh& mesh);

struct CellGeometry {
  std::array<Vec2, 3> vertices{};
  double area = 0.0;
  double diameter = 0.0;                  // longest edge
  std::array<Vec2, 3> bary_gradients{};   // constant gradients of b0, b1, b2
};

CellGeometry cell_geometry(const Mesh& mesh, int cell);

/// Barycentric coordinates of a physical point with respect to a cell.
std::array<double, 3> barycentric_coordinates(const CellGeometry& geom, const Vec2& p);

/// Unit outward normal of a boundary facet.
Vec2 facet_outward_normal(const Mesh& mesh, const BoundaryFacet& facet);

/// Sign of beta . n at the facet midpoint: negative means inflow.
double facet_flow_indicator(const Mesh& mesh, const BoundaryFacet& facet, const Vec2& beta_at_midpoint);

/// Unique mesh edges as ascending vertex pairs. If cell_edges is non-null it
/// receives, per cell, the edge ids opposite to each local vertex.
std::vector<std::array<int, 2>> collect_edges(const Mesh& mesh,
                                              std::vector<std::array<int, 3>>* cell_edges = nullptr);

/// Validates mesh invariants (orientation, facet incidence, index ranges);
/// throws std::runtime_error on the first violation.
void check_mesh(const Mesh& mesh);

double total_area(const Mesh& mesh);
double max_cell_diameter(const Mesh& mesh);

}  // namespace bcfem
