#include "bcfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace bcfem {

namespace {

constexpr double kHoleLo = 4.0 / 9.0;
constexpr double kHoleHi = 5.0 / 9.0;

bool on_segment_box(double v, double lo, double hi) { return v >= lo - 1e-12 && v <= hi + 1e-12; }

// Classifies a boundary edge of the hole domain by its midpoint.
FacetTag hole_domain_tag(const Vec2& midpoint) {
  const bool on_hole_x = std::abs(midpoint.x - kHoleLo) < 1e-12 || std::abs(midpoint.x - kHoleHi) < 1e-12;
  const bool on_hole_y = std::abs(midpoint.y - kHoleLo) < 1e-12 || std::abs(midpoint.y - kHoleHi) < 1e-12;
  if ((on_hole_x && on_segment_box(midpoint.y, kHoleLo, kHoleHi)) ||
      (on_hole_y && on_segment_box(midpoint.x, kHoleLo, kHoleHi))) {
    return FacetTag::hole;
  }
  return FacetTag::exterior;
}

// Finds boundary edges (incident to exactly one cell) and stores them in the
// owning cell's traversal order.
std::vector<BoundaryFacet> boundary_facets_of(const Mesh& mesh, FacetTag (*classify)(const Vec2&)) {
  std::map<std::array<int, 2>, std::pair<int, std::array<int, 2>>> edge_count;
  for (const auto& cell : mesh.cells) {
    for (int e = 0; e < 3; ++e) {
      const int a = cell[(e + 1) % 3];
      const int b = cell[(e + 2) % 3];
      const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
      auto it = edge_count.find(key);
      if (it == edge_count.end()) {
        edge_count.emplace(key, std::make_pair(1, std::array<int, 2>{a, b}));
      } else {
        ++it->second.first;
      }
    }
  }
  std::vector<BoundaryFacet> facets;
  for (const auto& [key, info] : edge_count) {
    if (info.first != 1) continue;
    const Vec2 mid = (mesh.vertices[info.second[0]] + mesh.vertices[info.second[1]]) * 0.5;
    facets.push_back({info.second, classify(mid)});
  }
  return facets;
}

FacetTag always_exterior(const Vec2&) { return FacetTag::exterior; }

}  // namespace

Mesh build_mesh(const DomainSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("build_mesh: subdivision count must be >= 1");
  if (spec.kind == DomainKind::square_with_hole && spec.n % 9 != 0) {
    throw std::invalid_argument("build_mesh: hole domain requires n to be a multiple of 9");
  }

  const int n = spec.n;
  const double origin = spec.kind == DomainKind::centered_square ? -0.5 : 0.0;

  Mesh mesh;
  std::vector<int> vertex_id((n + 1) * (n + 1), -1);
  auto grid_index = [n](int i, int j) { return j * (n + 1) + i; };

  auto square_in_hole = [&](int i, int j) {
    if (spec.kind != DomainKind::square_with_hole) return false;
    const int lo = 4 * n / 9, hi = 5 * n / 9;
    return i >= lo && i < hi && j >= lo && j < hi;
  };

  auto use_vertex = [&](int i, int j) -> int {
    int& id = vertex_id[grid_index(i, j)];
    if (id < 0) {
      id = mesh.num_vertices();
      mesh.vertices.push_back({origin + static_cast<double>(i) / n, origin + static_cast<double>(j) / n});
    }
    return id;
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (square_in_hole(i, j)) continue;
      const int v00 = use_vertex(i, j);
      const int v10 = use_vertex(i + 1, j);
      const int v11 = use_vertex(i + 1, j + 1);
      const int v01 = use_vertex(i, j + 1);
      mesh.cells.push_back({v00, v10, v11});
      mesh.cells.push_back({v00, v11, v01});
    }
  }

  mesh.boundary_facets = boundary_facets_of(
      mesh, spec.kind == DomainKind::square_with_hole ? hole_domain_tag : always_exterior);
  return mesh;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh fine;
  fine.vertices = mesh.vertices;

  std::map<std::array<int, 2>, int> midpoint;
  auto midpoint_of = [&](int a, int b) {
    const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = fine.num_vertices();
    fine.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) * 0.5);
    midpoint.emplace(key, id);
    return id;
  };

  for (const auto& cell : mesh.cells) {
    const int m01 = midpoint_of(cell[0], cell[1]);
    const int m12 = midpoint_of(cell[1], cell[2]);
    const int m20 = midpoint_of(cell[2], cell[0]);
    fine.cells.push_back({cell[0], m01, m20});
    fine.cells.push_back({cell[1], m12, m01});
    fine.cells.push_back({cell[2], m20, m12});
    fine.cells.push_back({m01, m12, m20});
  }

  for (const auto& facet : mesh.boundary_facets) {
    const int m = midpoint_of(facet.vertices[0], facet.vertices[1]);
    fine.boundary_facets.push_back({{facet.vertices[0], m}, facet.tag});
    fine.boundary_facets.push_back({{m, facet.vertices[1]}, facet.tag});
  }
  return fine;
}

CellGeometry cell_geometry(const Mesh& mesh, int cell) {
  if (cell < 0 || cell >= mesh.num_cells()) throw std::out_of_range("cell_geometry: bad cell index");
  const auto& c = mesh.cells[cell];
  CellGeometry g;
  for (int i = 0; i < 3; ++i) g.vertices[i] = mesh.vertices[c[i]];

  const Vec2 e1 = g.vertices[1] - g.vertices[0];
  const Vec2 e2 = g.vertices[2] - g.vertices[0];
  const double twice_area = cross(e1, e2);
  if (twice_area <= 0.0) throw std::runtime_error("cell_geometry: degenerate or inverted cell");
  g.area = 0.5 * twice_area;

  g.diameter = std::max({e1.norm(), e2.norm(), (g.vertices[2] - g.vertices[1]).norm()});

  // Rows of the inverse Jacobian are the gradients of the reference
  // coordinates b1, b2; b0 = 1 - b1 - b2.
  const Vec2 grad_b1{e2.y / twice_area, -e2.x / twice_area};
  const Vec2 grad_b2{-e1.y / twice_area, e1.x / twice_area};
  g.bary_gradients[0] = {-grad_b1.x - grad_b2.x, -grad_b1.y - grad_b2.y};
  g.bary_gradients[1] = grad_b1;
  g.bary_gradients[2] = grad_b2;
  return g;
}

std::array<double, 3> barycentric_coordinates(const CellGeometry& geom, const Vec2& p) {
  const Vec2 d = p - geom.vertices[0];
  const double b1 = geom.bary_gradients[1].dot(d);
  const double b2 = geom.bary_gradients[2].dot(d);
  return {1.0 - b1 - b2, b1, b2};
}

Vec2 facet_outward_normal(const Mesh& mesh, const BoundaryFacet& facet) {
  const Vec2 d = mesh.vertices[facet.vertices[1]] - mesh.vertices[facet.vertices[0]];
  const double len = d.norm();
  return {d.y / len, -d.x / len};
}

double facet_flow_indicator(const Mesh& mesh, const BoundaryFacet& facet, const Vec2& beta_at_midpoint) {
  return beta_at_midpoint.dot(facet_outward_normal(mesh, facet));
}

std::vector<std::array<int, 2>> collect_edges(const Mesh& mesh,
                                              std::vector<std::array<int, 3>>* cell_edges) {
  std::map<std::array<int, 2>, int> edge_id;
  std::vector<std::array<int, 2>> edges;
  if (cell_edges) cell_edges->assign(mesh.num_cells(), {-1, -1, -1});

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells[c];
    for (int e = 0; e < 3; ++e) {
      const int a = cell[(e + 1) % 3];
      const int b = cell[(e + 2) % 3];
      const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_id.emplace(key, static_cast<int>(edges.size()));
      if (inserted) edges.push_back(key);
      if (cell_edges) (*cell_edges)[c][e] = it->second;
    }
  }
  return edges;
}

void check_mesh(const Mesh& mesh) {
  std::map<std::array<int, 2>, int> edge_count;
  std::map<std::array<int, 2>, int> directed_count;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells[c];
    for (int v : cell) {
      if (v < 0 || v >= mesh.num_vertices()) throw std::runtime_error("check_mesh: vertex index out of range");
    }
    cell_geometry(mesh, c);  // throws on nonpositive area
    for (int e = 0; e < 3; ++e) {
      const int a = cell[(e + 1) % 3];
      const int b = cell[(e + 2) % 3];
      ++edge_count[{std::min(a, b), std::max(a, b)}];
      ++directed_count[{a, b}];
    }
  }
  for (const auto& [edge, count] : edge_count) {
    if (count != 1 && count != 2) throw std::runtime_error("check_mesh: edge shared by more than two cells");
    // Interior edges must be traversed once in each direction.
    if (count == 2 && (directed_count[edge] != 1 || directed_count[{edge[1], edge[0]}] != 1)) {
      throw std::runtime_error("check_mesh: interior edge traversed twice in the same direction");
    }
  }
  std::map<std::array<int, 2>, int> facet_seen;
  for (const auto& facet : mesh.boundary_facets) {
    const std::array<int, 2> key{std::min(facet.vertices[0], facet.vertices[1]),
                                 std::max(facet.vertices[0], facet.vertices[1])};
    auto it = edge_count.find(key);
    if (it == edge_count.end() || it->second != 1) {
      throw std::runtime_error("check_mesh: boundary facet is not a boundary edge");
    }
    if (++facet_seen[key] > 1) throw std::runtime_error("check_mesh: duplicate boundary facet");
  }
  int boundary_edges = 0;
  for (const auto& [edge, count] : edge_count) boundary_edges += count == 1 ? 1 : 0;
  if (boundary_edges != static_cast<int>(mesh.boundary_facets.size())) {
    throw std::runtime_error("check_mesh: boundary facet list incomplete");
  }
}

double total_area(const Mesh& mesh) {
  double area = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) area += cell_geometry(mesh, c).area;
  return area;
}

double max_cell_diameter(const Mesh& mesh) {
  double h = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) h = std::max(h, cell_geometry(mesh, c).diameter);
  return h;
}

}  // namespace bcfem
