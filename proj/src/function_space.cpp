#include "bcfem/function_space.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bcfem {

namespace {

// Local slot classification for a multiindex: which entity carries its dof.
struct SlotInfo {
  DofEntityKind kind;
  int a = -1, b = -1;  // local vertices of the entity (vertex: a; edge: a,b)
};

SlotInfo classify_slot(const MultiIndex& mi) {
  const int n = mi.degree();
  for (int i = 0; i < 3; ++i) {
    if (mi[i] == n) return {DofEntityKind::vertex, i, -1};
  }
  for (int i = 0; i < 3; ++i) {
    if (mi[i] == 0) {
      const int a = (i + 1) % 3, b = (i + 2) % 3;
      return {DofEntityKind::edge, std::min(a, b), std::max(a, b)};
    }
  }
  return {DofEntityKind::interior, -1, -1};
}

}  // namespace

FunctionSpace build_space(const Mesh& mesh, int degree) {
  if (degree < 1 || degree > 3) throw std::invalid_argument("build_space: degree must be 1, 2, or 3");

  FunctionSpace space;
  space.mesh = &mesh;
  space.degree = degree;
  space.cell_multiindices = enumerate_multiindices(degree);
  space.edges = collect_edges(mesh, &space.cell_edges);

  const int k = degree;
  const int V = mesh.num_vertices();
  const int E = space.num_edges();
  const int C = mesh.num_cells();
  const int edge_dofs = k - 1;
  const int interior_dofs = (k - 1) * (k - 2) / 2;
  space.ndofs = V + edge_dofs * E + interior_dofs * C;

  space.dof_entity.resize(space.ndofs);
  space.dof_position.assign(space.ndofs, Vec2{});
  for (int v = 0; v < V; ++v) {
    space.dof_entity[v] = {DofEntityKind::vertex, v};
    space.dof_position[v] = mesh.vertices[v];
  }
  for (int e = 0; e < E; ++e) {
    const Vec2 a = mesh.vertices[space.edges[e][0]];
    const Vec2 b = mesh.vertices[space.edges[e][1]];
    for (int m = 1; m <= edge_dofs; ++m) {
      const int dof = V + e * edge_dofs + (m - 1);
      space.dof_entity[dof] = {DofEntityKind::edge, e};
      space.dof_position[dof] = a + (b - a) * (static_cast<double>(m) / k);
    }
  }

  space.cell_dofs.assign(C, std::vector<int>(space.dofs_per_cell(), -1));
  for (int c = 0; c < C; ++c) {
    const auto& cell = mesh.cells[c];
    int interior_count = 0;
    for (int slot = 0; slot < space.dofs_per_cell(); ++slot) {
      const MultiIndex& mi = space.cell_multiindices[slot];
      const SlotInfo info = classify_slot(mi);
      int dof = -1;
      switch (info.kind) {
        case DofEntityKind::vertex:
          dof = cell[info.a];
          break;
        case DofEntityKind::edge: {
          const int ga = cell[info.a], gb = cell[info.b];
          const int local_opposite = 3 - info.a - info.b;
          const int e = space.cell_edges[c][local_opposite];
          // Lattice index counted from the canonical (smaller-id) endpoint.
          const int m = space.edges[e][0] == ga ? mi[info.b] : mi[info.a];
          dof = V + e * edge_dofs + (m - 1);
          break;
        }
        case DofEntityKind::interior: {
          dof = V + edge_dofs * E + interior_dofs * c + interior_count;
          space.dof_entity[dof] = {DofEntityKind::interior, c};
          Vec2 pos{0.0, 0.0};
          for (int i = 0; i < 3; ++i) pos += mesh.vertices[cell[i]] * (static_cast<double>(mi[i]) / k);
          space.dof_position[dof] = pos;
          ++interior_count;
          break;
        }
      }
      space.cell_dofs[c][slot] = dof;
    }
  }
  return space;
}

std::vector<int> dirichlet_dofs(const FunctionSpace& space, std::span<const FacetTag> tags) {
  std::set<FacetTag> tag_set(tags.begin(), tags.end());
  std::set<int> dofs;
  const int k = space.degree;
  const int V = space.mesh->num_vertices();

  std::map<std::array<int, 2>, int> edge_lookup;
  for (int e = 0; e < space.num_edges(); ++e) edge_lookup[space.edges[e]] = e;

  for (const auto& facet : space.mesh->boundary_facets) {
    if (!tag_set.count(facet.tag)) continue;
    dofs.insert(facet.vertices[0]);
    dofs.insert(facet.vertices[1]);
    const std::array<int, 2> key{std::min(facet.vertices[0], facet.vertices[1]),
                                 std::max(facet.vertices[0], facet.vertices[1])};
    const int e = edge_lookup.at(key);
    for (int m = 1; m <= k - 1; ++m) dofs.insert(V + e * (k - 1) + (m - 1));
  }
  return {dofs.begin(), dofs.end()};
}

double evaluate_in_cell(const FEFunction& f, int cell, const Bary& point) {
  const FunctionSpace& space = *f.space;
  const CellGeometry geom = cell_geometry(*space.mesh, cell);
  const auto tab = tabulate(space.degree, geom, std::span<const Bary>(&point, 1), 0);
  double value = 0.0;
  for (int slot = 0; slot < space.dofs_per_cell(); ++slot) {
    value += f.coeffs[space.cell_dofs[cell][slot]] * tab.value(slot, 0);
  }
  return value;
}

double evaluate(const FEFunction& f, const Vec2& point) {
  const FunctionSpace& space = *f.space;
  for (int c = 0; c < space.mesh->num_cells(); ++c) {
    const CellGeometry geom = cell_geometry(*space.mesh, c);
    Bary b = barycentric_coordinates(geom, point);
    if (b[0] >= -1e-10 && b[1] >= -1e-10 && b[2] >= -1e-10) {
      for (double& bi : b) bi = std::max(bi, 0.0);
      const double sum = b[0] + b[1] + b[2];
      for (double& bi : b) bi /= sum;
      return evaluate_in_cell(f, c, b);
    }
  }
  throw std::domain_error("evaluate: point lies outside the mesh");
}

FEFunction interpolate_field(const FunctionSpace& space, const std::function<double(Vec2)>& field) {
  const int k = space.degree;
  const Mesh& mesh = *space.mesh;
  FEFunction f(space);

  for (int v = 0; v < mesh.num_vertices(); ++v) f.coeffs[v] = field(mesh.vertices[v]);

  // Edge dofs: the trace on an edge is a univariate degree-k Bernstein
  // polynomial, so solve the (k-1)-point lattice system per edge.
  const int V = mesh.num_vertices();
  if (k >= 2) {
    for (int e = 0; e < space.num_edges(); ++e) {
      const Vec2 a = mesh.vertices[space.edges[e][0]];
      const Vec2 b = mesh.vertices[space.edges[e][1]];
      const double ca = f.coeffs[space.edges[e][0]];
      const double cb = f.coeffs[space.edges[e][1]];
      Eigen::MatrixXd A(k - 1, k - 1);
      Eigen::VectorXd rhs(k - 1);
      for (int row = 1; row <= k - 1; ++row) {
        const double t = static_cast<double>(row) / k;
        rhs(row - 1) = field(a + (b - a) * t) - ca * univariate_bernstein(k, 0, t) -
                       cb * univariate_bernstein(k, k, t);
        for (int m = 1; m <= k - 1; ++m) A(row - 1, m - 1) = univariate_bernstein(k, m, t);
      }
      const Eigen::VectorXd c = A.fullPivLu().solve(rhs);
      for (int m = 1; m <= k - 1; ++m) f.coeffs[V + e * (k - 1) + (m - 1)] = c(m - 1);
    }
  }

  // Interior dofs: solve the remaining lattice conditions per cell.
  const int interior_dofs = (k - 1) * (k - 2) / 2;
  if (interior_dofs > 0) {
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const CellGeometry geom = cell_geometry(mesh, c);
      std::vector<int> interior_slots;
      std::vector<Bary> lattice;
      for (int slot = 0; slot < space.dofs_per_cell(); ++slot) {
        const MultiIndex& mi = space.cell_multiindices[slot];
        if (mi[0] > 0 && mi[1] > 0 && mi[2] > 0) {
          interior_slots.push_back(slot);
          lattice.push_back({static_cast<double>(mi[0]) / k, static_cast<double>(mi[1]) / k,
                             static_cast<double>(mi[2]) / k});
        }
      }
      const auto tab = tabulate(k, geom, lattice, 0);
      Eigen::MatrixXd A(interior_dofs, interior_dofs);
      Eigen::VectorXd rhs(interior_dofs);
      for (int row = 0; row < interior_dofs; ++row) {
        Vec2 pos{0.0, 0.0};
        const MultiIndex& mi = space.cell_multiindices[interior_slots[row]];
        for (int i = 0; i < 3; ++i) {
          pos += mesh.vertices[mesh.cells[c][i]] * (static_cast<double>(mi[i]) / k);
        }
        double known = 0.0;
        for (int slot = 0; slot < space.dofs_per_cell(); ++slot) {
          const MultiIndex& smi = space.cell_multiindices[slot];
          if (smi[0] > 0 && smi[1] > 0 && smi[2] > 0) continue;
          known += f.coeffs[space.cell_dofs[c][slot]] * tab.value(slot, row);
        }
        rhs(row) = field(pos) - known;
        for (int col = 0; col < interior_dofs; ++col) {
          A(row, col) = tab.value(interior_slots[col], row);
        }
      }
      const Eigen::VectorXd sol = A.fullPivLu().solve(rhs);
      for (int row = 0; row < interior_dofs; ++row) {
        f.coeffs[space.cell_dofs[c][interior_slots[row]]] = sol(row);
      }
    }
  }
  return f;
}

BoundsBox BoundsBox::uniform(int n, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("BoundsBox: lb must not exceed ub");
  BoundsBox box;
  box.lb.assign(n, lo);
  box.ub.assign(n, hi);
  return box;
}

bool BoundsBox::contains(std::span<const double> x, double tol) const {
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lb[i] - tol || x[i] > ub[i] + tol) return false;
  }
  return true;
}

}  // namespace bcfem
