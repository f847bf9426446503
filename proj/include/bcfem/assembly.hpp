#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bcfem/coefficient.hpp"
#include "bcfem/function_space.hpp"
#include "bcfem/sparse.hpp"

namespace bcfem {

struct AssemblyOptions {
  bool parallel = false;          // OpenMP cell loop; serial loop is the reference
  int quadrature_exactness = -1;  // default 2k+2
};

/// M_ij = integral of phi_i phi_j; symmetric positive definite.
SparseMatrix assemble_mass(const FunctionSpace& space, const AssemblyOptions& opt = {});

/// A_ij = integral of kappa grad(phi_j) . grad(phi_i).
SparseMatrix assemble_diffusion(const FunctionSpace& space, const TensorField& kappa,
                                const AssemblyOptions& opt = {});

/// C_ij = integral of (beta . grad(phi_j)) phi_i.
SparseMatrix assemble_convection(const FunctionSpace& space, const VectorField& beta,
                                 const AssemblyOptions& opt = {});

struct NeumannData {
  FacetTag tag = FacetTag::exterior;
  ScalarField gamma;
};

/// b_i = integral of f phi_i, plus the facet term over tagged boundary
/// facets when Neumann data is given (1D Gauss, exactness >= 2k).
std::vector<double> assemble_load(const FunctionSpace& space, const ScalarField& f,
                                  const std::optional<NeumannData>& neumann = {},
                                  const AssemblyOptions& opt = {});

struct AssembledSystem {
  SparseMatrix A;
  std::vector<double> b;
  std::vector<int> dirichlet_dofs;     // recorded so the VI solver can fix lb = ub
  std::vector<double> dirichlet_values;
};

struct SupgOptions {
  // Fixed stabilization parameter instead of h / (2 |beta|); 0 recovers the
  // plain Galerkin operator for consistency checks.
  std::optional<double> delta_override;
};

/// Streamline-upwind stabilized operator and load: the Galerkin
/// convection-diffusion form plus delta (beta.grad u - div(kappa grad u))
/// (beta.grad v), with the strong second-order term expanded through exact
/// basis Hessians. delta = h_cell / (2 |beta(x)|) per quadrature point, |beta|
/// floored at 1e-12. kappa.row_divergence is required.
AssembledSystem assemble_supg(const FunctionSpace& space, const TensorField& kappa,
                              const VectorField& beta, const ScalarField& f,
                              const SupgOptions& supg_opt = {}, const AssemblyOptions& opt = {});

enum class DirichletMode { symmetric_elimination, row_replacement };

/// Fixes the listed dofs to the given values. Symmetric elimination moves
/// known columns to the right-hand side and keeps A symmetric; row
/// replacement only rewrites constrained rows (for nonsymmetric operators).
/// Idempotent.
void apply_dirichlet(AssembledSystem& system, std::span<const int> dofs,
                     std::span<const double> values,
                     DirichletMode mode = DirichletMode::symmetric_elimination);

int default_assembly_exactness(int degree);

}  // namespace bcfem
