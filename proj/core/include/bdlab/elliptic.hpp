#pragma once
#include <functional>
#include <memory>

#include "bdlab/chart.hpp"
#include "bdlab/common.hpp"
#include "bdlab/grid.hpp"
#include "bdlab/sparse.hpp"

namespace bdlab {

// Scalar coefficient a(x1, x2, t); constant fields short-circuit evaluation
// and let the evolution layer reuse a factor-free system across steps.
struct ScalarField {
  std::function<double(double, double, double)> fn;
  bool is_const = true;
  double value = 0.0;

  static ScalarField constant(double c) {
    ScalarField s;
    s.is_const = true;
    s.value = c;
    return s;
  }
  static ScalarField of(std::function<double(double, double, double)> f) {
    ScalarField s;
    s.fn = std::move(f);
    s.is_const = false;
    return s;
  }
  double operator()(double x1, double x2, double t) const {
    return is_const ? value : fn(x1, x2, t);
  }
};

// Flux-form stiffness for div(a a_ij grad u).  The matrix spans all nodes;
// Dirichlet data is pinned at solve time, so boundary coupling lives in the
// full rows.  Halfspace assembly is normalized by 1/h^2 (interior rows are
// then literally the 5-point stencil scaled by 1/h^2 for a=1, identity
// chart); the matching normalization of boundary_mass cancels it in every
// solve.
struct Operator {
  Csr A;
  const Grid* grid = nullptr;
  bool symmetric = true;
};

Operator assemble(const Grid& g, const ScalarField& a, double t, double Lambda,
                  const FlattenedChart* chart = nullptr);

// Lumped boundary measure per node (zero off the boundary): halfspace
// m = clipped dual length / phitilde, normalized by 1/h^2 to match assemble;
// disk m = dtheta.
Vec boundary_mass(const Grid& g, const FlattenedChart* chart = nullptr);

// Dirichlet solve A u = 0 with pinned data.  For disk grids gb runs over
// boundary_idx.  For halfspace grids gb runs over dyn_idx and the walls
// (sides, top, corners) take wall values (zero when wall == nullptr; wall is
// a full-length nodal array otherwise).
Vec solve_dirichlet(const Operator& op, const Vec& gb, double tol = 1e-10,
                    const Vec* wall = nullptr);

// Outer-normal derivative on the boundary (second-order one-sided stencil
// along -nu): halfspace nu = -e_n, disk nu = radial.
Vec normal_derivative(const Grid& g, const Vec& u);

// Dirichlet-to-Neumann: normal derivative of the a-harmonic extension.
Vec dtn_apply(const Operator& op, const Vec& gb, double tol = 1e-10);

// Dense DtN matrix (row-major n_b x n_b), columns = dtn_apply of indicators.
Vec dtn_matrix(const Operator& op, double tol = 1e-10);

// Eigenvalues (ascending) of a dense symmetric matrix via cyclic Jacobi.
Vec jacobi_eigenvalues(Vec mat, int n);

}  // namespace bdlab
