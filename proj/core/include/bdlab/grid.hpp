#pragma once
#include <array>
#include <cstdint>

#include "bdlab/common.hpp"

namespace bdlab {

enum class GridKind { disk, halfspace };

// Discrete computational domain. Two kinds share one node-indexed layout:
//  - disk: polar grid of the unit disk; node 0 is the center, ring i>=1 holds
//    n_th nodes at radius i*dr; the boundary is the outer ring r=1.
//  - halfspace: uniform Cartesian grid of the rectangle [-R,R] x [0,R];
//    node id = ix*(nz+1) + iz; the boundary is x_n = 0, the other three
//    sides are artificial Dirichlet walls.
// The data model carries the spatial dimension n; shipped experiments use n=2.
struct Grid {
  GridKind kind = GridKind::halfspace;
  int n = 2;
  double h = 0;  // spacing (disk: radial spacing dr)

  Vec x1, x2;  // node coordinates (halfspace: x2 is the normal coordinate x_n)
  std::vector<int> interior_idx, boundary_idx;
  std::vector<std::array<double, 2>> normal;  // unit outer normal per boundary_idx entry
  Vec bnd_w;  // lumped surface measure per boundary_idx entry

  // halfspace
  double R = 0;
  int nx = 0, nz = 0;
  std::vector<std::uint8_t> is_boundary, is_wall;  // per node
  std::vector<int> dyn_idx;  // dynamic boundary nodes = boundary minus wall corners

  // disk
  int n_r = 0, n_th = 0;
  double dr = 0, dth = 0;
  Vec r_of, th_of;  // per node
  Vec area;         // per node annular cell area, clipped at r=1

  int nnode() const { return static_cast<int>(x1.size()); }
  int hs_id(int ix, int iz) const { return ix * (nz + 1) + iz; }
  int disk_id(int ring, int j) const {
    int jj = j % n_th;
    if (jj < 0) jj += n_th;
    return 1 + (ring - 1) * n_th + jj;
  }
};

Grid build_disk_grid(int n_r, int n_theta);
Grid build_halfspace_grid(double R, double h);

// Length of [c-h/2, c+h/2] ∩ (a, b): the per-axis clipped-cell quadrature
// weight. Reduces to the trapezoid rule on a full axis.
double clip_w(double c, double h, double a, double b);

// Node-time subsets of a parabolic cylinder carved from a halfspace grid:
// Q_rho^+ = {|x| < rho, x_n > 0} and ∂'Q_rho^+ = {|x_1| < rho, x_n = 0},
// time stamps strictly inside (tc - rho, tc + rho), clipped weights per axis.
struct Cylinder {
  double rho = 0;
  std::vector<int> int_nodes, bnd_nodes;
  Vec int_w, bnd_w;
  std::vector<int> t_idx;
  Vec t_w;

  double int_measure() const;
  double bnd_measure() const;

  // Space-time integrals of a stamped field and single-slice space integrals
  // (the slice index m is a global stamp index, as stored in t_idx).
  double int_integral(const Stamps& F) const;
  double bnd_integral(const Stamps& F) const;
  double int_slice(const Stamps& F, int m) const;
  double bnd_slice(const Stamps& F, int m) const;
};

// Carve a cylinder against the time axis t0 + m*tau, m = 0..M, centered at
// time tc. Preconditions: 2h <= rho <= R and a nonempty carve.
Cylinder cylinder_nodes(const Grid& g, double t0, double tau, int M, double rho,
                        double tc = 0.0);

// Whole-domain "cylinder" of a disk trajectory: interior weights are the
// annular cell areas over every node, boundary weights the arc measures;
// time weights are the full trapezoid rule over all stamps. Used by the
// global-estimate right-hand sides.
Cylinder disk_all_nodes(const Grid& g, double tau, int M);

}  // namespace bdlab
