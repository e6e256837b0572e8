#include "bdlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace bdlab {

Grid build_disk_grid(int n_r, int n_theta) {
  require(n_r >= 2, "build_disk_grid: need n_r >= 2");
  require(n_theta >= 4, "build_disk_grid: need n_theta >= 4");
  Grid g;
  g.kind = GridKind::disk;
  g.n = 2;
  g.n_r = n_r;
  g.n_th = n_theta;
  g.dr = 1.0 / n_r;
  g.dth = 2.0 * kPi / n_theta;
  g.h = g.dr;

  int nn = 1 + n_r * n_theta;
  g.x1.assign(nn, 0.0);
  g.x2.assign(nn, 0.0);
  g.r_of.assign(nn, 0.0);
  g.th_of.assign(nn, 0.0);
  g.area.assign(nn, 0.0);

  // center cell: disk of radius dr/2
  g.area[0] = kPi * (0.5 * g.dr) * (0.5 * g.dr);
  for (int i = 1; i <= n_r; ++i) {
    double r = i * g.dr;
    double rm = std::max(r - 0.5 * g.dr, 0.0);
    double rp = std::min(r + 0.5 * g.dr, 1.0);
    double cell = 0.5 * (rp * rp - rm * rm) * g.dth;
    for (int j = 0; j < n_theta; ++j) {
      int id = g.disk_id(i, j);
      double th = j * g.dth;
      g.r_of[id] = r;
      g.th_of[id] = th;
      g.x1[id] = r * std::cos(th);
      g.x2[id] = r * std::sin(th);
      g.area[id] = cell;
    }
  }

  for (int id = 0; id < nn; ++id) {
    if (id >= 1 + (n_r - 1) * n_theta) {
      g.boundary_idx.push_back(id);
    } else {
      g.interior_idx.push_back(id);
    }
  }
  g.normal.resize(g.boundary_idx.size());
  g.bnd_w.assign(g.boundary_idx.size(), g.dth);
  for (std::size_t k = 0; k < g.boundary_idx.size(); ++k) {
    int id = g.boundary_idx[k];
    g.normal[k] = {std::cos(g.th_of[id]), std::sin(g.th_of[id])};
  }
  return g;
}

Grid build_halfspace_grid(double R, double h) {
  require(R > 0 && h > 0, "build_halfspace_grid: need R > 0 and h > 0");
  require(h <= R / 4.0 + 1e-12, "build_halfspace_grid: too coarse, need h <= R/4");
  double ratio = R / h;
  require(std::abs(ratio - std::round(ratio)) < 1e-9,
          "build_halfspace_grid: h must divide R exactly");

  Grid g;
  g.kind = GridKind::halfspace;
  g.n = 2;
  g.R = R;
  g.h = h;
  int m = static_cast<int>(std::round(ratio));
  g.nx = 2 * m;  // ix = 0..2m over [-R, R]
  g.nz = m;      // iz = 0..m over [0, R]

  int nn = (g.nx + 1) * (g.nz + 1);
  g.x1.assign(nn, 0.0);
  g.x2.assign(nn, 0.0);
  g.is_boundary.assign(nn, 0);
  g.is_wall.assign(nn, 0);

  for (int ix = 0; ix <= g.nx; ++ix) {
    for (int iz = 0; iz <= g.nz; ++iz) {
      int id = g.hs_id(ix, iz);
      g.x1[id] = -R + ix * h;
      g.x2[id] = iz * h;
      bool bottom = (iz == 0);
      bool side = (ix == 0 || ix == g.nx);
      bool top = (iz == g.nz);
      if (bottom) g.is_boundary[id] = 1;  // all x_n = 0 nodes, corners included
      if (side || top) g.is_wall[id] = 1;
    }
  }
  for (int id = 0; id < nn; ++id) {
    if (g.is_boundary[id]) {
      g.boundary_idx.push_back(id);
      if (!g.is_wall[id]) g.dyn_idx.push_back(id);
    } else if (!g.is_wall[id]) {
      g.interior_idx.push_back(id);
    }
  }
  g.normal.assign(g.boundary_idx.size(), {0.0, -1.0});
  g.bnd_w.assign(g.boundary_idx.size(), h);
  for (std::size_t k = 0; k < g.boundary_idx.size(); ++k) {
    int id = g.boundary_idx[k];
    if (g.is_wall[id]) g.bnd_w[k] = 0.5 * h;  // corner half-cells
  }
  return g;
}

double clip_w(double c, double h, double a, double b) {
  double lo = std::max(c - 0.5 * h, a);
  double hi = std::min(c + 0.5 * h, b);
  return std::max(hi - lo, 0.0);
}

double Cylinder::int_measure() const {
  double s = 0.0;
  for (double w : int_w) s += w;
  double ts = 0.0;
  for (double w : t_w) ts += w;
  return s * ts;
}

double Cylinder::bnd_measure() const {
  double s = 0.0;
  for (double w : bnd_w) s += w;
  double ts = 0.0;
  for (double w : t_w) ts += w;
  return s * ts;
}

double Cylinder::int_slice(const Stamps& F, int m) const {
  double s = 0.0;
  for (std::size_t k = 0; k < int_nodes.size(); ++k) s += int_w[k] * F[m][int_nodes[k]];
  return s;
}

double Cylinder::bnd_slice(const Stamps& F, int m) const {
  double s = 0.0;
  for (std::size_t k = 0; k < bnd_nodes.size(); ++k) s += bnd_w[k] * F[m][bnd_nodes[k]];
  return s;
}

double Cylinder::int_integral(const Stamps& F) const {
  double s = 0.0;
  for (std::size_t k = 0; k < t_idx.size(); ++k) s += t_w[k] * int_slice(F, t_idx[k]);
  return s;
}

double Cylinder::bnd_integral(const Stamps& F) const {
  double s = 0.0;
  for (std::size_t k = 0; k < t_idx.size(); ++k) s += t_w[k] * bnd_slice(F, t_idx[k]);
  return s;
}

Cylinder cylinder_nodes(const Grid& g, double t0, double tau, int M, double rho,
                        double tc) {
  require(g.kind == GridKind::halfspace, "cylinder_nodes: halfspace grids only");
  require(rho >= 2.0 * g.h - 1e-12,
          "cylinder_nodes: rho too small, need rho >= 2h (empty carve)");
  require(rho <= g.R + 1e-12, "cylinder_nodes: rho exceeds domain radius R");

  Cylinder c;
  c.rho = rho;
  int nn = g.nnode();
  for (int id = 0; id < nn; ++id) {
    double x = g.x1[id], z = g.x2[id];
    if (std::hypot(x, z) < rho && z > 0.0) {
      double w = clip_w(x, g.h, -rho, rho) * clip_w(z, g.h, 0.0, rho);
      c.int_nodes.push_back(id);
      c.int_w.push_back(w);
    }
    if (z == 0.0 && std::abs(x) < rho) {
      c.bnd_nodes.push_back(id);
      c.bnd_w.push_back(clip_w(x, g.h, -rho, rho));
    }
  }
  for (int mstep = 0; mstep <= M; ++mstep) {
    double t = t0 + mstep * tau;
    if (t > tc - rho && t < tc + rho) {
      c.t_idx.push_back(mstep);
      c.t_w.push_back(clip_w(t, tau, tc - rho, tc + rho));
    }
  }
  require(!c.int_nodes.empty() && !c.bnd_nodes.empty() && !c.t_idx.empty(),
          "cylinder_nodes: empty carve");
  return c;
}

Cylinder disk_all_nodes(const Grid& g, double tau, int M) {
  require(g.kind == GridKind::disk, "disk_all_nodes: disk grids only");
  Cylinder c;
  c.rho = 1.0;
  int nn = g.nnode();
  for (int id = 0; id < nn; ++id) {
    c.int_nodes.push_back(id);
    c.int_w.push_back(g.area[id]);
  }
  c.bnd_nodes = g.boundary_idx;
  c.bnd_w.assign(g.boundary_idx.size(), g.dth);
  for (int mstep = 0; mstep <= M; ++mstep) {
    c.t_idx.push_back(mstep);
    c.t_w.push_back((mstep == 0 || mstep == M) ? 0.5 * tau : tau);
  }
  return c;
}

}  // namespace bdlab
