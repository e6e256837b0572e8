#include "bdlab/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace bdlab {

namespace {

Vec sample_field(const Grid& g, const ScalarField& a, double t) {
  int nn = g.nnode();
  Vec v(nn);
  for (int i = 0; i < nn; ++i) v[i] = a(g.x1[i], g.x2[i], t);
  return v;
}

void check_bound(const Vec& av, double Lambda) {
  require(Lambda > 1.0, "assemble: need Lambda > 1");
  double lo = 1.0 / Lambda - 1e-12, hi = Lambda + 1e-12;
  for (double v : av)
    if (!(v >= lo && v <= hi))
      fail("assemble: coefficient a = " + std::to_string(v) +
           " leaves [1/Lambda, Lambda] = [" + std::to_string(1.0 / Lambda) + ", " +
           std::to_string(Lambda) + "]");
}

Operator assemble_halfspace(const Grid& g, const Vec& av, const FlattenedChart* chart) {
  double h = g.h;
  int nn = g.nnode();
  Coo coo(nn);
  auto edge = [&](int p, int q, double w) {
    coo.add(p, p, w);
    coo.add(q, q, w);
    coo.add(p, q, -w);
    coo.add(q, p, -w);
  };
  auto a11 = [&](int i) { return chart ? chart->a11[i] : 1.0; };
  auto a22 = [&](int i) { return chart ? chart->a22[i] : 1.0; };

  // horizontal edges (a11 fluxes), dual length clipped in x_n
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iz = 0; iz <= g.nz; ++iz) {
      int p = g.hs_id(ix, iz), q = g.hs_id(ix + 1, iz);
      double c = 0.5 * (av[p] * a11(p) + av[q] * a11(q));
      double dual = clip_w(iz * h, h, 0.0, g.R);
      edge(p, q, c * dual / h);
    }
  // vertical edges (a22 fluxes), dual clipped in x1
  for (int ix = 0; ix <= g.nx; ++ix)
    for (int iz = 0; iz < g.nz; ++iz) {
      int p = g.hs_id(ix, iz), q = g.hs_id(ix, iz + 1);
      double c = 0.5 * (av[p] * a22(p) + av[q] * a22(q));
      double dual = clip_w(-g.R + ix * h, h, -g.R, g.R);
      edge(p, q, c * dual / h);
    }
  // cross term per cell, center-quadrature bilinear gradients:
  // contribution c*h^2*(d1u*d2v + d2u*d1v) with d1,d2 the (2h) differences
  if (chart) {
    bool any = false;
    for (double v : chart->a12)
      if (v != 0.0) any = true;
    if (any) {
      const int g1[4] = {-1, 1, -1, 1};  // SW SE NW NE
      const int g2[4] = {-1, -1, 1, 1};
      for (int ix = 0; ix < g.nx; ++ix)
        for (int iz = 0; iz < g.nz; ++iz) {
          int idx[4] = {g.hs_id(ix, iz), g.hs_id(ix + 1, iz), g.hs_id(ix, iz + 1),
                        g.hs_id(ix + 1, iz + 1)};
          double c = 0.0;
          for (int k = 0; k < 4; ++k) c += av[idx[k]] * chart->a12[idx[k]];
          c *= 0.25;
          if (c == 0.0) continue;
          for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v) {
              double w = c * (g1[u] * g2[v]) / 4.0;
              coo.add(idx[v], idx[u], w);
              coo.add(idx[u], idx[v], w);
            }
        }
    }
  }
  double scale = 1.0 / (h * h);
  for (double& v : coo.vals) v *= scale;
  Operator op;
  op.A = Csr::from_coo(coo);
  op.grid = &g;
  return op;
}

Operator assemble_disk(const Grid& g, const Vec& av) {
  int nn = g.nnode();
  Coo coo(nn);
  auto edge = [&](int p, int q, double w) {
    coo.add(p, p, w);
    coo.add(q, q, w);
    coo.add(p, q, -w);
    coo.add(q, p, -w);
  };
  double dr = g.dr, dth = g.dth;
  for (int j = 0; j < g.n_th; ++j) {
    {  // center to ring 1
      int p = 0, q = g.disk_id(1, j);
      double c = 0.5 * (av[p] + av[q]);
      edge(p, q, c * (0.5 * dr) * dth / dr);
    }
    for (int i = 1; i < g.n_r; ++i) {  // radial edges
      int p = g.disk_id(i, j), q = g.disk_id(i + 1, j);
      double c = 0.5 * (av[p] + av[q]);
      double rf = (i + 0.5) * dr;
      edge(p, q, c * rf * dth / dr);
    }
    for (int i = 1; i <= g.n_r; ++i) {  // angular edges
      int p = g.disk_id(i, j), q = g.disk_id(i, j + 1);
      double c = 0.5 * (av[p] + av[q]);
      double ri = i * dr;
      double rm = std::max(ri - 0.5 * dr, 0.0), rp = std::min(ri + 0.5 * dr, 1.0);
      edge(p, q, c * (rp - rm) / (ri * dth));
    }
  }
  Operator op;
  op.A = Csr::from_coo(coo);
  op.grid = &g;
  return op;
}

}  // namespace

Operator assemble(const Grid& g, const ScalarField& a, double t, double Lambda,
                  const FlattenedChart* chart) {
  Vec av = sample_field(g, a, t);
  check_bound(av, Lambda);
  if (g.kind == GridKind::halfspace) return assemble_halfspace(g, av, chart);
  require(chart == nullptr, "assemble: charts apply to halfspace grids only");
  return assemble_disk(g, av);
}

Vec boundary_mass(const Grid& g, const FlattenedChart* chart) {
  Vec m(g.nnode(), 0.0);
  if (g.kind == GridKind::halfspace) {
    double scale = 1.0 / (g.h * g.h);
    for (int id : g.boundary_idx) {
      double w = clip_w(g.x1[id], g.h, -g.R, g.R);
      double pt = chart ? chart->phitilde[id] : 1.0;
      m[id] = scale * w / pt;
    }
  } else {
    require(chart == nullptr, "boundary_mass: charts apply to halfspace grids only");
    for (int id : g.boundary_idx) m[id] = g.dth;
  }
  return m;
}

Vec solve_dirichlet(const Operator& op, const Vec& gb, double tol, const Vec* wall) {
  const Grid& g = *op.grid;
  require(tol > 0.0 && tol <= 1e-6, "solve_dirichlet: need tol in (0, 1e-6]");
  int nn = g.nnode();
  std::vector<std::uint8_t> fixed(nn, 0);
  Vec vals(nn, 0.0);
  if (g.kind == GridKind::disk) {
    require(gb.size() == g.boundary_idx.size(),
            "solve_dirichlet: boundary data size mismatch");
    for (std::size_t k = 0; k < g.boundary_idx.size(); ++k) {
      fixed[g.boundary_idx[k]] = 1;
      vals[g.boundary_idx[k]] = gb[k];
    }
  } else {
    require(gb.size() == g.dyn_idx.size(), "solve_dirichlet: boundary data size mismatch");
    for (int id = 0; id < nn; ++id)
      if (g.is_wall[id]) {
        fixed[id] = 1;
        vals[id] = wall ? (*wall)[id] : 0.0;
      }
    for (std::size_t k = 0; k < g.dyn_idx.size(); ++k) {
      fixed[g.dyn_idx[k]] = 1;
      vals[g.dyn_idx[k]] = gb[k];
    }
  }
  int nfree = 0;
  for (int i = 0; i < nn; ++i) nfree += fixed[i] ? 0 : 1;
  Vec rhs(nn, 0.0), x(nn, 0.0);
  solve_pinned(op.A, fixed, vals, rhs, x, tol, 20 * std::max(nfree, 1));
  return x;
}

Vec normal_derivative(const Grid& g, const Vec& u) {
  Vec out(g.boundary_idx.size(), 0.0);
  if (g.kind == GridKind::halfspace) {
    require(g.nz >= 2, "normal_derivative: grid too coarse for one-sided stencil");
    for (std::size_t k = 0; k < g.boundary_idx.size(); ++k) {
      int id = g.boundary_idx[k];
      int ix = id / (g.nz + 1);
      double dn = (-3.0 * u[g.hs_id(ix, 0)] + 4.0 * u[g.hs_id(ix, 1)] -
                   u[g.hs_id(ix, 2)]) /
                  (2.0 * g.h);
      out[k] = -dn;  // nu = -e_n
    }
  } else {
    require(g.n_r >= 2, "normal_derivative: grid too coarse for one-sided stencil");
    for (int j = 0; j < g.n_th; ++j) {
      double uN = u[g.disk_id(g.n_r, j)];
      double uN1 = u[g.disk_id(g.n_r - 1, j)];
      double uN2 = (g.n_r >= 3) ? u[g.disk_id(g.n_r - 2, j)] : u[0];
      out[j] = (3.0 * uN - 4.0 * uN1 + uN2) / (2.0 * g.dr);
    }
  }
  return out;
}

Vec dtn_apply(const Operator& op, const Vec& gb, double tol) {
  return normal_derivative(*op.grid, solve_dirichlet(op, gb, tol));
}

Vec dtn_matrix(const Operator& op, double tol) {
  const Grid& g = *op.grid;
  require(g.kind == GridKind::disk, "dtn_matrix: disk grids only");
  int nb = static_cast<int>(g.boundary_idx.size());
  require(nb <= 512, "dtn_matrix: boundary too large for dense assembly (> 512 nodes)");
  Vec B(static_cast<std::size_t>(nb) * nb, 0.0);
  Vec e(nb, 0.0);
  for (int j = 0; j < nb; ++j) {
    e[j] = 1.0;
    Vec col = dtn_apply(op, e, tol);
    e[j] = 0.0;
    for (int i = 0; i < nb; ++i) B[static_cast<std::size_t>(i) * nb + j] = col[i];
  }
  return B;
}

Vec jacobi_eigenvalues(Vec mat, int n) {
  auto at = [&](int i, int j) -> double& { return mat[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace bdlab
