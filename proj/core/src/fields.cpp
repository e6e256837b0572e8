#include "bdlab/fields.hpp"

#include <cmath>

namespace bdlab {

namespace {

void dx_halfspace(const Grid& g, const Vec& u, Vec& d1, Vec& d2) {
  int nx = g.nx, nz = g.nz;
  double h = g.h;
  auto v = [&](int ix, int iz) { return u[g.hs_id(ix, iz)]; };
  for (int ix = 0; ix <= nx; ++ix)
    for (int iz = 0; iz <= nz; ++iz) {
      int id = g.hs_id(ix, iz);
      double a;
      if (ix == 0)
        a = (-3.0 * v(0, iz) + 4.0 * v(1, iz) - v(2, iz)) / (2.0 * h);
      else if (ix == nx)
        a = (3.0 * v(nx, iz) - 4.0 * v(nx - 1, iz) + v(nx - 2, iz)) / (2.0 * h);
      else
        a = (v(ix + 1, iz) - v(ix - 1, iz)) / (2.0 * h);
      d1[id] = a;
      double b;
      if (iz == 0)
        b = (-3.0 * v(ix, 0) + 4.0 * v(ix, 1) - v(ix, 2)) / (2.0 * h);
      else if (iz == nz)
        b = (3.0 * v(ix, nz) - 4.0 * v(ix, nz - 1) + v(ix, nz - 2)) / (2.0 * h);
      else
        b = (v(ix, iz + 1) - v(ix, iz - 1)) / (2.0 * h);
      d2[id] = b;
    }
}

void dx_disk(const Grid& g, const Vec& u, Vec& d1, Vec& d2) {
  double dr = g.dr, dth = g.dth;
  for (int i = 1; i <= g.n_r; ++i) {
    for (int j = 0; j < g.n_th; ++j) {
      int id = g.disk_id(i, j);
      double inner = (i == 1) ? u[0] : u[g.disk_id(i - 1, j)];
      if (i < g.n_r) {
        d1[id] = (u[g.disk_id(i + 1, j)] - inner) / (2.0 * dr);
      } else {
        double inner2 = (i >= 3) ? u[g.disk_id(i - 2, j)] : u[0];
        d1[id] = (3.0 * u[id] - 4.0 * inner + inner2) / (2.0 * dr);
      }
      d2[id] = (u[g.disk_id(i, j + 1)] - u[g.disk_id(i, j - 1)]) /
               (2.0 * dth * (i * dr));
    }
  }
  // center: least-squares gradient magnitude from ring 1
  double gx = 0.0, gy = 0.0;
  for (int j = 0; j < g.n_th; ++j) {
    int id = g.disk_id(1, j);
    gx += (u[id] - u[0]) * std::cos(g.th_of[id]);
    gy += (u[id] - u[0]) * std::sin(g.th_of[id]);
  }
  gx *= 2.0 / (g.n_th * dr);
  gy *= 2.0 / (g.n_th * dr);
  d1[0] = std::hypot(gx, gy);
  d2[0] = 0.0;
}

}  // namespace

void dx_fields(const Grid& g, const Vec& u, Vec& d1, Vec& d2) {
  d1.assign(g.nnode(), 0.0);
  d2.assign(g.nnode(), 0.0);
  if (g.kind == GridKind::halfspace)
    dx_halfspace(g, u, d1, d2);
  else
    dx_disk(g, u, d1, d2);
}

Stamps time_derivative(const Stamps& U, double tau) {
  int M = static_cast<int>(U.size()) - 1;
  require(M >= 1, "time_derivative: need at least two stamps");
  std::size_t nn = U[0].size();
  Stamps UT(M + 1, Vec(nn, 0.0));
  if (M >= 2) {
    for (int m = 1; m < M; ++m)
      for (std::size_t i = 0; i < nn; ++i)
        UT[m][i] = (U[m + 1][i] - U[m - 1][i]) / (2.0 * tau);
    for (std::size_t i = 0; i < nn; ++i) {
      UT[0][i] = (-3.0 * U[0][i] + 4.0 * U[1][i] - U[2][i]) / (2.0 * tau);
      UT[M][i] = (3.0 * U[M][i] - 4.0 * U[M - 1][i] + U[M - 2][i]) / (2.0 * tau);
    }
  } else {
    for (std::size_t i = 0; i < nn; ++i) {
      UT[0][i] = (U[1][i] - U[0][i]) / tau;
      UT[1][i] = UT[0][i];
    }
  }
  return UT;
}

TrajFields compute_fields(const Grid& g, const Stamps& U, double tau) {
  TrajFields f;
  int M = static_cast<int>(U.size()) - 1;
  f.d1.assign(M + 1, Vec());
  f.d2.assign(M + 1, Vec());
  for (int m = 0; m <= M; ++m) dx_fields(g, U[m], f.d1[m], f.d2[m]);
  f.dt = time_derivative(U, tau);
  return f;
}

}  // namespace bdlab
