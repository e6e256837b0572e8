#include "bdlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bdlab {

Csr Csr::from_coo(const Coo& coo) {
  Csr m;
  m.n = coo.n;
  std::size_t nnz_in = coo.vals.size();
  std::vector<std::size_t> order(nnz_in);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (coo.rows[a] != coo.rows[b]) return coo.rows[a] < coo.rows[b];
    return coo.cols[a] < coo.cols[b];
  });
  m.row_ptr.assign(m.n + 1, 0);
  int last_row = -1;
  for (std::size_t k = 0; k < nnz_in; ++k) {
    std::size_t i = order[k];
    if (!m.col_idx.empty() && coo.rows[i] == last_row && coo.cols[i] == m.col_idx.back()) {
      m.vals.back() += coo.vals[i];
    } else {
      m.col_idx.push_back(coo.cols[i]);
      m.vals.push_back(coo.vals[i]);
      last_row = coo.rows[i];
      m.row_ptr[coo.rows[i] + 1] += 1;
    }
  }
  for (int r = 0; r < m.n; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

void Csr::matvec(const Vec& x, Vec& y) const {
  y.assign(n, 0.0);
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[col_idx[k]];
    y[r] = s;
  }
}

Vec Csr::matvec(const Vec& x) const {
  Vec y;
  matvec(x, y);
  return y;
}

Vec Csr::diagonal() const {
  Vec d(n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      if (col_idx[k] == r) d[r] += vals[k];
  return d;
}

double Csr::row_sum(int r) const {
  double s = 0.0;
  for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k];
  return s;
}

CgReport solve_pinned(const Csr& S, const std::vector<std::uint8_t>& fixed,
                      const Vec& fixed_vals, const Vec& rhs, Vec& x, double tol,
                      int max_iter) {
  int n = S.n;
  require(static_cast<int>(fixed.size()) == n && static_cast<int>(rhs.size()) == n,
          "solve_pinned: size mismatch");
  if (static_cast<int>(x.size()) != n) x.assign(n, 0.0);

  Vec z(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (fixed[i]) z[i] = fixed_vals[i];
  Vec b = S.matvec(z);
  double bnorm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    b[i] = fixed[i] ? 0.0 : rhs[i] - b[i];
    bnorm2 += b[i] * b[i];
  }
  double bnorm = std::sqrt(bnorm2);

  for (int i = 0; i < n; ++i)
    if (fixed[i]) x[i] = 0.0;

  CgReport rep;
  if (bnorm == 0.0) {
    x = z;
    rep.converged = true;
    return rep;
  }

  Vec dinv(n, 0.0);
  {
    Vec d = S.diagonal();
    for (int i = 0; i < n; ++i)
      if (!fixed[i]) {
        require(d[i] > 0.0, "solve_pinned: nonpositive diagonal on a free row");
        dinv[i] = 1.0 / d[i];
      }
  }

  Vec r = S.matvec(x);
  for (int i = 0; i < n; ++i) r[i] = fixed[i] ? 0.0 : b[i] - r[i];
  Vec p(n, 0.0), q(n), s(n);
  double rz = 0.0;
  for (int i = 0; i < n; ++i) {
    p[i] = dinv[i] * r[i];
    rz += r[i] * p[i];
  }
  double rnorm2 = 0.0;
  for (int i = 0; i < n; ++i) rnorm2 += r[i] * r[i];

  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(rnorm2) <= tol * bnorm) {
      rep.converged = true;
      break;
    }
    S.matvec(p, q);
    double pq = 0.0;
    for (int i = 0; i < n; ++i) {
      if (fixed[i]) q[i] = 0.0;
      pq += p[i] * q[i];
    }
    require(pq > 0.0, "solve_pinned: operator not positive definite on free rows");
    double alpha = rz / pq;
    rnorm2 = 0.0;
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
      s[i] = dinv[i] * r[i];
      rnorm2 += r[i] * r[i];
      rz_new += r[i] * s[i];
    }
    double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = s[i] + beta * p[i];
    rep.iters = it + 1;
  }
  rep.relres = std::sqrt(rnorm2) / bnorm;
  if (std::sqrt(rnorm2) <= tol * bnorm) rep.converged = true;
  if (!rep.converged)
    fail("solve_pinned: conjugate gradients failed to converge (relres = " +
         std::to_string(rep.relres) + " after " + std::to_string(rep.iters) +
         " iterations, cap " + std::to_string(max_iter) + ")");
  for (int i = 0; i < n; ++i)
    if (fixed[i]) x[i] = fixed_vals[i];
  return rep;
}

}  // namespace bdlab
