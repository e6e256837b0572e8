#pragma once
#include <cstdint>

#include "bdlab/common.hpp"

namespace bdlab {

// Triplet accumulator; duplicate (row, col) entries sum on conversion.
struct Coo {
  int n = 0;
  std::vector<int> rows, cols;
  Vec vals;

  explicit Coo(int n_) : n(n_) {}
  void add(int r, int c, double v) {
    rows.push_back(r);
    cols.push_back(c);
    vals.push_back(v);
  }
};

struct Csr {
  int n = 0;
  std::vector<int> row_ptr, col_idx;
  Vec vals;

  static Csr from_coo(const Coo& coo);
  void matvec(const Vec& x, Vec& y) const;
  Vec matvec(const Vec& x) const;
  Vec diagonal() const;
  double row_sum(int r) const;
};

struct CgReport {
  int iters = 0;
  double relres = 0.0;
  bool converged = false;
};

// Jacobi-preconditioned conjugate gradients on the free rows of S, with the
// nodes flagged in `fixed` pinned to fixed_vals.  x carries the warm start on
// entry (free entries only are used) and the full solution on exit.
// Convergence: ||r||_2 <= tol * ||b_eff||_2 with b_eff = rhs - S*z restricted
// to free rows, z = fixed values extended by zero.  Throws on stagnation past
// max_iter.
CgReport solve_pinned(const Csr& S, const std::vector<std::uint8_t>& fixed,
                      const Vec& fixed_vals, const Vec& rhs, Vec& x, double tol,
                      int max_iter);

}  // namespace bdlab
