#pragma once

// Univariate Levin method: Chebyshev collocation of p' + i g' p = f on an
// interval and an adaptive bisection driver on top of it.

#include <functional>

#include "dlevin/linsolve.hpp"

namespace dlevin {

// f(t) exp(i g(t)) on [lo, hi].
struct Oscillator1D {
  std::function<cplx(double)> amplitude;
  std::function<double(double)> phase;
  double lo = -1.0;
  double hi = 1.0;
};

struct Levin1DConfig {
  int k1d = 12;
  double eps_sub = 1e-12;
  double eps_trunc_rel = 5e-13;
  int max_depth = 60;
  SolveConfig solver;
};

struct Levin1DResult {
  cplx value = 0.0;
  int sub_intervals = 0;
  long fevals = 0;
  bool depth_exceeded = false;
};

// Fixed-order estimate on [lo, hi]. Throws EvaluationError on non-finite
// samples.
cplx levin1d_fixed(const Oscillator1D& osc, double lo, double hi, int k1d, double eps_trunc_rel,
                   const SolveConfig& solver = {});

// Bisects until the whole-interval estimate agrees with the sum over its two
// halves to within cfg.eps_sub. Intervals reaching cfg.max_depth are
// accepted and flagged.
Levin1DResult levin1d_adaptive(const Oscillator1D& osc, double lo, double hi,
                               const Levin1DConfig& cfg);

// Shared fiber kernel: solves (D_k + i diag(dg)) p = rhs, where dg are the
// reference-coordinate phase derivatives. Returns the truncation rank.
int solve_levin_fiber(const DiffMatrix& dk, const CVector& dg, const CVector& rhs,
                      double eps_trunc_rel, const SolveConfig& solver, CVector& p);

}  // namespace dlevin
