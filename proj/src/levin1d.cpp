#include "dlevin/levin1d.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dlevin {

int solve_levin_fiber(const DiffMatrix& dk, const CVector& dg, const CVector& rhs,
                      double eps_trunc_rel, const SolveConfig& solver, CVector& p) {
  const cplx I(0.0, 1.0);
  if (solver.iteration_enabled) {
    const IterationResult it =
        diag_iteration_solve(dk, I * dg, rhs, solver.iteration_tol, solver.iteration_max);
    if (it.status == IterationStatus::converged) {
      p = it.solution;
      return dk.k;
    }
  }
  CMatrix A = dk.entries.cast<cplx>();
  A.diagonal() += I * dg;
  const TruncatedSolve ts = truncated_solve(A, rhs, eps_trunc_rel, solver.method);
  p = ts.solution;
  return ts.rank;
}

namespace {

struct Estimate1D {
  cplx value;
  long fevals;
};

Estimate1D fixed_estimate(const Oscillator1D& osc, double lo, double hi, int k,
                          double eps_trunc_rel, const SolveConfig& solver) {
  const ChebGrid1D& grid = cached_nodes(k);
  const DiffMatrix& dk = diff_matrix(k);
  CVector f(k);
  Eigen::VectorXd g(k);
  for (int j = 0; j < k; ++j) {
    const double t = to_physical(grid.nodes[j], lo, hi);
    f(j) = osc.amplitude(t);
    g(j) = osc.phase(t);
    if (!is_finite(f(j)) || !std::isfinite(g(j))) {
      throw EvaluationError("levin1d: non-finite sample at t=" + std::to_string(t));
    }
  }
  if (f.cwiseAbs().maxCoeff() == 0.0) return {0.0, k};

  const CVector dg = (dk.entries * g).cast<cplx>();
  const CVector rhs = (0.5 * (hi - lo)) * f;
  CVector p;
  solve_levin_fiber(dk, dg, rhs, eps_trunc_rel, solver, p);
  const cplx I(0.0, 1.0);
  return {p(k - 1) * std::exp(I * g(k - 1)) - p(0) * std::exp(I * g(0)), k};
}

}  // namespace

cplx levin1d_fixed(const Oscillator1D& osc, double lo, double hi, int k1d, double eps_trunc_rel,
                   const SolveConfig& solver) {
  if (!(lo < hi)) throw std::invalid_argument("levin1d_fixed: empty interval");
  if (k1d < 3) throw std::invalid_argument("levin1d_fixed: k1d must be >= 3");
  return fixed_estimate(osc, lo, hi, k1d, eps_trunc_rel, solver).value;
}

Levin1DResult levin1d_adaptive(const Oscillator1D& osc, double lo, double hi,
                               const Levin1DConfig& cfg) {
  if (!(lo < hi)) throw std::invalid_argument("levin1d_adaptive: empty interval");
  if (cfg.k1d < 3) throw std::invalid_argument("levin1d_adaptive: k1d must be >= 3");
  if (!(cfg.eps_sub > 0.0) || !(cfg.eps_trunc_rel > 0.0)) {
    throw std::invalid_argument("levin1d_adaptive: tolerances must be positive");
  }

  struct Item {
    double lo, hi;
    cplx whole;
    int depth;
  };
  Levin1DResult result;
  auto estimate = [&](double a, double b) {
    const Estimate1D e = fixed_estimate(osc, a, b, cfg.k1d, cfg.eps_trunc_rel, cfg.solver);
    result.fevals += e.fevals;
    return e.value;
  };

  std::vector<Item> stack;
  stack.push_back({lo, hi, estimate(lo, hi), 0});
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (item.lo + item.hi);
    const cplx left = estimate(item.lo, mid);
    const cplx right = estimate(mid, item.hi);
    const bool converged = std::abs(item.whole - (left + right)) < cfg.eps_sub;
    if (converged || item.depth >= cfg.max_depth) {
      if (!converged) result.depth_exceeded = true;
      result.value += item.whole;
      ++result.sub_intervals;
      continue;
    }
    stack.push_back({item.lo, mid, left, item.depth + 1});
    stack.push_back({mid, item.hi, right, item.depth + 1});
  }
  return result;
}

}  // namespace dlevin
