#pragma once

// Truncated least-squares solvers for small dense collocation systems.

#include <Eigen/Dense>

#include "dlevin/cheb.hpp"

namespace dlevin {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class SolveMethod { svd, rrqr };

struct SolveConfig {
  SolveMethod method = SolveMethod::svd;
  // Attempt the diagonal-dominance iteration before the dense solver.
  bool iteration_enabled = false;
  int iteration_max = 60;
  double iteration_tol = 1e-15;
};

// Minimum-norm (svd) or basic (rrqr) solution of a rank-truncated system.
// rank == 0 implies a zero solution.
struct TruncatedSolve {
  CVector solution;
  int rank = 0;
  double sigma_max = 0.0;
  double sigma_min_kept = 0.0;
  double residual_norm = 0.0;
};

// Thin SVD A = U diag(sigma) V^*, sigma descending. Requires rows >= cols.
struct Svd {
  CMatrix U;
  Eigen::VectorXd sigma;
  CMatrix V;
};

// One-sided (Hestenes) Jacobi SVD.
Svd jacobi_svd(const CMatrix& A);

double two_norm(const CMatrix& A);

TruncatedSolve tsvd_solve(const CMatrix& A, const CVector& b, double threshold_abs);
TruncatedSolve rrqr_solve(const CMatrix& A, const CVector& b, double threshold_abs);

// Truncates at threshold_rel * ||A||_2 with the configured method.
TruncatedSolve truncated_solve(const CMatrix& A, const CVector& b, double threshold_rel,
                               SolveMethod method);

enum class IterationStatus { converged, not_applicable, not_converged };

struct IterationResult {
  IterationStatus status = IterationStatus::not_applicable;
  CVector solution;
  int iterations = 0;
};

// Solves (D_k + diag(gdiag)) p = b by p <- G^{-1}(b - D_k p), starting at 0.
// Refuses (not_applicable) unless ||G^{-1}||_inf ||D_k||_inf <= 1/2.
IterationResult diag_iteration_solve(const DiffMatrix& dk, const CVector& gdiag, const CVector& b,
                                     double tol, int max_iter);

}  // namespace dlevin
