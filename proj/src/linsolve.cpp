#include "dlevin/linsolve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dlevin {

namespace {

void require_finite(const CMatrix& A, const CVector& b) {
  if (!A.allFinite() || !b.allFinite()) {
    throw std::invalid_argument("truncated solve: non-finite input");
  }
}

void require_shape(const CMatrix& A, const CVector& b) {
  if (A.cols() < 1 || A.rows() < A.cols()) {
    throw std::invalid_argument("truncated solve: need rows >= cols >= 1");
  }
  if (b.size() != A.rows()) throw std::invalid_argument("truncated solve: rhs size mismatch");
}

[[maybe_unused]] bool norm_bound_holds(const TruncatedSolve& s, const CVector& b,
                                       double threshold) {
  if (s.rank == 0) return true;
  const double floor = std::max(threshold, s.sigma_min_kept);
  return s.solution.norm() <= b.norm() / floor * (1.0 + 1e-8) + 1e-300;
}

}  // namespace

namespace {

Svd jacobi_square_or_tall(const CMatrix& A) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  CMatrix U = A;
  CMatrix V = CMatrix::Identity(n, n);
  constexpr double tol = std::numeric_limits<double>::epsilon();
  constexpr int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double* up = reinterpret_cast<double*>(U.col(p).data());
        double* uq = reinterpret_cast<double*>(U.col(q).data());
        double alpha = 0.0;
        double beta = 0.0;
        double g_re = 0.0;
        double g_im = 0.0;
        for (Eigen::Index r = 0; r < 2 * m; r += 2) {
          alpha += up[r] * up[r] + up[r + 1] * up[r + 1];
          beta += uq[r] * uq[r] + uq[r + 1] * uq[r + 1];
          g_re += up[r] * uq[r] + up[r + 1] * uq[r + 1];
          g_im += up[r] * uq[r + 1] - up[r + 1] * uq[r];
        }
        const double g = std::hypot(g_re, g_im);
        if (g == 0.0 || g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;

        // Rotate column q by the phase of conj(gamma), then a real rotation.
        const double ph_re = g_re / g;
        const double ph_im = -g_im / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        auto rotate = [&](double* x, double* y, Eigen::Index len) {
          for (Eigen::Index r = 0; r < 2 * len; r += 2) {
            const double a_re = x[r];
            const double a_im = x[r + 1];
            const double b_re = y[r] * ph_re - y[r + 1] * ph_im;
            const double b_im = y[r] * ph_im + y[r + 1] * ph_re;
            x[r] = cs * a_re - sn * b_re;
            x[r + 1] = cs * a_im - sn * b_im;
            y[r] = sn * a_re + cs * b_re;
            y[r + 1] = sn * a_im + cs * b_im;
          }
        };
        rotate(up, uq, m);
        rotate(reinterpret_cast<double*>(V.col(p).data()),
               reinterpret_cast<double*>(V.col(q).data()), n);
      }
    }
    if (!rotated) break;
  }

  Eigen::VectorXd norms(n);
  for (Eigen::Index j = 0; j < n; ++j) norms(j) = U.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return norms(x) > norms(y); });

  Svd out{CMatrix(m, n), Eigen::VectorXd(n), CMatrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.sigma(j) = norms(src);
    if (norms(src) > 0.0) {
      out.U.col(j) = U.col(src) / norms(src);
    } else {
      out.U.col(j).setZero();
    }
    out.V.col(j) = V.col(src);
  }
  return out;
}

}  // namespace

Svd jacobi_svd(const CMatrix& A) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (n < 1 || m < n) throw std::invalid_argument("jacobi_svd: need rows >= cols >= 1");
  if (m < 2 * n) return jacobi_square_or_tall(A);

  // Tall: rotate the n x n triangular factor instead of the m x n matrix.
  Eigen::HouseholderQR<CMatrix> qr(A);
  const CMatrix R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  Svd inner = jacobi_square_or_tall(R);
  CMatrix U = CMatrix::Zero(m, n);
  U.topRows(n) = inner.U;
  U.applyOnTheLeft(qr.householderQ());
  return {std::move(U), std::move(inner.sigma), std::move(inner.V)};
}

double two_norm(const CMatrix& A) {
  if (A.size() == 0) throw std::invalid_argument("two_norm: empty matrix");
  const CMatrix gram = A.adjoint() * A;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

namespace {

TruncatedSolve tsvd_from(const Svd& svd, const CMatrix& A, const CVector& b, double threshold) {
  const Eigen::Index n = A.cols();
  TruncatedSolve out;
  out.solution = CVector::Zero(n);
  out.sigma_max = svd.sigma(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = svd.sigma(i);
    if (s < threshold || s <= 0.0) break;
    out.solution += (svd.U.col(i).dot(b) / s) * svd.V.col(i);
    out.rank = static_cast<int>(i) + 1;
    out.sigma_min_kept = s;
  }
  out.residual_norm = (A * out.solution - b).norm();
  assert(norm_bound_holds(out, b, threshold));
  return out;
}

}  // namespace

TruncatedSolve tsvd_solve(const CMatrix& A, const CVector& b, double threshold_abs) {
  require_shape(A, b);
  require_finite(A, b);
  if (!(threshold_abs >= 0.0)) throw std::invalid_argument("tsvd_solve: negative threshold");
  return tsvd_from(jacobi_svd(A), A, b, threshold_abs);
}

TruncatedSolve rrqr_solve(const CMatrix& A, const CVector& b, double threshold_abs) {
  require_shape(A, b);
  require_finite(A, b);
  if (!(threshold_abs >= 0.0)) throw std::invalid_argument("rrqr_solve: negative threshold");

  const Eigen::Index n = A.cols();
  Eigen::ColPivHouseholderQR<CMatrix> qr(A);
  const CMatrix& R = qr.matrixR();
  TruncatedSolve out;
  out.solution = CVector::Zero(n);
  out.sigma_max = std::abs(R(0, 0));

  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rii = std::abs(R(i, i));
    if (rii < threshold_abs || rii <= 0.0) break;
    rank = static_cast<int>(i) + 1;
    out.sigma_min_kept = rii;
  }
  out.rank = rank;
  if (rank > 0) {
    CVector qtb = b;
    qtb.applyOnTheLeft(qr.householderQ().adjoint());
    const CVector z = R.topLeftCorner(rank, rank)
                          .triangularView<Eigen::Upper>()
                          .solve(qtb.head(rank));
    CVector permuted = CVector::Zero(n);
    permuted.head(rank) = z;
    out.solution = qr.colsPermutation() * permuted;
  }
  out.residual_norm = (A * out.solution - b).norm();
  return out;
}

TruncatedSolve truncated_solve(const CMatrix& A, const CVector& b, double threshold_rel,
                               SolveMethod method) {
  require_shape(A, b);
  require_finite(A, b);
  if (method == SolveMethod::rrqr) return rrqr_solve(A, b, threshold_rel * two_norm(A));
  const Svd svd = jacobi_svd(A);
  return tsvd_from(svd, A, b, threshold_rel * svd.sigma(0));
}

IterationResult diag_iteration_solve(const DiffMatrix& dk, const CVector& gdiag, const CVector& b,
                                     double tol, int max_iter) {
  const Eigen::Index k = dk.k;
  if (gdiag.size() != k || b.size() != k) {
    throw std::invalid_argument("diag_iteration_solve: size mismatch");
  }
  IterationResult out;
  double inv_norm = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (gdiag(i) == cplx(0.0)) return out;
    inv_norm = std::max(inv_norm, 1.0 / std::abs(gdiag(i)));
  }
  const double d_norm = dk.entries.cwiseAbs().rowwise().sum().maxCoeff();
  if (inv_norm * d_norm > 0.5) return out;

  const CVector ginv = gdiag.cwiseInverse();
  const double scale = b.cwiseAbs().maxCoeff();
  CVector p = CVector::Zero(k);
  for (int it = 1; it <= max_iter; ++it) {
    CVector next = ginv.cwiseProduct(b - dk.entries.cast<cplx>() * p);
    const double change = (next - p).cwiseAbs().maxCoeff();
    p = std::move(next);
    if (change <= tol * scale) {
      out.status = IterationStatus::converged;
      out.solution = std::move(p);
      out.iterations = it;
      return out;
    }
  }
  out.status = IterationStatus::not_converged;
  out.solution = std::move(p);
  out.iterations = max_iter;
  return out;
}

}  // namespace dlevin
