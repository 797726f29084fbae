#include "dlevin/levin2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dlevin {

namespace {

const cplx I(0.0, 1.0);

struct Samples {
  int k = 0;
  std::vector<cplx> f;
  std::vector<double> g;
  double f_sup = 0.0;
};

Samples sample(const Integrand2D& F, const Rectangle& rect, int k) {
  const TensorGrid grid = tensor_grid(k, rect);
  Samples s{k, std::vector<cplx>(grid.points.size()), std::vector<double>(grid.points.size()), 0.0};
  for (std::size_t n = 0; n < grid.points.size(); ++n) {
    const Point2 pt = grid.points[n];
    s.f[n] = F.amplitude(pt.x, pt.y);
    s.g[n] = F.phase(pt.x, pt.y);
    if (!is_finite(s.f[n]) || !std::isfinite(s.g[n])) {
      throw EvaluationError("levin2d: non-finite sample at (" + std::to_string(pt.x) + "," +
                            std::to_string(pt.y) + ")");
    }
    s.f_sup = std::max(s.f_sup, std::abs(s.f[n]));
  }
  return s;
}

// Reference-coordinate partials of nodal samples on a k x k grid.
void reference_partials(std::span<const double> g, int k, std::vector<double>& gx,
                        std::vector<double>& gy) {
  const Eigen::MatrixXd& D = diff_matrix(k).entries;
  gx.assign(g.size(), 0.0);
  gy.assign(g.size(), 0.0);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      double sx = 0.0;
      double sy = 0.0;
      for (int m = 0; m < k; ++m) {
        sx += D(i, m) * g[m + k * j];
        sy += D(j, m) * g[i + k * m];
      }
      gx[i + k * j] = sx;
      gy[i + k * j] = sy;
    }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

template <class T>
std::vector<T> transpose(const std::vector<T>& v, int k) {
  std::vector<T> out(v.size());
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) out[j + k * i] = v[i + k * j];
  return out;
}

// Grid diagnostics shared by both variants, computed from the k x k samples.
void fill_diagnostics(RectEstimate& est, const std::vector<double>& g, int k,
                      const Rectangle& rect) {
  std::vector<double> gx, gy;
  reference_partials(g, k, gx, gy);
  const double sx = 2.0 / rect.width();
  const double sy = 2.0 / rect.height();
  const double max_gx = max_abs(gx);
  const double max_gy = max_abs(gy);
  est.direction = (max_gx * sx >= max_gy * sy) ? Direction::x : Direction::y;
  const std::vector<double>& gv = (est.direction == Direction::x) ? gx : gy;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : gv) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  est.grad_ratio = (lo == 0.0) ? std::numeric_limits<double>::infinity() : hi / lo;
  est.low_freq = max_gx < 0.25 && max_gy < 0.25;
}

// Integrates p(u_edge, v) exp(i g(u_edge, v)) over the transverse side for
// both edges of the delamination axis u. `p` is on the k x k grid in the
// frame where u is the first (fastest) index; `rect` and `phase` are in the
// same frame.
void boundary_integrals(RectEstimate& est, const std::vector<cplx>& p, int k,
                        const Rectangle& rect,
                        const std::function<double(double, double)>& phase,
                        const LevinParams& params) {
  const ChebGrid1D& grid = cached_nodes(k);
  std::vector<cplx> near(static_cast<std::size_t>(k)), far(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    near[j] = p[0 + k * j];
    far[j] = p[(k - 1) + k * j];
  }

  Levin1DConfig cfg;
  cfg.k1d = params.k1d;
  cfg.eps_sub = params.beta * std::max(est.p_sup / est.f_sup, 1.0) * params.eps_sub;
  cfg.eps_trunc_rel = params.eps_trunc_rel;
  cfg.max_depth = params.max_depth_1d;
  cfg.solver = params.solver;

  auto edge = [&](const std::vector<cplx>& values, double u) {
    Oscillator1D osc{
        [&grid, &values, &rect](double v) {
          return bary_eval(grid, values, to_reference(v, rect.c, rect.d));
        },
        [&phase, u](double v) { return phase(u, v); }, rect.c, rect.d};
    return levin1d_adaptive(osc, rect.c, rect.d, cfg);
  };
  const Levin1DResult hi = edge(far, rect.b);
  const Levin1DResult lo = edge(near, rect.a);
  est.value = hi.value - lo.value;
  est.boundary_subints = hi.sub_intervals + lo.sub_intervals;
  est.boundary_depth_exceeded = hi.depth_exceeded || lo.depth_exceeded;
  est.fevals += hi.fevals + lo.fevals;
}

struct Frame {
  Rectangle rect;
  std::function<double(double, double)> phase;
};

Frame frame_for(const Integrand2D& F, const Rectangle& rect, Direction dir) {
  if (dir == Direction::x) return {rect, F.phase};
  return {rect.transposed(), [phase = F.phase](double u, double v) { return phase(v, u); }};
}

// Solves the fibers in the frame where u is the fastest index.
std::vector<cplx> solve_fibers(const std::vector<cplx>& f, const std::vector<double>& g, int k,
                               double len, const LevinParams& params, std::vector<int>& ranks) {
  const DiffMatrix& dk = diff_matrix(k);
  const Eigen::Map<const Eigen::MatrixXd> gmat(g.data(), k, k);
  std::vector<cplx> p(f.size());
  ranks.assign(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < k; ++j) {
    const CVector dg = (dk.entries * gmat.col(j)).cast<cplx>();
    CVector rhs(k);
    for (int i = 0; i < k; ++i) rhs(i) = 0.5 * len * f[i + k * j];
    CVector pj;
    ranks[j] = solve_levin_fiber(dk, dg, rhs, params.eps_trunc_rel, params.solver, pj);
    for (int i = 0; i < k; ++i) p[i + k * j] = pj(i);
  }
  return p;
}

void require_params(const Rectangle& rect, const LevinParams& params) {
  require_valid(rect);
  if (params.k < 3) throw std::invalid_argument("levin2d: k must be >= 3");
}

}  // namespace

Direction choose_direction(std::span<const double> g_samples, int k, const Rectangle& rect) {
  if (g_samples.size() != static_cast<std::size_t>(k * k)) {
    throw std::invalid_argument("choose_direction: sample count mismatch");
  }
  RectEstimate tmp;
  fill_diagnostics(tmp, std::vector<double>(g_samples.begin(), g_samples.end()), k, rect);
  return tmp.direction;
}

std::vector<cplx> delaminated_solution(const Integrand2D& F, const Rectangle& rect,
                                       const LevinParams& params) {
  require_params(rect, params);
  const int k = params.k;
  Samples s = sample(F, rect, k);
  if (s.f_sup == 0.0) return {};
  RectEstimate est;
  fill_diagnostics(est, s.g, k, rect);
  std::vector<int> ranks;
  if (est.direction == Direction::x) return solve_fibers(s.f, s.g, k, rect.width(), params, ranks);
  return transpose(
      solve_fibers(transpose(s.f, k), transpose(s.g, k), k, rect.height(), params, ranks), k);
}

RectEstimate delaminated_estimate(const Integrand2D& F, const Rectangle& rect,
                                  const LevinParams& params) {
  require_params(rect, params);
  const int k = params.k;
  Samples s = sample(F, rect, k);
  RectEstimate est;
  est.fevals = static_cast<long>(k) * k;
  est.f_sup = s.f_sup;
  fill_diagnostics(est, s.g, k, rect);
  if (s.f_sup == 0.0) return est;

  const Frame fr = frame_for(F, rect, est.direction);
  if (est.direction == Direction::y) {
    s.f = transpose(s.f, k);
    s.g = transpose(s.g, k);
  }
  const std::vector<cplx> p = solve_fibers(s.f, s.g, k, fr.rect.width(), params, est.fiber_ranks);
  for (const cplx& v : p) est.p_sup = std::max(est.p_sup, std::abs(v));
  boundary_integrals(est, p, k, fr.rect, fr.phase, params);
  return est;
}

RectEstimate nondelaminated_estimate(const Integrand2D& F, const Rectangle& rect,
                                     const LevinParams& params) {
  require_params(rect, params);
  const int k = params.k;
  const int kf = 2 * k - 1;
  Samples coarse = sample(F, rect, k);
  Samples fine = sample(F, rect, kf);
  RectEstimate est;
  est.fevals = static_cast<long>(k) * k + static_cast<long>(kf) * kf;
  est.f_sup = fine.f_sup;
  fill_diagnostics(est, coarse.g, k, rect);
  if (fine.f_sup == 0.0) return est;

  const Frame fr = frame_for(F, rect, est.direction);
  if (est.direction == Direction::y) {
    fine.f = transpose(fine.f, kf);
    fine.g = transpose(fine.g, kf);
  }

  // A = P (I (x) D_k) + i diag(g_u on the fine grid) P.
  const Eigen::MatrixXd& P = interp_matrix(kf, k).entries;
  const Eigen::MatrixXd& Dk = diff_matrix(k).entries;
  Eigen::MatrixXd Dx = Eigen::MatrixXd::Zero(k * k, k * k);
  for (int j = 0; j < k; ++j) Dx.block(k * j, k * j, k, k) = Dk;
  std::vector<double> gu, gv;
  reference_partials(fine.g, kf, gu, gv);

  CMatrix A = (P * Dx).cast<cplx>();
  CVector rhs(kf * kf);
  const double half_len = 0.5 * fr.rect.width();
  for (int r = 0; r < kf * kf; ++r) {
    A.row(r) += (I * gu[r]) * P.row(r).cast<cplx>();
    rhs(r) = half_len * fine.f[r];
  }
  const TruncatedSolve ts = truncated_solve(A, rhs, params.eps_trunc_rel, params.solver.method);
  est.fiber_ranks = {ts.rank};
  std::vector<cplx> p(ts.solution.data(), ts.solution.data() + ts.solution.size());
  for (const cplx& v : p) est.p_sup = std::max(est.p_sup, std::abs(v));
  boundary_integrals(est, p, k, fr.rect, fr.phase, params);
  return est;
}

}  // namespace dlevin
