#include "dlevin/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlevin/driver.hpp"

namespace dlevin {

void validate(const AdaptiveConfig& cfg) {
  if (cfg.k < 3) throw std::invalid_argument("adaptive: k must be >= 3");
  if (cfg.k1d < 3) throw std::invalid_argument("adaptive: k1d must be >= 3");
  if (!(cfg.eps_sub > 0.0)) throw std::invalid_argument("adaptive: eps_sub must be positive");
  if (!(cfg.beta0 > 0.0)) throw std::invalid_argument("adaptive: beta0 must be positive");
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) {
    throw std::invalid_argument("adaptive: beta must lie in (0,1)");
  }
  if (cfg.max_depth < 0 || cfg.max_depth_1d < 0) {
    throw std::invalid_argument("adaptive: negative depth limit");
  }
}

double root_amplitude_sup(const Integrand2D& F, const Rectangle& root, int k) {
  const TensorGrid grid = tensor_grid(k, root);
  double sup = 0.0;
  for (const Point2& pt : grid.points) {
    const cplx f = F.amplitude(pt.x, pt.y);
    if (!is_finite(f)) throw EvaluationError("adaptive: non-finite amplitude on root grid");
    sup = std::max(sup, std::abs(f));
  }
  return sup;
}

AdaptiveResult adaptive_integrate(const Integrand2D& F, const Rectangle& root,
                                  const AdaptiveConfig& cfg) {
  validate(cfg);
  require_valid(root);

  AdaptiveResult result;
  const double f_sup = root_amplitude_sup(F, root, cfg.k);
  result.fevals = static_cast<long>(cfg.k) * cfg.k;
  if (f_sup == 0.0) return result;

  LevinParams params;
  params.k = cfg.k;
  params.eps_trunc_rel = cfg.beta0 * cfg.eps_sub / f_sup;
  params.beta = cfg.beta;
  params.eps_sub = cfg.eps_sub;
  params.k1d = cfg.k1d;
  params.max_depth_1d = cfg.max_depth_1d;
  params.solver = cfg.solver;
  result.eps_trunc_rel = params.eps_trunc_rel;

  auto estimate = [&](const Rectangle& r) {
    return cfg.use_nondelaminating ? nondelaminated_estimate(F, r, params)
                                   : delaminated_estimate(F, r, params);
  };
  auto observe = [&](const RectEstimate& e) {
    ++result.rect_evals;
    result.fevals += e.fevals;
    result.subints += e.boundary_subints;
  };
  auto accept = [&](const Rectangle& r, int depth, const RectEstimate& e, bool flagged) {
    result.value += e.value;
    result.mesh.push_back({r, depth, e.direction, e.grad_ratio, e.low_freq, flagged, e.value});
    result.depth_exceeded = result.depth_exceeded || flagged;
    result.boundary_depth_exceeded = result.boundary_depth_exceeded || e.boundary_depth_exceeded;
  };

  const driver::Limits limits{cfg.eps_sub, cfg.max_depth, cfg.reuse_child_estimates};
  if (cfg.parallel) {
    driver::run_parallel<RectEstimate>(root, limits, estimate, observe, accept);
  } else {
    driver::run_serial<RectEstimate>(root, limits, estimate, observe, accept);
  }
  return result;
}

std::vector<MeshRow> mesh_dump(const AdaptiveResult& result) {
  std::vector<MeshRow> rows;
  rows.reserve(result.mesh.size());
  for (const MeshRecord& m : result.mesh) {
    rows.push_back({m.rect.a, m.rect.b, m.rect.c, m.rect.d, m.depth, m.direction, m.grad_ratio,
                    m.low_freq});
  }
  return rows;
}

}  // namespace dlevin
