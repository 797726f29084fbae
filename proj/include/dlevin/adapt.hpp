#pragma once

#include <vector>

#include "dlevin/levin2d.hpp"

namespace dlevin {

struct AdaptiveConfig {
  int k = 7;
  double eps_sub = 1e-12;
  double beta0 = 0.5;  // truncation tolerance eps0 = beta0 * eps_sub / ||f||_inf
  double beta = 0.1;
  int k1d = 12;
  int max_depth = 40;
  int max_depth_1d = 60;
  SolveConfig solver;
  bool use_nondelaminating = false;
  // Carry the quadrant estimates of a split rectangle into the children.
  // Results are bit-identical either way; only rect_evals changes.
  bool reuse_child_estimates = true;
  // Expand the quad tree level by level under OpenMP. Bit-identical to the
  // serial driver.
  bool parallel = false;
};

struct MeshRecord {
  Rectangle rect;
  int depth = 0;
  Direction direction = Direction::x;
  double grad_ratio = 0.0;
  bool low_freq = false;
  bool depth_exceeded = false;
  cplx value = 0.0;
};

struct AdaptiveResult {
  cplx value = 0.0;  // sum of mesh values in acceptance order
  std::vector<MeshRecord> mesh;
  long rect_evals = 0;
  long fevals = 0;
  long subints = 0;  // univariate sub-intervals over every estimate computed
  double eps_trunc_rel = 0.0;
  bool depth_exceeded = false;
  bool boundary_depth_exceeded = false;
};

void validate(const AdaptiveConfig& cfg);

AdaptiveResult adaptive_integrate(const Integrand2D& F, const Rectangle& root,
                                  const AdaptiveConfig& cfg);

// max |f| over the k x k grid of the root; the scale used for eps0.
double root_amplitude_sup(const Integrand2D& F, const Rectangle& root, int k);

struct MeshRow {
  double x0, x1, y0, y1;
  int depth;
  Direction direction;
  double grad_ratio;
  bool low_freq;
};

std::vector<MeshRow> mesh_dump(const AdaptiveResult& result);

}  // namespace dlevin
