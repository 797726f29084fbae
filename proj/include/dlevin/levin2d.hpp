#pragma once

// Fixed-order Levin estimates of the integral of f exp(i g) over a single
// rectangle.
//
// The delaminating estimate solves p_v + i g_v p = f, v the delamination
// axis, one fiber at a time on a k x k Chebyshev grid, then integrates
// p exp(i g) over the two edges transverse to v with the adaptive univariate
// method. The non-delaminating variant solves the same PDE as one
// (2k-1)^2 x k^2 least-squares system.

#include <span>
#include <vector>

#include "dlevin/levin1d.hpp"

namespace dlevin {

enum class Direction { x, y };

struct LevinParams {
  int k = 7;
  double eps_trunc_rel = 5e-13;  // relative to ||A||_2 of each system
  double beta = 0.1;             // safety factor for the boundary tolerance
  double eps_sub = 1e-12;
  int k1d = 12;
  int max_depth_1d = 60;
  SolveConfig solver;
};

struct RectEstimate {
  cplx value = 0.0;
  Direction direction = Direction::x;
  double p_sup = 0.0;
  double f_sup = 0.0;
  std::vector<int> fiber_ranks;
  int boundary_subints = 0;
  double grad_ratio = 0.0;  // max/min |dg/dv| on the grid; inf when min is 0
  bool low_freq = false;    // both reference-scaled partials below 1/4
  bool boundary_depth_exceeded = false;
  long fevals = 0;
};

// Picks the axis with the larger max |partial| of g over a k x k grid of
// `rect`; ties go to x.
Direction choose_direction(std::span<const double> g_samples, int k, const Rectangle& rect);

RectEstimate delaminated_estimate(const Integrand2D& F, const Rectangle& rect,
                                  const LevinParams& params);

RectEstimate nondelaminated_estimate(const Integrand2D& F, const Rectangle& rect,
                                     const LevinParams& params);

// Fiber solutions of a delaminated estimate in grid order (x fastest), for
// tests and diagnostics. Empty when the amplitude vanishes on the grid.
std::vector<cplx> delaminated_solution(const Integrand2D& F, const Rectangle& rect,
                                       const LevinParams& params);

}  // namespace dlevin
