#pragma once

// Adaptive tensor-product Gauss-Legendre quadrature, used as the reference
// for integrands without a closed form.

#include <vector>

#include "dlevin/types.hpp"

namespace dlevin {

struct GaussRule {
  int n = 0;
  std::vector<double> nodes;    // ascending in (-1,1)
  std::vector<double> weights;  // positive, summing to 2
};

// Newton iteration on P_n from Chebyshev initial guesses.
GaussRule gauss_rule(int n);

// n x n tensor rule on rect.
cplx gauss_rect(const Integrand2D& F, const Rectangle& rect, const GaussRule& rule);

struct OracleConfig {
  int n = 10;
  int max_depth = 40;
  bool parallel = true;
};

struct OracleResult {
  cplx value = 0.0;
  long rects = 0;      // accepted rectangles
  long estimates = 0;  // tensor rules applied
  long fevals = 0;
  bool depth_exceeded = false;
};

OracleResult adaptive_gauss(const Integrand2D& F, const Rectangle& root, double tol,
                            const OracleConfig& cfg = {});

}  // namespace dlevin
