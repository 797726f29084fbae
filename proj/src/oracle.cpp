#include "dlevin/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dlevin/driver.hpp"

namespace dlevin {

GaussRule gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: n must be >= 1");
  GaussRule rule{n, std::vector<double>(static_cast<std::size_t>(n)),
                 std::vector<double>(static_cast<std::size_t>(n))};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Refresh the derivative at the converged root.
    {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

cplx gauss_rect(const Integrand2D& F, const Rectangle& rect, const GaussRule& rule) {
  const cplx I(0.0, 1.0);
  const double hx = 0.5 * rect.width();
  const double hy = 0.5 * rect.height();
  const double mx = 0.5 * (rect.a + rect.b);
  const double my = 0.5 * (rect.c + rect.d);
  cplx total = 0.0;
  for (int j = 0; j < rule.n; ++j) {
    const double y = my + hy * rule.nodes[j];
    cplx row = 0.0;
    for (int i = 0; i < rule.n; ++i) {
      const double x = mx + hx * rule.nodes[i];
      const cplx f = F.amplitude(x, y);
      const double g = F.phase(x, y);
      if (!is_finite(f) || !std::isfinite(g)) {
        throw EvaluationError("gauss_rect: non-finite sample");
      }
      row += rule.weights[i] * f * std::exp(I * g);
    }
    total += rule.weights[j] * row;
  }
  return total * (hx * hy);
}

OracleResult adaptive_gauss(const Integrand2D& F, const Rectangle& root, double tol,
                            const OracleConfig& cfg) {
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_gauss: tol must be positive");
  require_valid(root);
  const GaussRule rule = gauss_rule(cfg.n);

  struct Est {
    cplx value;
  };
  OracleResult result;
  auto estimate = [&](const Rectangle& r) { return Est{gauss_rect(F, r, rule)}; };
  auto observe = [&](const Est&) {
    ++result.estimates;
    result.fevals += static_cast<long>(cfg.n) * cfg.n;
  };
  auto accept = [&](const Rectangle&, int, const Est& e, bool flagged) {
    result.value += e.value;
    ++result.rects;
    result.depth_exceeded = result.depth_exceeded || flagged;
  };
  const driver::Limits limits{tol, cfg.max_depth, true};
  if (cfg.parallel) {
    driver::run_parallel<Est>(root, limits, estimate, observe, accept);
  } else {
    driver::run_serial<Est>(root, limits, estimate, observe, accept);
  }
  return result;
}

}  // namespace dlevin
