#pragma once

// Quad-tree worklist shared by the Levin integrator and the Gauss oracle.
//
// A rectangle is accepted when its own estimate agrees with the sum of the
// estimates on its four quadrants to within eps; otherwise the quadrants are
// refined. Accepted rectangles are reported in last-in-first-out order with
// quadrants pushed R1..R4, so R4 is processed first.
//
// run_serial is the reference. run_parallel expands the tree one level at a
// time with the estimates of a level computed under OpenMP, then replays the
// LIFO order over the finished tree; the accept callbacks, and therefore any
// sum formed in them, are bit-identical to run_serial.

#include <cmath>
#include <exception>
#include <optional>
#include <vector>

#include "dlevin/types.hpp"

namespace dlevin::driver {

struct Limits {
  double eps = 1e-12;
  int max_depth = 40;
  bool reuse_child_estimates = true;
};

// estimate(rect) -> Est, where Est has a complex `value` member.
// observe(const Est&) is called once per computed estimate, in a deterministic
// order. accept(rect, depth, const Est&, bool depth_exceeded) is called once
// per accepted rectangle.
template <class Est, class EstimateFn, class ObserveFn, class AcceptFn>
void run_serial(const Rectangle& root, const Limits& limits, EstimateFn&& estimate,
                ObserveFn&& observe, AcceptFn&& accept) {
  struct Item {
    Rectangle rect;
    int depth;
    std::optional<Est> est;
  };
  auto compute = [&](const Rectangle& r) {
    Est e = estimate(r);
    observe(e);
    return e;
  };

  std::vector<Item> stack;
  stack.push_back({root, 0, std::nullopt});
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    Est whole = item.est ? std::move(*item.est) : compute(item.rect);
    const auto quads = item.rect.quadrants();
    std::optional<Est> parts[4];
    cplx sum = 0.0;
    for (int q = 0; q < 4; ++q) {
      parts[q] = compute(quads[q]);
      sum += parts[q]->value;
    }
    const bool converged = std::abs(whole.value - sum) < limits.eps;
    if (converged || item.depth >= limits.max_depth) {
      accept(item.rect, item.depth, whole, !converged);
      continue;
    }
    for (int q = 0; q < 4; ++q) {
      stack.push_back({quads[q], item.depth + 1,
                       limits.reuse_child_estimates ? std::move(parts[q]) : std::nullopt});
    }
  }
}

template <class Est, class EstimateFn, class ObserveFn, class AcceptFn>
void run_parallel(const Rectangle& root, const Limits& limits, EstimateFn&& estimate,
                  ObserveFn&& observe, AcceptFn&& accept) {
  struct Node {
    Rectangle rect;
    int depth = 0;
    Est est{};
    long first_child = -1;
    bool flagged = false;
  };

  std::vector<Node> nodes;
  nodes.push_back({root, 0, estimate(root)});
  observe(nodes[0].est);
  std::vector<long> frontier{0};

  while (!frontier.empty()) {
    const long count = static_cast<long>(frontier.size()) * 4;
    std::vector<Est> parts(static_cast<std::size_t>(count));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < count; ++t) {
      try {
        const Rectangle r = nodes[frontier[t / 4]].rect.quadrants()[t % 4];
        parts[t] = estimate(r);
      } catch (...) {
#pragma omp critical(dlevin_driver_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (const Est& e : parts) observe(e);

    std::vector<long> next;
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      const long idx = frontier[f];
      cplx sum = 0.0;
      for (int q = 0; q < 4; ++q) sum += parts[4 * f + q].value;
      const bool converged = std::abs(nodes[idx].est.value - sum) < limits.eps;
      if (converged) continue;
      if (nodes[idx].depth >= limits.max_depth) {
        nodes[idx].flagged = true;
        continue;
      }
      const auto quads = nodes[idx].rect.quadrants();
      const int depth = nodes[idx].depth + 1;
      nodes[idx].first_child = static_cast<long>(nodes.size());
      for (int q = 0; q < 4; ++q) {
        next.push_back(static_cast<long>(nodes.size()));
        nodes.push_back({quads[q], depth, std::move(parts[4 * f + q])});
      }
    }
    frontier = std::move(next);
  }

  std::vector<long> stack{0};
  while (!stack.empty()) {
    const long idx = stack.back();
    stack.pop_back();
    const Node& n = nodes[idx];
    if (n.first_child < 0) {
      accept(n.rect, n.depth, n.est, n.flagged);
      continue;
    }
    for (int q = 0; q < 4; ++q) stack.push_back(n.first_child + q);
  }
}

}  // namespace dlevin::driver
