#include "dlevin/cheb.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace dlevin {

namespace {

void require_order(int k) {
  if (k < 2) throw std::invalid_argument("Chebyshev grid needs at least 2 nodes");
}

// Angles theta_j with nodes[j] = -cos(theta_j), theta_j = j pi/(k-1).
double angle(int j, int k) { return std::numbers::pi * j / (k - 1); }

// nodes[i] - nodes[j] without cancellation.
double node_difference(int i, int j, int k) {
  const double ti = angle(i, k);
  const double tj = angle(j, k);
  return 2.0 * std::sin(0.5 * (ti + tj)) * std::sin(0.5 * (ti - tj));
}

double bary_weight(int j, int k) {
  double w = (j % 2 == 0) ? 1.0 : -1.0;
  if (j == 0 || j == k - 1) w *= 0.5;
  return w;
}

template <class Key, class Value, class Make>
const Value& cached(std::map<Key, std::unique_ptr<Value>>& cache, std::mutex& mutex, const Key& key,
                    Make&& make) {
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<Value>(make())).first;
  }
  return *it->second;
}

}  // namespace

ChebGrid1D cheb_nodes(int k) {
  require_order(k);
  ChebGrid1D grid{k, std::vector<double>(static_cast<std::size_t>(k))};
  // sin form is exactly antisymmetric and hits -1, 0, 1 exactly.
  for (int j = 0; j < k; ++j) {
    grid.nodes[j] = std::sin(std::numbers::pi * (2 * j - (k - 1)) / (2.0 * (k - 1)));
  }
  grid.nodes.front() = -1.0;
  grid.nodes.back() = 1.0;
  return grid;
}

TensorGrid tensor_grid(int k, const Rectangle& rect) {
  require_order(k);
  require_valid(rect);
  const ChebGrid1D& ref = cached_nodes(k);
  TensorGrid grid{k, rect, std::vector<Point2>(static_cast<std::size_t>(k * k))};
  for (int j = 0; j < k; ++j) {
    const double y = to_physical(ref.nodes[j], rect.c, rect.d);
    for (int i = 0; i < k; ++i) {
      grid.points[i + k * j] = {to_physical(ref.nodes[i], rect.a, rect.b), y};
    }
  }
  return grid;
}

const ChebGrid1D& cached_nodes(int k) {
  static std::map<int, std::unique_ptr<ChebGrid1D>> cache;
  static std::mutex mutex;
  require_order(k);
  return cached(cache, mutex, k, [k] { return cheb_nodes(k); });
}

const DiffMatrix& diff_matrix(int k) {
  static std::map<int, std::unique_ptr<DiffMatrix>> cache;
  static std::mutex mutex;
  require_order(k);
  return cached(cache, mutex, k, [k] {
    DiffMatrix dm{k, Eigen::MatrixXd::Zero(k, k)};
    for (int i = 0; i < k; ++i) {
      double row_sum = 0.0;
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        const double entry = bary_weight(j, k) / bary_weight(i, k) / node_difference(i, j, k);
        dm.entries(i, j) = entry;
        row_sum += entry;
      }
      dm.entries(i, i) = -row_sum;
    }
    return dm;
  });
}

Eigen::MatrixXd lagrange_matrix(const ChebGrid1D& from, std::span<const double> targets) {
  const int l = from.k;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(targets.size()), l);
  for (std::size_t r = 0; r < targets.size(); ++r) {
    const double t = targets[r];
    int hit = -1;
    for (int s = 0; s < l; ++s) {
      if (t == from.nodes[s]) hit = s;
    }
    if (hit >= 0) {
      out(static_cast<Eigen::Index>(r), hit) = 1.0;
      continue;
    }
    double denom = 0.0;
    for (int s = 0; s < l; ++s) {
      const double q = bary_weight(s, l) / (t - from.nodes[s]);
      out(static_cast<Eigen::Index>(r), s) = q;
      denom += q;
    }
    out.row(static_cast<Eigen::Index>(r)) /= denom;
  }
  return out;
}

const InterpMatrix& interp_matrix(int k, int l) {
  static std::map<std::pair<int, int>, std::unique_ptr<InterpMatrix>> cache;
  static std::mutex mutex;
  require_order(l);
  if (k < l) throw std::invalid_argument("interp_matrix requires k >= l");
  return cached(cache, mutex, std::pair{k, l}, [k, l] {
    const Eigen::MatrixXd one_d = lagrange_matrix(cheb_nodes(l), cheb_nodes(k).nodes);
    InterpMatrix im{k, l, Eigen::MatrixXd::Zero(k * k, l * l)};
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i)
        for (int q = 0; q < l; ++q)
          for (int s = 0; s < l; ++s) im.entries(i + k * j, s + l * q) = one_d(i, s) * one_d(j, q);
    return im;
  });
}

cplx bary_eval(const ChebGrid1D& grid, std::span<const cplx> values, double t) {
  if (values.size() != grid.nodes.size()) {
    throw std::invalid_argument("bary_eval: value count does not match grid");
  }
  cplx num = 0.0;
  double denom = 0.0;
  for (int j = 0; j < grid.k; ++j) {
    const double diff = t - grid.nodes[j];
    if (diff == 0.0) return values[j];
    const double q = bary_weight(j, grid.k) / diff;
    num += q * values[j];
    denom += q;
  }
  return num / denom;
}

std::vector<cplx> cheb_coeffs(std::span<const cplx> values) {
  const int k = static_cast<int>(values.size());
  require_order(k);
  const int n = k - 1;
  std::vector<cplx> coeffs(values.size());
  // nodes[j] = cos((n-j) pi/n), so T_m(nodes[j]) = cos(m (n-j) pi/n).
  for (int m = 0; m <= n; ++m) {
    cplx sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      sum += w * values[j] * std::cos(std::numbers::pi * ((m * (n - j)) % (2 * n)) / n);
    }
    const double scale = (m == 0 || m == n) ? 1.0 / n : 2.0 / n;
    coeffs[m] = scale * sum;
  }
  return coeffs;
}

std::vector<cplx> cheb_synthesis(std::span<const cplx> coeffs) {
  const int k = static_cast<int>(coeffs.size());
  require_order(k);
  const int n = k - 1;
  std::vector<cplx> values(coeffs.size());
  for (int j = 0; j <= n; ++j) {
    cplx sum = 0.0;
    for (int m = 0; m <= n; ++m) {
      sum += coeffs[m] * std::cos(std::numbers::pi * ((m * (n - j)) % (2 * n)) / n);
    }
    values[j] = sum;
  }
  return values;
}

}  // namespace dlevin
