#include "dlevin/catalog.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dlevin/oracle.hpp"

namespace dlevin {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;

  entries.push_back(
      {"I1", Rectangle{0.0, 1.0, 0.0, 1.0}, "", 0,
       [](double lambda, int) {
         return Integrand2D{[](double x, double y) { return cplx(std::cos(x + y), 0.0); },
                            [lambda](double x, double y) {
                              return lambda * (x + y + x * x + y * y);
                            },
                            Rectangle{0.0, 1.0, 0.0, 1.0}};
       },
       {}});

  entries.push_back(
      {"I2", Rectangle{0.0, 2.0, 0.0, 2.0}, "", 0,
       [](double lambda, int) {
         return Integrand2D{
             [](double x, double y) { return cplx(1.0 / ((1.0 + x * x) * (1.0 + y * y)), 0.0); },
             [lambda](double x, double y) { return lambda * (std::atan(x) + std::atan(y)); },
             Rectangle{0.0, 2.0, 0.0, 2.0}};
       },
       [](double lambda, int) { return closed_form_I2(lambda); }});

  entries.push_back(
      {"I5", Rectangle{-1.0, 1.0, -1.0, 1.0}, "n", 2,
       [](double lambda, int n) {
         if (n < 2) throw std::invalid_argument("I5 requires n >= 2");
         return Integrand2D{
             [](double x, double y) { return cplx(1.0 / (1.0 + x * x + y * y), 0.0); },
             [lambda, n](double x, double y) {
               return lambda * (ipow(x, n) + ipow(y, n));
             },
             Rectangle{-1.0, 1.0, -1.0, 1.0}};
       },
       {}});

  entries.push_back(
      {"I6", Rectangle{-1.0, 1.0, -1.0, 1.0}, "", 0,
       [](double lambda, int) {
         return Integrand2D{[](double x, double y) { return cplx(1.0 + x * y, 0.0); },
                            [lambda](double x, double y) {
                              return lambda * (x * x - x * y - y * y);
                            },
                            Rectangle{-1.0, 1.0, -1.0, 1.0}};
       },
       {}});

  entries.push_back(
      {"I7", Rectangle{0.0, 1.0, 0.0, 1.0}, "m", 1,
       [](double lambda, int m) {
         if (m < 1) throw std::invalid_argument("I7 requires m >= 1");
         return Integrand2D{[](double, double) { return cplx(1.0, 0.0); },
                            [lambda, m](double x, double y) {
                              const double sx = std::sin(0.5 * std::numbers::pi * m * x);
                              const double sy = std::sin(0.5 * std::numbers::pi * m * y);
                              return lambda * (sx * sx + sy * sy);
                            },
                            Rectangle{0.0, 1.0, 0.0, 1.0}};
       },
       {}});

  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& find_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return e;
  }
  throw std::invalid_argument("unknown catalog entry: " + name);
}

cplx closed_form_I2(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw std::invalid_argument("closed_form_I2: lambda must be finite and nonzero");
  }
  const cplx q = (1.0 - std::exp(cplx(0.0, lambda * std::atan(2.0)))) / lambda;
  return -(q * q);
}

bool RunReport::any_depth_exceeded() const {
  for (const ReportRow& r : rows) {
    if (r.depth_exceeded) return true;
  }
  return false;
}

std::vector<double> log_spaced(double lo_exp, double hi_exp, int count) {
  if (count < 1) throw std::invalid_argument("log_spaced: count must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = (count == 1) ? lo_exp : lo_exp + (hi_exp - lo_exp) * i / (count - 1);
    out.push_back(std::pow(10.0, x));
  }
  return out;
}

RunReport run_sweep(const CatalogEntry& entry, std::span<const double> lambdas,
                    std::span<const int> params, const AdaptiveConfig& cfg,
                    const SweepOptions& opts) {
  if (opts.repeats < 1) throw std::invalid_argument("run_sweep: repeats must be >= 1");
  std::vector<std::optional<int>> param_list;
  if (!entry.has_param()) {
    param_list.push_back(std::nullopt);
  } else if (params.empty()) {
    param_list.push_back(entry.default_param);
  } else {
    for (int p : params) param_list.push_back(p);
  }

  RunReport report;
  for (const std::optional<int>& param : param_list) {
    for (double lambda : lambdas) {
      const int pv = param.value_or(0);
      const Integrand2D F = entry.make(lambda, pv);

      AdaptiveResult res;
      std::chrono::nanoseconds total{0};
      for (int r = 0; r < opts.repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        res = adaptive_integrate(F, entry.domain, cfg);
        total += std::chrono::steady_clock::now() - t0;
      }

      ReportRow row;
      row.entry = entry.name;
      row.lambda = lambda;
      row.param = param;
      row.value = res.value;
      row.runtime_ns = total.count() / opts.repeats;
      row.rects = static_cast<long>(res.mesh.size());
      row.fevals = res.fevals;
      row.subints = res.subints;
      row.depth_exceeded = res.depth_exceeded;

      if (entry.closed_form && opts.reference != ReferenceMode::none) {
        row.abs_error = std::abs(res.value - entry.closed_form(lambda, pv));
      } else if (opts.reference == ReferenceMode::automatic) {
        const OracleResult ref = adaptive_gauss(F, entry.domain, opts.oracle_tol);
        row.abs_error = std::abs(res.value - ref.value);
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace dlevin
