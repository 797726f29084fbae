#pragma once

// Benchmark integrands with known behaviour: plane-wave-like phases (I1,
// I2), an isolated stationary point of order n (I5), stationary plus
// resonance points (I6) and an (m+1)^2 lattice of stationary points (I7).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlevin/adapt.hpp"

namespace dlevin {

struct CatalogEntry {
  std::string name;
  Rectangle domain;
  std::string param_name;  // empty when the family has no integer parameter
  int default_param = 0;
  std::function<Integrand2D(double lambda, int param)> make;
  // Empty when no closed form is available.
  std::function<cplx(double lambda, int param)> closed_form;

  bool has_param() const { return !param_name.empty(); }
};

const std::vector<CatalogEntry>& catalog();

// Throws std::invalid_argument for an unknown name.
const CatalogEntry& find_entry(const std::string& name);

// -((1 - exp(i lambda atan 2)) / lambda)^2, the value of I2(lambda).
cplx closed_form_I2(double lambda);

enum class ReferenceMode {
  automatic,    // closed form when available, else the Gauss oracle
  closed_form,  // closed form or nothing
  none,
};

struct ReportRow {
  std::string entry;
  double lambda = 0.0;
  std::optional<int> param;
  cplx value = 0.0;
  std::optional<double> abs_error;
  long long runtime_ns = 0;
  long rects = 0;
  long fevals = 0;
  long subints = 0;
  bool depth_exceeded = false;  // carried in JSON only
};

struct RunReport {
  std::vector<ReportRow> rows;

  bool any_depth_exceeded() const;
};

struct SweepOptions {
  int repeats = 1;
  ReferenceMode reference = ReferenceMode::automatic;
  double oracle_tol = 1e-14;
};

// Runs adaptive_integrate for every (param, lambda) pair, params outer.
// Runtime is the mean over `repeats` runs and excludes building the
// integrand and computing the reference.
RunReport run_sweep(const CatalogEntry& entry, std::span<const double> lambdas,
                    std::span<const int> params, const AdaptiveConfig& cfg,
                    const SweepOptions& opts = {});

// 10^x for `count` equispaced x in [lo_exp, hi_exp].
std::vector<double> log_spaced(double lo_exp, double hi_exp, int count);

}  // namespace dlevin
