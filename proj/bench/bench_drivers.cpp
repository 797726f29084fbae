// Serial vs OpenMP quad-tree drivers on catalog integrands, for both the
// Levin integrator and the Gauss oracle. Prints mean wall time per run and
// checks that the two drivers agree bit-for-bit.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "dlevin/adapt.hpp"
#include "dlevin/catalog.hpp"
#include "dlevin/oracle.hpp"

namespace {

template <class Fn>
double mean_ms(int runs, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < runs; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / runs;
}

}  // namespace

int main(int argc, char** argv) {
  const int runs = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads: %d, runs per case: %d\n\n", omp_get_max_threads(), runs);
  std::printf("%-6s %-8s %-7s %12s %12s %8s %s\n", "entry", "lambda", "method", "serial_ms",
              "parallel_ms", "speedup", "identical");

  struct Case {
    const char* entry;
    double lambda;
  };
  const Case cases[] = {{"I2", 1e2}, {"I2", 1e4}, {"I6", 1e2}, {"I6", 1e3}, {"I7", 1e2}};

  bool all_identical = true;
  for (const Case& c : cases) {
    const dlevin::CatalogEntry& e = dlevin::find_entry(c.entry);
    const dlevin::Integrand2D F = e.make(c.lambda, e.default_param);

    dlevin::AdaptiveConfig serial_cfg;
    dlevin::AdaptiveConfig parallel_cfg;
    parallel_cfg.parallel = true;
    dlevin::AdaptiveResult rs, rp;
    const double ts = mean_ms(runs, [&] { rs = dlevin::adaptive_integrate(F, e.domain, serial_cfg); });
    const double tp =
        mean_ms(runs, [&] { rp = dlevin::adaptive_integrate(F, e.domain, parallel_cfg); });
    const bool same = rs.value == rp.value && rs.mesh.size() == rp.mesh.size();
    all_identical = all_identical && same;
    std::printf("%-6s %-8g %-7s %12.3f %12.3f %8.2f %s\n", c.entry, c.lambda, "levin", ts, tp,
                ts / tp, same ? "yes" : "NO");

    dlevin::OracleConfig os{10, 40, false};
    dlevin::OracleConfig op{10, 40, true};
    dlevin::OracleResult gs, gp;
    const double gts = mean_ms(1, [&] { gs = dlevin::adaptive_gauss(F, e.domain, 1e-14, os); });
    const double gtp = mean_ms(1, [&] { gp = dlevin::adaptive_gauss(F, e.domain, 1e-14, op); });
    const bool gsame = gs.value == gp.value && gs.rects == gp.rects;
    all_identical = all_identical && gsame;
    std::printf("%-6s %-8g %-7s %12.3f %12.3f %8.2f %s\n", c.entry, c.lambda, "gauss", gts, gtp,
                gts / gtp, gsame ? "yes" : "NO");
  }
  return all_identical ? 0 : 1;
}
