#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "dlevin/catalog.hpp"
#include "dlevin/oracle.hpp"
#include "dlevin/report.hpp"
#include "support/oracles.hpp"

using namespace dlevin;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

void check_same(const RunReport& a, const RunReport& b, bool with_flags) {
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const ReportRow& x = a.rows[i];
    const ReportRow& y = b.rows[i];
    CHECK(x.entry == y.entry);
    CHECK(x.lambda == y.lambda);
    CHECK(x.param == y.param);
    CHECK(x.value == y.value);
    CHECK(x.abs_error.has_value() == y.abs_error.has_value());
    if (x.abs_error && y.abs_error) {
      CHECK((*x.abs_error == *y.abs_error || (std::isnan(*x.abs_error) && std::isnan(*y.abs_error))));
    }
    CHECK(x.runtime_ns == y.runtime_ns);
    CHECK(x.rects == y.rects);
    CHECK(x.fevals == y.fevals);
    CHECK(x.subints == y.subints);
    if (with_flags) CHECK(x.depth_exceeded == y.depth_exceeded);
  }
}

RunReport sample_report() {
  RunReport r;
  r.rows.push_back({"I2", 10.0, std::nullopt, cplx(-0.0123456789012345678, 1.0 / 3.0), 3.2e-13,
                    123456789, 163, 100000, 2000, false});
  r.rows.push_back({"I7", 31.622776601683793, 4, cplx(1e-300, -2.5e17), std::nullopt, 1, 1, 2, 3,
                    true});
  r.rows.push_back({"I5", 1e4, 3, cplx(0.0, -0.0), INFINITY, 0, 0, 0, 0, false});
  return r;
}

}  // namespace

TEST_CASE("catalog contents") {
  const auto& cat = catalog();
  REQUIRE(cat.size() == 5);
  const char* names[] = {"I1", "I2", "I5", "I6", "I7"};
  for (int i = 0; i < 5; ++i) CHECK(cat[i].name == names[i]);
  CHECK(find_entry("I1").domain == Rectangle{0, 1, 0, 1});
  CHECK(find_entry("I2").domain == Rectangle{0, 2, 0, 2});
  CHECK(find_entry("I5").domain == Rectangle{-1, 1, -1, 1});
  CHECK(find_entry("I6").domain == Rectangle{-1, 1, -1, 1});
  CHECK(find_entry("I7").domain == Rectangle{0, 1, 0, 1});
  CHECK(find_entry("I5").param_name == "n");
  CHECK(find_entry("I7").param_name == "m");
  CHECK_FALSE(find_entry("I6").has_param());
  CHECK(find_entry("I2").closed_form);
  CHECK_FALSE(find_entry("I1").closed_form);
  CHECK_THROWS_AS(find_entry("I3"), std::invalid_argument);
  CHECK_THROWS_AS(find_entry("I5").make(10.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(find_entry("I7").make(10.0, 0), std::invalid_argument);

  // phases are real by type
  static_assert(std::is_same_v<decltype(std::declval<Integrand2D>().phase(0.0, 0.0)), double>);

  // spot values straight from the defining formulas
  const Integrand2D i1 = find_entry("I1").make(3.0, 0);
  CHECK(i1.amplitude(0.2, 0.3) == cplx(std::cos(0.5)));
  CHECK(i1.phase(0.2, 0.3) == doctest::Approx(3.0 * (0.5 + 0.04 + 0.09)));
  const Integrand2D i5 = find_entry("I5").make(2.0, 3);
  CHECK(i5.phase(0.5, -0.5) == doctest::Approx(0.0));
  CHECK(i5.phase(0.5, 0.5) == doctest::Approx(0.5));
  CHECK(std::abs(i5.amplitude(1.0, 1.0) - 1.0 / 3.0) <= 1e-16);
  const Integrand2D i6 = find_entry("I6").make(2.0, 0);
  CHECK(i6.phase(1.0, 0.5) == doctest::Approx(2.0 * (1.0 - 0.5 - 0.25)));
  CHECK(i6.amplitude(1.0, 0.5) == cplx(1.5));
}

TEST_CASE("closed form of I2") {
  CHECK(std::abs(closed_form_I2(1e4)) <= 4e-8);
  const double zero_at = 2.0 * std::numbers::pi / std::atan(2.0);
  CHECK(std::abs(closed_form_I2(zero_at)) <= 1e-30);
  CHECK_THROWS_AS(closed_form_I2(0.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_I2(NAN), std::invalid_argument);

  const CatalogEntry& e = find_entry("I2");
  const cplx oracle = adaptive_gauss(e.make(10.0, 0), e.domain, 1e-14).value;
  CHECK(std::abs(closed_form_I2(10.0) - oracle) <= 1e-12);
  CHECK(e.closed_form(10.0, 0) == closed_form_I2(10.0));
}

TEST_CASE("I7 phase is stationary on the (m+1)^2 lattice") {
  const CatalogEntry& e = find_entry("I7");
  const double lambda = 100.0;
  for (int m = 1; m <= 4; ++m) {
    const Integrand2D F = e.make(lambda, m);
    int stationary = 0;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b) {
        const double x = double(a) / m, y = double(b) / m;
        const double gx =
            dlevin::testing::central_diff([&](double s) { return F.phase(s, y); }, x, 1e-4);
        const double gy =
            dlevin::testing::central_diff([&](double s) { return F.phase(x, s); }, y, 1e-4);
        if (std::hypot(gx, gy) <= 1e-10 * lambda) ++stationary;
      }
    CHECK(stationary == (m + 1) * (m + 1));
    // and not stationary halfway between lattice lines
    const double h = 0.5 / m;
    const double gx = dlevin::testing::central_diff([&](double s) { return F.phase(s, 0.0); }, h,
                                                     1e-4);
    CHECK(std::abs(gx) > 1.0);
  }
}

TEST_CASE("log-spaced frequencies") {
  const auto l = log_spaced(1.0, 4.0, 100);
  REQUIRE(l.size() == 100);
  CHECK(l.front() == 10.0);
  CHECK(l.back() == doctest::Approx(1e4).epsilon(1e-15));
  for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i] > l[i - 1]);
  CHECK(log_spaced(2.0, 5.0, 1) == std::vector<double>{100.0});
  CHECK_THROWS_AS(log_spaced(1, 2, 0), std::invalid_argument);
}

TEST_CASE("sweeps") {
  const AdaptiveConfig cfg;
  const std::vector<double> ten{10.0};
  const RunReport r2 = run_sweep(find_entry("I2"), ten, {}, cfg);
  REQUIRE(r2.rows.size() == 1);
  CHECK(r2.rows[0].entry == "I2");
  CHECK_FALSE(r2.rows[0].param.has_value());
  REQUIRE(r2.rows[0].abs_error.has_value());
  CHECK(*r2.rows[0].abs_error <= 1e-11);
  CHECK(r2.rows[0].runtime_ns > 0);
  CHECK(r2.rows[0].rects > 1);
  CHECK(r2.rows[0].fevals > r2.rows[0].rects);
  CHECK(r2.rows[0].subints > 0);
  CHECK_FALSE(r2.any_depth_exceeded());

  const std::vector<int> m1{1};
  const RunReport r7 = run_sweep(find_entry("I7"), ten, m1, cfg);
  REQUIRE(r7.rows.size() == 1);
  CHECK(r7.rows[0].param == 1);
  REQUIRE(r7.rows[0].abs_error.has_value());
  CHECK(*r7.rows[0].abs_error <= 1e-10);

  SweepOptions cf;
  cf.reference = ReferenceMode::closed_form;
  CHECK_FALSE(run_sweep(find_entry("I7"), ten, m1, cfg, cf).rows[0].abs_error.has_value());
  SweepOptions none;
  none.reference = ReferenceMode::none;
  CHECK_FALSE(run_sweep(find_entry("I2"), ten, {}, cfg, none).rows[0].abs_error.has_value());

  // params outer, lambdas inner
  const std::vector<double> two{5.0, 10.0};
  const std::vector<int> ns{3, 2};
  const RunReport order = run_sweep(find_entry("I5"), two, ns, cfg, none);
  REQUIRE(order.rows.size() == 4);
  CHECK(order.rows[0].param == 3);
  CHECK(order.rows[0].lambda == 5.0);
  CHECK(order.rows[1].param == 3);
  CHECK(order.rows[1].lambda == 10.0);
  CHECK(order.rows[2].param == 2);
  CHECK(order.rows[3].lambda == 10.0);
  // the default parameter is used when none is given
  CHECK(run_sweep(find_entry("I5"), ten, {}, cfg, none).rows[0].param == 2);

  CatalogEntry silent{"zero", {-1, 1, -1, 1}, "", 0,
                      [](double lambda, int) {
                        return Integrand2D{[](double, double) { return cplx(0.0); },
                                           [lambda](double x, double) { return lambda * x; },
                                           {-1, 1, -1, 1}};
                      },
                      {}};
  const std::vector<double> many{1.0, 10.0, 100.0};
  for (const ReportRow& row : run_sweep(silent, many, {}, cfg).rows) CHECK(row.value == cplx(0.0));

  SweepOptions zero_repeats;
  zero_repeats.repeats = 0;
  CHECK_THROWS_AS(run_sweep(find_entry("I2"), ten, {}, cfg, zero_repeats), std::invalid_argument);

  AdaptiveConfig shallow;
  shallow.max_depth = 0;
  CHECK(run_sweep(find_entry("I6"), std::vector<double>{100.0}, {}, shallow, none)
            .any_depth_exceeded());
}

TEST_CASE("report serialization") {
  const RunReport r = sample_report();
  const std::string csv = emit_report(r, ReportFormat::csv);
  const auto lines = lines_of(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "entry,lambda,param,re,im,abs_error,runtime_ns,rects,fevals,subints");
  CHECK(lines[1] ==
        "I2,10,,-0.012345678901234568,0.33333333333333331,3.2e-13,123456789,163,"
        "100000,2000");
  CHECK(lines[2].starts_with("I7,31.622776601683793,4,1e-300,-2.5e+17,,1,1,2,3"));
  check_same(parse_report(csv, ReportFormat::csv), r, false);

  const std::string js = emit_report(r, ReportFormat::json);
  check_same(parse_report(js, ReportFormat::json), r, true);
  const auto doc = nlohmann::json::parse(js);
  REQUIRE(doc.at("rows").size() == 3);
  const auto& row0 = doc["rows"][0];
  for (const char* key : {"entry", "lambda", "param", "re", "im", "abs_error", "runtime_ns",
                          "rects", "fevals", "subints"}) {
    CHECK(row0.contains(key));
  }
  CHECK(row0["param"].is_null());
  CHECK(doc["rows"][1]["abs_error"].is_null());
  CHECK(doc["rows"][1]["depth_exceeded"] == true);

  RunReport one;
  one.rows.push_back(r.rows[0]);
  CHECK(lines_of(emit_report(one, ReportFormat::csv)).size() == 2);

  std::ostringstream os;
  emit_report(r, ReportFormat::csv, os);
  CHECK(os.str() == csv);

  CHECK_THROWS_AS(parse_report("nope\n", ReportFormat::csv), std::invalid_argument);
  CHECK_THROWS_AS(parse_report(std::string(kReportCsvHeader) + "\nI2,1,2\n", ReportFormat::csv),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_report(std::string(kReportCsvHeader) + "\nI2,x,,1,1,,1,1,1,1\n",
                               ReportFormat::csv),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_report("{\"rows\": [{}]}", ReportFormat::json), std::invalid_argument);
  CHECK_THROWS_AS(parse_report("{", ReportFormat::json), std::invalid_argument);
}

TEST_CASE("a 100-row sweep serializes to 101 CSV lines") {
  AdaptiveConfig loose;  // the format, not the accuracy, is under test
  loose.eps_sub = 1e-8;
  const auto lambdas = log_spaced(1.0, 4.0, 100);
  SweepOptions opts;
  opts.reference = ReferenceMode::closed_form;
  const RunReport r = run_sweep(find_entry("I2"), lambdas, {}, loose, opts);
  const std::string csv = emit_report(r, ReportFormat::csv);
  const auto lines = lines_of(csv);
  REQUIRE(lines.size() == 101);
  const RunReport back = parse_report(csv, ReportFormat::csv);
  for (std::size_t i = 1; i < back.rows.size(); ++i) {
    CHECK(back.rows[i].lambda > back.rows[i - 1].lambda);
  }
  check_same(back, r, false);
}

TEST_CASE("mesh CSV") {
  const CatalogEntry& e = find_entry("I5");
  const AdaptiveResult res = adaptive_integrate(e.make(30.0, 2), e.domain, {});
  std::ostringstream os;
  emit_mesh_csv(mesh_dump(res), os);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == res.mesh.size() + 1);
  CHECK(lines[0] == "x0,x1,y0,y1,depth,direction,grad_ratio,low_freq");
  double area = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> f;
    std::istringstream in(lines[i]);
    for (std::string s; std::getline(in, s, ',');) f.push_back(s);
    REQUIRE(f.size() == 8);
    area += (std::stod(f[1]) - std::stod(f[0])) * (std::stod(f[3]) - std::stod(f[2]));
    CHECK((f[5] == "x" || f[5] == "y"));
    CHECK((f[7] == "0" || f[7] == "1"));
    CHECK(std::stoi(f[4]) == res.mesh[i - 1].depth);
  }
  CHECK(area == doctest::Approx(4.0).epsilon(1e-12));

  std::ostringstream inf;
  emit_mesh_csv({{0, 1, 0, 1, 0, Direction::y, INFINITY, true}}, inf);
  CHECK(lines_of(inf.str())[1] == "0,1,0,1,0,y,inf,1");
}

TEST_CASE("17 significant digits round-trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e4, 31.622776601683793}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
