#include "dlevin/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dlevin {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("report: bad number '" + s + "'");
  }
  return v;
}

long long parse_int(const std::string& s) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("report: bad integer '" + s + "'");
  }
  return v;
}

// JSON has no representation for non-finite numbers; they travel as strings.
nlohmann::json json_double(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double from_json_double(const nlohmann::json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_report(const RunReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::csv) {
    out << kReportCsvHeader << '\n';
    for (const ReportRow& r : report.rows) {
      out << r.entry << ',' << format_double(r.lambda) << ',';
      if (r.param) out << *r.param;
      out << ',' << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ',';
      if (r.abs_error) out << format_double(*r.abs_error);
      out << ',' << r.runtime_ns << ',' << r.rects << ',' << r.fevals << ',' << r.subints << '\n';
    }
    return;
  }

  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::json j;
    j["entry"] = r.entry;
    j["lambda"] = json_double(r.lambda);
    j["param"] = r.param ? nlohmann::json(*r.param) : nlohmann::json(nullptr);
    j["re"] = json_double(r.value.real());
    j["im"] = json_double(r.value.imag());
    j["abs_error"] = r.abs_error ? json_double(*r.abs_error) : nlohmann::json(nullptr);
    j["runtime_ns"] = r.runtime_ns;
    j["rects"] = r.rects;
    j["fevals"] = r.fevals;
    j["subints"] = r.subints;
    j["depth_exceeded"] = r.depth_exceeded;
    rows.push_back(std::move(j));
  }
  // dump() prints doubles with round-trip precision.
  out << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  std::ostringstream os;
  emit_report(report, format, os);
  return os.str();
}

RunReport parse_report(const std::string& text, ReportFormat format) {
  RunReport report;
  if (format == ReportFormat::csv) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) != split_csv(kReportCsvHeader)) {
      throw std::invalid_argument("report: missing or unexpected CSV header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const std::vector<std::string> f = split_csv(line);
      if (f.size() != 10) throw std::invalid_argument("report: expected 10 CSV fields");
      ReportRow r;
      r.entry = f[0];
      r.lambda = parse_double(f[1]);
      if (!f[2].empty()) r.param = static_cast<int>(parse_int(f[2]));
      r.value = cplx(parse_double(f[3]), parse_double(f[4]));
      if (!f[5].empty()) r.abs_error = parse_double(f[5]);
      r.runtime_ns = parse_int(f[6]);
      r.rects = static_cast<long>(parse_int(f[7]));
      r.fevals = static_cast<long>(parse_int(f[8]));
      r.subints = static_cast<long>(parse_int(f[9]));
      report.rows.push_back(std::move(r));
    }
    return report;
  }

  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    for (const nlohmann::json& j : doc.at("rows")) {
      ReportRow r;
      r.entry = j.at("entry").get<std::string>();
      r.lambda = from_json_double(j.at("lambda"));
      if (!j.at("param").is_null()) r.param = j.at("param").get<int>();
      r.value = cplx(from_json_double(j.at("re")), from_json_double(j.at("im")));
      if (!j.at("abs_error").is_null()) r.abs_error = from_json_double(j.at("abs_error"));
      r.runtime_ns = j.at("runtime_ns").get<long long>();
      r.rects = j.at("rects").get<long>();
      r.fevals = j.at("fevals").get<long>();
      r.subints = j.at("subints").get<long>();
      r.depth_exceeded = j.value("depth_exceeded", false);
      report.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report: bad JSON: ") + e.what());
  }
  return report;
}

void emit_mesh_csv(const std::vector<MeshRow>& rows, std::ostream& out) {
  out << kMeshCsvHeader << '\n';
  for (const MeshRow& r : rows) {
    out << format_double(r.x0) << ',' << format_double(r.x1) << ',' << format_double(r.y0) << ','
        << format_double(r.y1) << ',' << r.depth << ','
        << (r.direction == Direction::x ? 'x' : 'y') << ',' << format_double(r.grad_ratio) << ','
        << (r.low_freq ? 1 : 0) << '\n';
  }
}

}  // namespace dlevin
