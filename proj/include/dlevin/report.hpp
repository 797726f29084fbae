#pragma once

// Serialization of sweep reports (CSV, JSON) and accepted meshes (CSV).
// Floating-point fields carry 17 significant digits so values round-trip.

#include <iosfwd>
#include <string>

#include "dlevin/catalog.hpp"

namespace dlevin {

enum class ReportFormat { csv, json };

inline constexpr const char* kReportCsvHeader =
    "entry,lambda,param,re,im,abs_error,runtime_ns,rects,fevals,subints";
inline constexpr const char* kMeshCsvHeader = "x0,x1,y0,y1,depth,direction,grad_ratio,low_freq";

void emit_report(const RunReport& report, ReportFormat format, std::ostream& out);
std::string emit_report(const RunReport& report, ReportFormat format);

// Inverse of emit_report. Throws std::invalid_argument on malformed input.
RunReport parse_report(const std::string& text, ReportFormat format);

void emit_mesh_csv(const std::vector<MeshRow>& rows, std::ostream& out);

std::string format_double(double v);

}  // namespace dlevin
