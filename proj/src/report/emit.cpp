#include "curvlab/report/report.hpp"

#include <sstream>

namespace curvlab {

using nlohmann::ordered_json;

namespace {

const char* mode_name(EvalMode m) { return m == EvalMode::Rational ? "rational" : "float"; }

// Code points, so that Greek labels align with ASCII ones.
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char ch : s) w += (ch & 0xC0) != 0x80 ? 1 : 0;
  return w;
}

} // namespace

ordered_json report_json(const AnalysisReport& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["version"] = report.version;
  j["manifest"] = report.manifest;
  j["convention"] = {{"name", report.convention.name()}, {"curvature_sign", report.convention.ricci_sign}};
  j["mode"] = mode_name(report.mode);
  j["seed"] = report.seed;
  j["sample_box"] = {to_string(report.box.lo), to_string(report.box.hi)};
  ordered_json pts = ordered_json::array();
  for (const auto& p : report.points) {
    ordered_json row = ordered_json::array();
    for (const auto& v : p) row.push_back(v.to_string());
    pts.push_back(row);
  }
  j["sample_points"] = pts;
  ordered_json sections = ordered_json::object();
  for (const auto& s : report.sections) {
    ordered_json sec;
    sec["status"] = s.status;
    if (!s.reason.empty()) sec["reason"] = s.reason;
    if (s.status == "ok") {
      sec["warnings"] = s.warnings;
      sec["data"] = s.data;
    }
    sections[s.name] = sec;
  }
  j["sections"] = sections;
  return j;
}

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
  if (format == ReportFormat::Structured) return report_json(report).dump(2) + "\n";

  std::ostringstream out;
  const std::size_t n = report.points.empty() ? 0 : report.points.front().size();
  out << "curvlab " << report.version << " report for " << report.manifest << "\n";
  out << "convention: " << report.convention.name() << " (curvature sign " << report.convention.ricci_sign << ")\n";
  out << "mode: " << mode_name(report.mode) << ", seed " << report.seed << ", " << report.points.size()
      << " sample points in [" << to_string(report.box.lo) << ", " << to_string(report.box.hi) << "]^" << n << "\n";
  for (const auto& s : report.sections) {
    out << "\n== " << s.name;
    if (s.status != "ok") {
      out << ": skipped (" << s.reason << ") ==\n";
      continue;
    }
    out << " ==\n";
    for (const auto& t : s.tables) {
      out << t.title << "\n";
      std::size_t width = 0;
      for (const auto& [label, _] : t.rows) width = std::max(width, display_width(label));
      for (const auto& [label, value] : t.rows) {
        out << "  " << label << std::string(width - display_width(label), ' ') << " = " << value << "\n";
      }
    }
    for (const auto& l : s.lines) out << l << "\n";
    for (const auto& w : s.warnings) out << "  warning: " << w << "\n";
  }
  return out.str();
}

} // namespace curvlab
