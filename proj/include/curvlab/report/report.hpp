#pragma once

#include "curvlab/report/manifest.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace curvlab {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportSchema = "curvlab-report/1";

/// Every analysis, in dependency order.
const std::vector<std::string>& available_analyses();
/// Throws std::invalid_argument for unknown names. Returns them in dependency order.
std::vector<std::string> normalize_analyses(const std::vector<std::string>& names);

/// Label / value rows printed as an aligned block in the human format.
struct ReportTable {
  std::string title;
  std::vector<std::pair<std::string, std::string>> rows;
};

struct ReportSection {
  std::string name;
  /// "ok" or "skipped".
  std::string status = "ok";
  std::string reason;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  std::vector<ReportTable> tables;
  /// Printed verbatim after the tables in the human format.
  std::vector<std::string> lines;
  std::vector<std::string> warnings;
};

struct AnalysisReport {
  std::string version{kToolVersion};
  std::string manifest;
  Convention convention;
  EvalMode mode = EvalMode::Rational;
  std::uint64_t seed = 0;
  SampleBox box;
  std::vector<Point> points;
  std::vector<ReportSection> sections;

  const ReportSection* section(std::string_view name) const;
};

struct PipelineOverrides {
  std::optional<Convention> convention;
  std::optional<EvalMode> mode;
  std::optional<std::uint64_t> seed;
};

/// Runs the requested analyses. Missing manifest blocks give skipped sections.
/// Throws SingularMetricError for a degenerate metric.
AnalysisReport run_pipeline(const ManifoldManifest& manifest, const std::vector<std::string>& analyses,
                            const PipelineOverrides& overrides = {});

enum class ReportFormat { Structured, Human };

/// Structured: JSON with stable key order and a trailing newline. Human: aligned text.
std::string emit_report(const AnalysisReport& report, ReportFormat format);
nlohmann::ordered_json report_json(const AnalysisReport& report);

} // namespace curvlab
