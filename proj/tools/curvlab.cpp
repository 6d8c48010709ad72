#include "curvlab/report/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

struct Options {
  std::string manifest;
  std::vector<std::string> analyses;
  std::string format = "human";
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::string convention;
  std::string output;
};

const std::map<std::string, std::vector<std::string>> kGroups = {
    {"curvature", {"curvature"}},
    {"classify",
     {"frame", "msqe-fit", "quasi-constant", "recurrence", "vector-fields", "structure-checks", "pseudosymmetry"}},
    {"soliton", {"soliton"}},
    {"physics", {"physics"}},
    {"identities", {"identities"}},
    {"report", {"all"}},
};

int run(const std::string& command, const Options& opt) {
  curvlab::ManifoldManifest manifest;
  try {
    manifest = curvlab::load_manifest(opt.manifest);
  } catch (const curvlab::ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 1;
  }
  curvlab::PipelineOverrides ov;
  if (opt.convention == "reversed") ov.convention = curvlab::Convention::reversed();
  if (opt.convention == "textbook") ov.convention = curvlab::Convention::textbook();
  if (opt.mode == "rational") ov.mode = curvlab::EvalMode::Rational;
  if (opt.mode == "float") ov.mode = curvlab::EvalMode::Float;
  ov.seed = opt.seed;
  std::vector<std::string> analyses = opt.analyses.empty() ? kGroups.at(command) : opt.analyses;
  try {
    analyses = curvlab::normalize_analyses(analyses);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  curvlab::AnalysisReport report;
  try {
    report = curvlab::run_pipeline(manifest, analyses, ov);
  } catch (const curvlab::SingularMetricError& e) {
    std::cerr << "manifest error: metric: " << e.what() << "\n";
    return 1;
  }
  auto fmt = opt.format == "structured" ? curvlab::ReportFormat::Structured : curvlab::ReportFormat::Human;
  std::string text = curvlab::emit_report(report, fmt);
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!(out << text)) {
      std::cerr << "cannot write " << opt.output << "\n";
      return 2;
    }
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and structure analysis of metrics given in a manifest"};
  app.require_subcommand(1);
  Options opt;
  std::string analyses_csv;
  std::string chosen;
  for (const auto& [name, _] : kGroups) {
    auto* sub = app.add_subcommand(name, name == "report" ? "run every analysis" : "run the " + name + " analyses");
    sub->add_option("--manifest,-m", opt.manifest, "manifest file (relative paths also searched in $" +
                                                      std::string(curvlab::kManifestDirEnv) + ")")
        ->required();
    sub->add_option("--analyses,-a", opt.analyses, "comma-separated analyses to run instead of the default set")
        ->delimiter(',');
    sub->add_option("--format,-f", opt.format, "output format")->check(CLI::IsMember({"structured", "human"}));
    sub->add_option("--mode", opt.mode, "evaluation mode")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--seed", opt.seed, "sample point seed");
    sub->add_option("--convention", opt.convention, "curvature sign convention")
        ->check(CLI::IsMember({"reversed", "textbook"}));
    sub->add_option("--output,-o", opt.output, "write the report to a file");
    sub->callback([&chosen, n = name] { chosen = n; });
  }
  app.footer("analyses: " + [] {
    std::string s;
    for (const auto& a : curvlab::available_analyses()) s += (s.empty() ? "" : ", ") + a;
    return s;
  }());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    return run(chosen, opt);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
