#pragma once

#include "curvlab/derived/derived.hpp"
#include "curvlab/soliton/soliton.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curvlab {

inline constexpr std::string_view kManifestSchema = "curvlab-manifest/1";
/// Directory searched for relative manifest paths that do not exist as given.
inline constexpr const char* kManifestDirEnv = "CURVLAB_MANIFEST_DIR";

/// Invalid manifest. `field` is a dotted path such as "metric.g22".
class ManifestError : public std::runtime_error {
 public:
  ManifestError(std::string field, const std::string& message, std::optional<std::size_t> position = std::nullopt);
  const std::string& field() const { return field_; }
  /// Character offset inside the field's expression string, for parse errors.
  std::optional<std::size_t> position() const { return position_; }

 private:
  std::string field_;
  std::optional<std::size_t> position_;
};

struct ManifestOptions {
  Convention convention;
  EvalMode mode = EvalMode::Rational;
  SampleBox box;
  std::uint64_t seed = 0;
  std::size_t samples = kSampleCount;
};

struct SolitonInput {
  std::vector<Expr> U;
  Rational rho{0};
  std::optional<Rational> lambda;
};

struct ManifoldManifest {
  std::string name;
  std::vector<std::string> coords;
  ExprMatrix metric;
  std::optional<MsqeInput> structure;
  std::optional<PhysicsConfig> physics;
  std::optional<SolitonInput> soliton;
  ManifestOptions options;

  std::size_t dimension() const { return coords.size(); }
  ChartManifold chart() const { return ChartManifold(coords, metric, options.convention); }
};

/// Validates and parses a manifest document. Throws ManifestError.
ManifoldManifest parse_manifest(std::string_view text);
/// Reads a file; relative paths fall back to $CURVLAB_MANIFEST_DIR. Throws ManifestError.
ManifoldManifest load_manifest(const std::filesystem::path& path);
std::filesystem::path resolve_manifest_path(const std::filesystem::path& path);

} // namespace curvlab
