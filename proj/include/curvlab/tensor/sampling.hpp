#pragma once

#include "curvlab/expr/evaluate.hpp"
#include "curvlab/tensor/tensor.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace curvlab {

inline constexpr std::size_t kSampleCount = 20;
/// Relative tolerance for float residuals.
inline constexpr double kFloatTolerance = 1e-9;

struct SampleBox {
  Rational lo{1, 2};
  Rational hi{3};
};

/// `count` rational Halton points in box^n, bases the first n primes.
/// The seed shifts the start of the sequence.
std::vector<Point> sample_points(std::size_t n, std::uint64_t seed = 0, SampleBox box = {},
                                 std::size_t count = kSampleCount);

/// Outcome of checking that a sum of terms vanishes.
struct ResidualCheck {
  bool symbolic_zero = false;
  /// Largest |sum| seen. Exact when every evaluated residual was exact.
  NumericValue max_abs;
  /// Largest |sum| / max(1, |term|...) seen among float residuals.
  double max_relative = 0.0;
  bool exact = true;
  /// Some exact residual was nonzero.
  bool exact_failure = false;
  std::size_t points_used = 0;
  std::size_t points_skipped = 0;
  double tolerance = kFloatTolerance;

  bool passed() const;
  /// "exact", "approximate" or "fails".
  std::string verdict() const;
  ResidualCheck& merge(const ResidualCheck& other);
};

/// Checks that the terms add to zero: symbolically first, then at the points.
/// Points where evaluation fails are skipped and counted.
ResidualCheck check_zero(std::span<const Expr> terms, std::span<const Point> points,
                         EvalMode mode = EvalMode::Rational, double tolerance = kFloatTolerance);
ResidualCheck check_zero(const Expr& e, std::span<const Point> points,
                         EvalMode mode = EvalMode::Rational, double tolerance = kFloatTolerance);
/// a - b componentwise.
ResidualCheck check_equal(const TensorField& a, const TensorField& b, std::span<const Point> points,
                          EvalMode mode = EvalMode::Rational, double tolerance = kFloatTolerance);
ResidualCheck check_zero(const TensorField& t, std::span<const Point> points,
                         EvalMode mode = EvalMode::Rational, double tolerance = kFloatTolerance);

} // namespace curvlab
