#include "curvlab/tensor/sampling.hpp"

#include "curvlab/expr/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvlab {

namespace {

std::vector<unsigned> first_primes(std::size_t n) {
  std::vector<unsigned> primes;
  for (unsigned c = 2; primes.size() < n; ++c) {
    bool prime = std::none_of(primes.begin(), primes.end(), [&](unsigned p) { return c % p == 0; });
    if (prime) primes.push_back(c);
  }
  return primes;
}

Rational radical_inverse(std::uint64_t index, unsigned base) {
  Rational value(0);
  Rational scale(1, base);
  while (index > 0) {
    value += scale * Rational(static_cast<unsigned long>(index % base));
    index /= base;
    scale /= base;
  }
  return value;
}

} // namespace

std::vector<Point> sample_points(std::size_t n, std::uint64_t seed, SampleBox box, std::size_t count) {
  if (!(box.lo < box.hi)) throw std::invalid_argument("sample box is empty");
  auto bases = first_primes(n);
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Point p;
    for (std::size_t d = 0; d < n; ++d) {
      Rational h = radical_inverse(seed + k + 1, bases[d]);
      p.emplace_back(Rational(box.lo + (box.hi - box.lo) * h));
    }
    points.push_back(std::move(p));
  }
  return points;
}

bool ResidualCheck::passed() const {
  if (symbolic_zero) return true;
  if (exact_failure || points_used == 0) return false;
  if (exact) return true;
  return max_relative <= tolerance;
}

std::string ResidualCheck::verdict() const {
  if (!passed()) return "fails";
  return symbolic_zero || exact ? "exact" : "approximate";
}

ResidualCheck& ResidualCheck::merge(const ResidualCheck& o) {
  if (o.symbolic_zero) return *this;
  symbolic_zero = false;
  if (max_abs.abs() < o.max_abs.abs()) max_abs = o.max_abs.abs();
  max_relative = std::max(max_relative, o.max_relative);
  exact = exact && o.exact;
  exact_failure = exact_failure || o.exact_failure;
  points_used = std::max(points_used, o.points_used);
  points_skipped = std::max(points_skipped, o.points_skipped);
  tolerance = std::max(tolerance, o.tolerance);
  return *this;
}

ResidualCheck check_zero(std::span<const Expr> terms, std::span<const Point> points, EvalMode mode,
                         double tolerance) {
  ResidualCheck out;
  out.tolerance = tolerance;
  Expr total = Expr::sum(std::vector<Expr>(terms.begin(), terms.end()));
  Expr reduced;
  try {
    reduced = simplify(total);
  } catch (const std::domain_error&) {
    reduced = total;
  }
  if (reduced.is_zero()) {
    out.symbolic_zero = true;
    return out;
  }
  for (const auto& p : points) {
    NumericValue sum = mode == EvalMode::Float ? NumericValue(0.0) : NumericValue();
    double scale = 1.0;
    try {
      for (const auto& t : terms) {
        NumericValue v = evaluate(t, p, mode);
        scale = std::max(scale, std::fabs(v.to_double()));
        sum += v;
      }
    } catch (const EvaluationError&) {
      ++out.points_skipped;
      continue;
    }
    ++out.points_used;
    if (sum.is_exact()) {
      if (!sum.is_zero()) out.exact_failure = true;
    } else {
      out.exact = false;
      out.max_relative = std::max(out.max_relative, std::fabs(sum.to_double()) / scale);
    }
    if (out.max_abs.abs() < sum.abs()) out.max_abs = sum.abs();
  }
  return out;
}

ResidualCheck check_zero(const Expr& e, std::span<const Point> points, EvalMode mode, double tolerance) {
  return check_zero(std::span<const Expr>(&e, 1), points, mode, tolerance);
}

ResidualCheck check_equal(const TensorField& a, const TensorField& b, std::span<const Point> points,
                          EvalMode mode, double tolerance) {
  if (a.size() != b.size()) throw std::invalid_argument("tensor shapes differ");
  ResidualCheck out;
  out.symbolic_zero = true;
  out.tolerance = tolerance;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.data()[k] == b.data()[k]) continue;
    std::vector<Expr> terms{a.data()[k], -b.data()[k]};
    out.merge(check_zero(terms, points, mode, tolerance));
  }
  return out;
}

ResidualCheck check_zero(const TensorField& t, std::span<const Point> points, EvalMode mode,
                         double tolerance) {
  ResidualCheck out;
  out.symbolic_zero = true;
  out.tolerance = tolerance;
  for (const auto& c : t.data()) {
    if (c.is_zero()) continue;
    out.merge(check_zero(c, points, mode, tolerance));
  }
  return out;
}

} // namespace curvlab
