#pragma once

#include "curvlab/expr/expr.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace curvlab {

enum class ParseErrorKind { Syntax, UnknownSymbol, NonIntegerExponent };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  /// Zero-based character offset into the source text.
  std::size_t position() const { return position_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
};

/// Parses the scalar expression grammar:
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := ['-'] atom ['^' integer]
///     atom   := number | symbol | '(' expr ')' | 'exp' '(' expr ')'
///     integer:= ['-'] digits | '(' ['-'] digits ')'
///
/// Numbers are integers or decimals and are stored exactly; a quotient of two
/// literals folds to a single rational constant. `coords` names the chart
/// coordinates; a symbol's index is its position in that list.
Expr parse_expr(std::string_view source, const std::vector<std::string>& coords);

} // namespace curvlab
