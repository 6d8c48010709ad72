#include "curvlab/expr/parser.hpp"

#include <cctype>
#include <climits>
#include <set>

namespace curvlab {

ParseError::ParseError(ParseErrorKind kind, std::size_t position, const std::string& message)
    : std::runtime_error("at position " + std::to_string(position) + ": " + message),
      kind_(kind),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& coords)
      : src_(src), coords_(coords) {}

  Expr parse() {
    skip_space();
    if (at_end()) fail(ParseErrorKind::Syntax, "empty expression");
    Expr e = expr();
    skip_space();
    if (!at_end()) fail(ParseErrorKind::Syntax, std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  std::string_view src_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& message) const {
    throw ParseError(kind, pos_, message);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(ParseErrorKind::Syntax,
           at_end() ? std::string("expected '") + c + "' before end of input"
                    : std::string("expected '") + c + "', found '" + peek() + "'");
    }
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::negate(term()));
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::product({lhs, factor()});
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr rhs = factor();
        if (lhs.is_constant() && rhs.is_constant()) {
          if (rhs.is_zero()) {
            pos_ = at;
            fail(ParseErrorKind::Syntax, "division by the constant 0");
          }
          lhs = Expr::constant(lhs.value() / rhs.value());
        } else {
          if (rhs.is_zero()) {
            pos_ = at;
            fail(ParseErrorKind::Syntax, "division by the constant 0");
          }
          lhs = Expr::quotient(lhs, rhs);
        }
      } else {
        break;
      }
    }
    return lhs;
  }

  Expr factor() {
    bool negative = accept('-');
    Expr base = atom();
    if (accept('^')) base = Expr::power(base, integer_exponent());
    if (!negative) return base;
    if (base.is_constant()) return Expr::constant(-base.value());
    return Expr::negate(base);
  }

  int integer_exponent() {
    skip_space();
    bool parenthesized = accept('(');
    skip_space();
    std::size_t start = pos_;
    bool negative = accept('-');
    skip_space();
    std::size_t digits_at = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits_at) {
      pos_ = start;
      fail(ParseErrorKind::NonIntegerExponent, "exponent must be an integer literal");
    }
    if (peek() == '.') {
      pos_ = start;
      fail(ParseErrorKind::NonIntegerExponent, "exponent must be an integer literal");
    }
    auto digits = src_.substr(digits_at, pos_ - digits_at);
    long value = 0;
    for (char c : digits) {
      value = value * 10 + (c - '0');
      if (value > kMaxExponent) {
        pos_ = start;
        fail(ParseErrorKind::NonIntegerExponent, "exponent magnitude exceeds the supported bound");
      }
    }
    if (parenthesized) {
      skip_space();
      if (peek() == '.' || peek() == '/') {
        pos_ = start;
        fail(ParseErrorKind::NonIntegerExponent, "exponent must be an integer literal");
      }
      expect(')');
    }
    return static_cast<int>(negative ? -value : value);
  }

  Expr atom() {
    skip_space();
    if (at_end()) fail(ParseErrorKind::Syntax, "unexpected end of input");
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        ++pos_;
      }
      std::string name(src_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == name) return Expr::symbol(i);
      }
      if (name == "exp") {
        expect('(');
        Expr arg = expr();
        expect(')');
        return Expr::exp(arg);
      }
      pos_ = start;
      fail(ParseErrorKind::UnknownSymbol, "unknown symbol '" + name + "'");
    }
    fail(ParseErrorKind::Syntax, std::string("unexpected '") + c + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    bool seen_dot = false;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
        ++pos_;
      } else {
        break;
      }
    }
    auto text = src_.substr(start, pos_ - start);
    if (text == ".") {
      pos_ = start;
      fail(ParseErrorKind::Syntax, "malformed number");
    }
    return Expr::constant(parse_rational(text));
  }
};

} // namespace

Expr parse_expr(std::string_view source, const std::vector<std::string>& coords) {
  if (coords.empty()) throw std::invalid_argument("coordinate list is empty");
  std::set<std::string> seen(coords.begin(), coords.end());
  if (seen.size() != coords.size()) throw std::invalid_argument("coordinate names are not distinct");
  return Parser(source, coords).parse();
}

} // namespace curvlab
