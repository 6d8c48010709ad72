#include "curvlab/expr/evaluate.hpp"

#include "curvlab/expr/simplify.hpp"

#include <stdexcept>

namespace curvlab {

namespace {

NumericValue eval(const Expr& e, const Point& p, EvalMode mode) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return mode == EvalMode::Float ? NumericValue(e.value().get_d()) : NumericValue(e.value());
    case ExprKind::Symbol: {
      auto i = e.symbol_index();
      if (i >= p.size()) throw std::out_of_range("expression references coordinate beyond point");
      return mode == EvalMode::Float ? p[i].demoted() : p[i];
    }
    case ExprKind::Negate: return -eval(e.children()[0], p, mode);
    case ExprKind::Sum: {
      NumericValue acc;
      if (mode == EvalMode::Float) acc = NumericValue(0.0);
      for (const auto& c : e.children()) acc += eval(c, p, mode);
      return acc;
    }
    case ExprKind::Product: {
      NumericValue acc = NumericValue::integer(1);
      if (mode == EvalMode::Float) acc = NumericValue(1.0);
      for (const auto& c : e.children()) acc *= eval(c, p, mode);
      return acc;
    }
    case ExprKind::Quotient:
      return eval(e.children()[0], p, mode) / eval(e.children()[1], p, mode);
    case ExprKind::Power: return pow(eval(e.children()[0], p, mode), e.exponent());
    case ExprKind::Exp: return exp(eval(e.children()[0], p, mode));
  }
  throw std::logic_error("unknown expression kind");
}

Expr derive(const Expr& e, std::size_t coord) {
  switch (e.kind()) {
    case ExprKind::Constant: return Expr();
    case ExprKind::Symbol: return Expr::integer(e.symbol_index() == coord ? 1 : 0);
    case ExprKind::Negate: return -derive(e.children()[0], coord);
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      for (const auto& c : e.children()) {
        auto d = derive(c, coord);
        if (!d.is_zero()) terms.push_back(std::move(d));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Product: {
      auto factors = e.children();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        auto d = derive(factors[i], coord);
        if (d.is_zero()) continue;
        std::vector<Expr> parts(factors.begin(), factors.end());
        parts[i] = d;
        terms.push_back(Expr::product(std::move(parts)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Quotient: {
      const auto& num = e.children()[0];
      const auto& den = e.children()[1];
      auto dn = derive(num, coord);
      auto dd = derive(den, coord);
      return (dn * den - num * dd) / Expr::power(den, 2);
    }
    case ExprKind::Power: {
      const auto& base = e.children()[0];
      int k = e.exponent();
      auto db = derive(base, coord);
      if (db.is_zero()) return Expr();
      return Expr::integer(k) * Expr::power(base, k - 1) * db;
    }
    case ExprKind::Exp: {
      auto da = derive(e.children()[0], coord);
      if (da.is_zero()) return Expr();
      return e * da;
    }
  }
  throw std::logic_error("unknown expression kind");
}

} // namespace

NumericValue evaluate(const Expr& e, const Point& p, EvalMode mode) { return eval(e, p, mode); }

Expr differentiate(const Expr& e, std::size_t coord) { return simplify(derive(e, coord)); }

} // namespace curvlab
