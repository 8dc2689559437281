#include "pcfp/expr.hpp"

#include <utility>

#include "pcfp/errors.hpp"

namespace pcfp {

namespace {

std::shared_ptr<Expr> make(ExprKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

}  // namespace

ExprPtr Expr::int_lit(std::int64_t v) {
  auto e = make(ExprKind::IntLit);
  e->int_value = v;
  return e;
}

ExprPtr Expr::bool_lit(bool v) {
  auto e = make(ExprKind::BoolLit);
  e->bool_value = v;
  return e;
}

ExprPtr Expr::prob_lit(Rational v) {
  auto e = make(ExprKind::ProbLit);
  e->prob_value = std::move(v);
  return e;
}

ExprPtr Expr::var_ref(std::string name) {
  auto e = make(ExprKind::VarRef);
  e->var = std::move(name);
  return e;
}

ExprPtr Expr::binary(ExprKind k, ExprPtr l, ExprPtr r) {
  auto e = make(k);
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprPtr Expr::lnot(ExprPtr child) {
  auto e = make(ExprKind::Not);
  e->lhs = std::move(child);
  return e;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::IntLit:
      return a->int_value == b->int_value;
    case ExprKind::BoolLit:
      return a->bool_value == b->bool_value;
    case ExprKind::ProbLit:
      return a->prob_value == b->prob_value;
    case ExprKind::VarRef:
      return a->var == b->var;
    case ExprKind::Not:
      return structurally_equal(a->lhs, b->lhs);
    default:
      return structurally_equal(a->lhs, b->lhs) &&
             structurally_equal(a->rhs, b->rhs);
  }
}

ExprType type_of(const Expr& e) {
  auto expect = [](const ExprPtr& child, ExprType want, const char* where) {
    if (type_of(*child) != want) {
      throw EvalError(std::string("ill-typed expression: ") + where);
    }
  };
  switch (e.kind) {
    case ExprKind::IntLit:
    case ExprKind::VarRef:
      return ExprType::Int;
    case ExprKind::BoolLit:
      return ExprType::Bool;
    case ExprKind::ProbLit:
      return ExprType::Prob;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
      expect(e.lhs, ExprType::Int, "arithmetic operand must be integer");
      expect(e.rhs, ExprType::Int, "arithmetic operand must be integer");
      return ExprType::Int;
    case ExprKind::Eq:
    case ExprKind::Ne:
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
      expect(e.lhs, ExprType::Int, "comparison operand must be integer");
      expect(e.rhs, ExprType::Int, "comparison operand must be integer");
      return ExprType::Bool;
    case ExprKind::And:
    case ExprKind::Or:
      expect(e.lhs, ExprType::Bool, "boolean operand expected");
      expect(e.rhs, ExprType::Bool, "boolean operand expected");
      return ExprType::Bool;
    case ExprKind::Not:
      expect(e.lhs, ExprType::Bool, "boolean operand expected");
      return ExprType::Bool;
    case ExprKind::Ratio:
      expect(e.lhs, ExprType::Int, "ratio numerator must be integer");
      expect(e.rhs, ExprType::Int, "ratio denominator must be integer");
      return ExprType::Prob;
  }
  throw EvalError("unknown expression kind");
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case ExprKind::VarRef:
      out.insert(e.var);
      return;
    case ExprKind::IntLit:
    case ExprKind::BoolLit:
    case ExprKind::ProbLit:
      return;
    default:
      if (e.lhs) collect_vars(*e.lhs, out);
      if (e.rhs) collect_vars(*e.rhs, out);
  }
}

std::set<std::string> collect_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

ExprPtr rename_expr_vars(const ExprPtr& e,
                         const std::map<std::string, std::string>& mapping) {
  if (!e) return e;
  switch (e->kind) {
    case ExprKind::VarRef: {
      auto it = mapping.find(e->var);
      return it == mapping.end() ? e : Expr::var_ref(it->second);
    }
    case ExprKind::IntLit:
    case ExprKind::BoolLit:
    case ExprKind::ProbLit:
      return e;
    default: {
      ExprPtr l = rename_expr_vars(e->lhs, mapping);
      ExprPtr r = rename_expr_vars(e->rhs, mapping);
      if (l == e->lhs && r == e->rhs) return e;
      auto copy = std::make_shared<Expr>(*e);
      copy->lhs = std::move(l);
      copy->rhs = std::move(r);
      return copy;
    }
  }
}

namespace {

// Precedence: | < & < ! < comparisons < +,- < * < atoms. '!' always
// parenthesizes its child, so only the binary levels matter here.
int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Or:
      return 1;
    case ExprKind::And:
      return 2;
    case ExprKind::Not:
      return 3;
    case ExprKind::Eq:
    case ExprKind::Ne:
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
      return 4;
    case ExprKind::Add:
    case ExprKind::Sub:
      return 5;
    case ExprKind::Mul:
      return 6;
    default:
      return 7;
  }
}

const char* op_token(ExprKind k) {
  switch (k) {
    case ExprKind::Add: return "+";
    case ExprKind::Sub: return "-";
    case ExprKind::Mul: return "*";
    case ExprKind::Eq: return "=";
    case ExprKind::Ne: return "!=";
    case ExprKind::Lt: return "<";
    case ExprKind::Le: return "<=";
    case ExprKind::Gt: return ">";
    case ExprKind::Ge: return ">=";
    case ExprKind::And: return " & ";
    case ExprKind::Or: return " | ";
    default: return "?";
  }
}

void render(const Expr& e, std::string& out);

void render_child(const Expr& child, int parent_prec, bool right_side,
                  std::string& out) {
  int p = precedence(child.kind);
  // Binary operators are left-associative; a right child at the same
  // level needs parentheses to survive a round trip.
  bool parens = p < parent_prec || (right_side && p == parent_prec);
  if (parens) out.push_back('(');
  render(child, out);
  if (parens) out.push_back(')');
}

void render(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::IntLit:
      if (e.int_value < 0) {
        out += "(" + std::to_string(e.int_value) + ")";
      } else {
        out += std::to_string(e.int_value);
      }
      return;
    case ExprKind::BoolLit:
      out += e.bool_value ? "true" : "false";
      return;
    case ExprKind::ProbLit:
      out += rational_to_string(e.prob_value);
      return;
    case ExprKind::VarRef:
      out += e.var;
      return;
    case ExprKind::Not:
      out += "!(";
      render(*e.lhs, out);
      out.push_back(')');
      return;
    case ExprKind::Ratio: {
      // num/den with each side parenthesized unless atomic.
      auto side = [&out](const Expr& s) {
        bool parens = precedence(s.kind) < 7;
        if (parens) out.push_back('(');
        render(s, out);
        if (parens) out.push_back(')');
      };
      side(*e.lhs);
      out.push_back('/');
      side(*e.rhs);
      return;
    }
    default: {
      int p = precedence(e.kind);
      render_child(*e.lhs, p, false, out);
      out += op_token(e.kind);
      render_child(*e.rhs, p, true, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  render(e, out);
  return out;
}

}  // namespace pcfp
