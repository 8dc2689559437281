#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "pcfp/rational.hpp"

namespace pcfp {

enum class ExprKind {
  IntLit,
  BoolLit,
  ProbLit,  // exact rational literal, probability position only
  VarRef,
  Add,
  Sub,
  Mul,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Not,   // child in lhs
  Ratio,  // lhs / rhs over integer expressions, probability position only
};

enum class ExprType { Int, Bool, Prob };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree node. Nodes are shared freely; no operation
// ever mutates one in place.
class Expr {
 public:
  ExprKind kind;
  std::int64_t int_value = 0;  // IntLit
  bool bool_value = false;     // BoolLit
  Rational prob_value;         // ProbLit
  std::string var;             // VarRef
  ExprPtr lhs, rhs;

  static ExprPtr int_lit(std::int64_t v);
  static ExprPtr bool_lit(bool v);
  static ExprPtr prob_lit(Rational v);
  static ExprPtr var_ref(std::string name);
  static ExprPtr binary(ExprKind k, ExprPtr l, ExprPtr r);

  static ExprPtr add(ExprPtr l, ExprPtr r) { return binary(ExprKind::Add, std::move(l), std::move(r)); }
  static ExprPtr sub(ExprPtr l, ExprPtr r) { return binary(ExprKind::Sub, std::move(l), std::move(r)); }
  static ExprPtr mul(ExprPtr l, ExprPtr r) { return binary(ExprKind::Mul, std::move(l), std::move(r)); }
  static ExprPtr eq(ExprPtr l, ExprPtr r) { return binary(ExprKind::Eq, std::move(l), std::move(r)); }
  static ExprPtr ne(ExprPtr l, ExprPtr r) { return binary(ExprKind::Ne, std::move(l), std::move(r)); }
  static ExprPtr lt(ExprPtr l, ExprPtr r) { return binary(ExprKind::Lt, std::move(l), std::move(r)); }
  static ExprPtr le(ExprPtr l, ExprPtr r) { return binary(ExprKind::Le, std::move(l), std::move(r)); }
  static ExprPtr gt(ExprPtr l, ExprPtr r) { return binary(ExprKind::Gt, std::move(l), std::move(r)); }
  static ExprPtr ge(ExprPtr l, ExprPtr r) { return binary(ExprKind::Ge, std::move(l), std::move(r)); }
  static ExprPtr land(ExprPtr l, ExprPtr r) { return binary(ExprKind::And, std::move(l), std::move(r)); }
  static ExprPtr lor(ExprPtr l, ExprPtr r) { return binary(ExprKind::Or, std::move(l), std::move(r)); }
  static ExprPtr lnot(ExprPtr e);
  static ExprPtr ratio(ExprPtr num, ExprPtr den) { return binary(ExprKind::Ratio, std::move(num), std::move(den)); }
};

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Type of the expression; throws EvalError on ill-typed trees
// (e.g. boolean operand under '+', ProbLit outside probability position).
ExprType type_of(const Expr& e);

// All variable names referenced, including the control-flow variable if
// it occurs.
void collect_vars(const Expr& e, std::set<std::string>& out);
std::set<std::string> collect_vars(const Expr& e);

// Rewrites every VarRef per the mapping; names absent from the mapping
// are kept. Pure; shares untouched subtrees where possible.
ExprPtr rename_expr_vars(const ExprPtr& e,
                         const std::map<std::string, std::string>& mapping);

// Canonical, re-parseable rendering.
std::string to_string(const Expr& e);

}  // namespace pcfp
