#include "pcfp/program.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "pcfp/errors.hpp"

namespace pcfp {

VarEval::VarEval(std::shared_ptr<const std::vector<std::string>> names,
                 std::vector<std::int64_t> values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (names_->size() != values_.size()) {
    throw EvalError("variable evaluation: name/value arity mismatch");
  }
}

VarEval VarEval::from_pairs(
    std::vector<std::pair<std::string, std::int64_t>> pairs) {
  auto names = std::make_shared<std::vector<std::string>>();
  std::vector<std::int64_t> values;
  for (auto& [n, v] : pairs) {
    names->push_back(std::move(n));
    values.push_back(v);
  }
  return VarEval(std::move(names), std::move(values));
}

const std::int64_t* VarEval::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return &values_[i];
  }
  return nullptr;
}

std::int64_t VarEval::get(std::string_view name) const {
  if (const std::int64_t* v = find(name)) return *v;
  throw EvalError("unbound variable '" + std::string(name) + "'");
}

bool VarEval::operator==(const VarEval& other) const {
  return (names_ == other.names_ || *names_ == *other.names_) &&
         values_ == other.values_;
}

const Assignment* StochUpdate::find_assign(std::string_view target) const {
  for (const auto& a : assigns) {
    if (a.target == target) return &a;
  }
  return nullptr;
}

const VarDecl* Program::find_decl(std::string_view name) const {
  for (const auto& d : decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const Command* Program::find_command(int id) const {
  for (const auto& c : commands) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const LabelDef* Program::find_label(std::string_view name) const {
  for (const auto& l : labels) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

std::shared_ptr<const std::vector<std::string>> Program::var_names() const {
  auto names = std::make_shared<std::vector<std::string>>();
  names->reserve(decls.size());
  for (const auto& d : decls) names->push_back(d.name);
  return names;
}

VarEval Program::initial_eval() const {
  std::vector<std::int64_t> values;
  values.reserve(decls.size());
  for (const auto& d : decls) values.push_back(d.init);
  return VarEval(var_names(), std::move(values));
}

bool structurally_equal(const Assignment& a, const Assignment& b) {
  return a.target == b.target && structurally_equal(a.expr, b.expr);
}

bool structurally_equal(const StochUpdate& a, const StochUpdate& b) {
  if (a.cf_target != b.cf_target || !structurally_equal(a.prob, b.prob) ||
      a.assigns.size() != b.assigns.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.assigns.size(); ++i) {
    if (!structurally_equal(a.assigns[i], b.assigns[i])) return false;
  }
  return true;
}

bool structurally_equal(const Command& a, const Command& b) {
  if (a.id != b.id || a.location != b.location ||
      !structurally_equal(a.guard, b.guard) ||
      a.updates.size() != b.updates.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.updates.size(); ++i) {
    if (!structurally_equal(a.updates[i], b.updates[i])) return false;
  }
  return true;
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.module_name != b.module_name || a.cf_var != b.cf_var ||
      a.cf_lo != b.cf_lo || a.cf_hi != b.cf_hi || a.decls != b.decls ||
      a.commands.size() != b.commands.size() ||
      a.labels.size() != b.labels.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.commands.size(); ++i) {
    if (!structurally_equal(a.commands[i], b.commands[i])) return false;
  }
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    if (a.labels[i].name != b.labels[i].name ||
        !structurally_equal(a.labels[i].expr, b.labels[i].expr)) {
      return false;
    }
  }
  return true;
}

std::int64_t eval_int(const Expr& e, const VarEval& eval,
                      std::int64_t cf_value, std::string_view cf_name) {
  switch (e.kind) {
    case ExprKind::IntLit:
      return e.int_value;
    case ExprKind::VarRef:
      if (!cf_name.empty() && e.var == cf_name) return cf_value;
      return eval.get(e.var);
    case ExprKind::Add:
      return eval_int(*e.lhs, eval, cf_value, cf_name) +
             eval_int(*e.rhs, eval, cf_value, cf_name);
    case ExprKind::Sub:
      return eval_int(*e.lhs, eval, cf_value, cf_name) -
             eval_int(*e.rhs, eval, cf_value, cf_name);
    case ExprKind::Mul:
      return eval_int(*e.lhs, eval, cf_value, cf_name) *
             eval_int(*e.rhs, eval, cf_value, cf_name);
    default:
      throw EvalError("expected an integer expression");
  }
}

bool eval_bool(const Expr& e, const VarEval& eval, std::int64_t cf_value,
               std::string_view cf_name) {
  auto num = [&](const Expr& sub) {
    return eval_int(sub, eval, cf_value, cf_name);
  };
  switch (e.kind) {
    case ExprKind::BoolLit:
      return e.bool_value;
    case ExprKind::Eq:
      return num(*e.lhs) == num(*e.rhs);
    case ExprKind::Ne:
      return num(*e.lhs) != num(*e.rhs);
    case ExprKind::Lt:
      return num(*e.lhs) < num(*e.rhs);
    case ExprKind::Le:
      return num(*e.lhs) <= num(*e.rhs);
    case ExprKind::Gt:
      return num(*e.lhs) > num(*e.rhs);
    case ExprKind::Ge:
      return num(*e.lhs) >= num(*e.rhs);
    case ExprKind::And:
      return eval_bool(*e.lhs, eval, cf_value, cf_name) &&
             eval_bool(*e.rhs, eval, cf_value, cf_name);
    case ExprKind::Or:
      return eval_bool(*e.lhs, eval, cf_value, cf_name) ||
             eval_bool(*e.rhs, eval, cf_value, cf_name);
    case ExprKind::Not:
      return !eval_bool(*e.lhs, eval, cf_value, cf_name);
    default:
      throw EvalError("expected a boolean expression");
  }
}

Rational eval_prob(const Expr& e, const VarEval& eval) {
  Rational value;
  switch (e.kind) {
    case ExprKind::ProbLit:
      value = e.prob_value;
      break;
    case ExprKind::Ratio: {
      // Probability expressions range over Var only; an empty cf name makes
      // any control-flow reference an unbound-variable error.
      std::int64_t num = eval_int(*e.lhs, eval, 0, {});
      std::int64_t den = eval_int(*e.rhs, eval, 0, {});
      if (den == 0) throw EvalError("zero denominator in probability");
      value = make_rational(num, den);
      break;
    }
    default:
      throw EvalError(
          "probability must be a decimal literal or a ratio of integer "
          "expressions");
  }
  if (value < 0 || value > 1) {
    throw EvalError("probability value " + rational_to_string(value) +
                    " outside [0,1]");
  }
  return value;
}

Program rename_vars(const Program& p,
                    const std::map<std::string, std::string>& mapping) {
  for (const auto& [from, to] : mapping) {
    (void)from;
    if (to == p.cf_var) {
      throw PcfpError("rename: '" + to +
                      "' is the control-flow variable and cannot be a rename "
                      "target");
    }
  }
  Program out = p;
  for (auto& c : out.commands) {
    c.guard = rename_expr_vars(c.guard, mapping);
    for (auto& u : c.updates) {
      u.prob = rename_expr_vars(u.prob, mapping);
      for (auto& a : u.assigns) {
        auto it = mapping.find(a.target);
        if (it != mapping.end()) a.target = it->second;
        a.expr = rename_expr_vars(a.expr, mapping);
      }
    }
  }
  return out;
}

namespace {

// A top-level `cf=<int>` conjunct inside a stored guard would be
// indistinguishable from the location conjunct in the text form.
bool has_cf_location_conjunct(const Expr& e, const std::string& cf) {
  if (e.kind == ExprKind::And) {
    return has_cf_location_conjunct(*e.lhs, cf) ||
           has_cf_location_conjunct(*e.rhs, cf);
  }
  if (e.kind != ExprKind::Eq) return false;
  const Expr& l = *e.lhs;
  const Expr& r = *e.rhs;
  return (l.kind == ExprKind::VarRef && l.var == cf &&
          r.kind == ExprKind::IntLit) ||
         (r.kind == ExprKind::VarRef && r.var == cf &&
          l.kind == ExprKind::IntLit);
}

bool check_type(const ExprPtr& e, ExprType want, std::string* err) {
  try {
    if (type_of(*e) != want) {
      *err = "unexpected expression type";
      return false;
    }
    return true;
  } catch (const EvalError& ex) {
    *err = ex.what();
    return false;
  }
}

}  // namespace

std::vector<std::string> well_formed(const Program& p) {
  std::vector<std::string> diags;
  auto diag = [&diags](std::string msg) { diags.push_back(std::move(msg)); };

  if (p.cf_lo != 0) diag("control-flow domain must start at 0");
  if (p.cf_hi < p.cf_lo) diag("empty control-flow domain");

  std::unordered_set<std::string> declared;
  for (const auto& d : p.decls) {
    if (d.name == p.cf_var) {
      diag("variable '" + d.name +
           "' collides with the control-flow variable");
    }
    if (!declared.insert(d.name).second) {
      diag("duplicate declaration of '" + d.name + "'");
    }
    if (d.lo > d.hi) {
      diag("empty domain for '" + d.name + "'");
    }
    if (d.init < d.lo || d.init > d.hi) {
      diag("initial value of '" + d.name + "' outside its domain");
    }
  }

  auto vars_ok = [&](const Expr& e, bool allow_cf, const std::string& where) {
    for (const auto& v : collect_vars(e)) {
      if (v == p.cf_var) {
        if (!allow_cf) {
          diag(where + ": control-flow variable not allowed here");
        }
        continue;
      }
      if (!declared.count(v)) {
        diag(where + ": unbound variable '" + v + "'");
      }
    }
  };

  bool location_zero = false;
  std::unordered_set<int> ids;
  std::string err;
  for (const auto& c : p.commands) {
    const std::string where = "command " + std::to_string(c.id);
    if (!ids.insert(c.id).second) diag("duplicate command id " +
                                       std::to_string(c.id));
    if (c.location < p.cf_lo || c.location > p.cf_hi) {
      diag(where + ": location outside the control-flow domain");
    }
    if (c.location == 0) location_zero = true;
    if (!c.guard) {
      diag(where + ": missing guard");
      continue;
    }
    vars_ok(*c.guard, true, where + " guard");
    if (!check_type(c.guard, ExprType::Bool, &err)) {
      diag(where + " guard: " + err);
    }
    if (has_cf_location_conjunct(*c.guard, p.cf_var)) {
      diag(where +
           " guard: control-flow location conjunct belongs in the command "
           "location, not the guard");
    }
    if (c.updates.empty()) diag(where + ": no stochastic updates");
    for (std::size_t ui = 0; ui < c.updates.size(); ++ui) {
      const auto& u = c.updates[ui];
      const std::string uw = where + " update " + std::to_string(ui);
      if (u.cf_target < p.cf_lo || u.cf_target > p.cf_hi) {
        diag(uw + ": control-flow target outside the domain");
      }
      if (!u.prob || !check_type(u.prob, ExprType::Prob, &err)) {
        diag(uw + ": bad probability expression" +
             (u.prob ? " (" + err + ")" : ""));
      } else {
        vars_ok(*u.prob, false, uw + " probability");
        if (u.prob->kind == ExprKind::ProbLit &&
            (u.prob->prob_value < 0 || u.prob->prob_value > 1)) {
          diag(uw + ": probability literal outside [0,1]");
        }
      }
      std::set<std::string> targets;
      for (const auto& a : u.assigns) {
        if (a.target == p.cf_var) {
          diag(uw + ": assignment to the control-flow variable");
        } else if (!declared.count(a.target)) {
          diag(uw + ": assignment to undeclared variable '" + a.target + "'");
        }
        if (!targets.insert(a.target).second) {
          diag(uw + ": variable '" + a.target +
               "' updated more than once");
        }
        if (!a.expr || !check_type(a.expr, ExprType::Int, &err)) {
          diag(uw + ": right-hand side of '" + a.target +
               "' is not an integer expression");
        } else {
          vars_ok(*a.expr, true, uw + " assignment to '" + a.target + "'");
        }
      }
    }
  }
  if (!location_zero) diag("no command at location 0");

  std::unordered_set<std::string> label_names;
  for (const auto& l : p.labels) {
    if (!label_names.insert(l.name).second) {
      diag("duplicate label \"" + l.name + "\"");
    }
    if (!l.expr || !check_type(l.expr, ExprType::Bool, &err)) {
      diag("label \"" + l.name + "\": not a boolean expression");
    } else {
      vars_ok(*l.expr, true, "label \"" + l.name + "\"");
    }
  }
  return diags;
}

}  // namespace pcfp
