#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pcfp/expr.hpp"
#include "pcfp/rational.hpp"

namespace pcfp {

// Total map from declared variable names to integer values, in declaration
// order. Immutable in spirit: transformations produce fresh evaluations.
class VarEval {
 public:
  VarEval() = default;
  VarEval(std::shared_ptr<const std::vector<std::string>> names,
          std::vector<std::int64_t> values);

  static VarEval from_pairs(
      std::vector<std::pair<std::string, std::int64_t>> pairs);

  std::int64_t get(std::string_view name) const;  // throws EvalError
  const std::int64_t* find(std::string_view name) const;

  const std::vector<std::string>& names() const { return *names_; }
  const std::vector<std::int64_t>& values() const { return values_; }

  bool operator==(const VarEval& other) const;

 private:
  std::shared_ptr<const std::vector<std::string>> names_ =
      std::make_shared<const std::vector<std::string>>();
  std::vector<std::int64_t> values_;
};

struct VarDecl {
  std::string name;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t init = 0;

  bool operator==(const VarDecl&) const = default;
};

struct Assignment {
  std::string target;
  ExprPtr expr;
};

struct StochUpdate {
  ExprPtr prob;
  std::int64_t cf_target = 0;
  std::vector<Assignment> assigns;

  const Assignment* find_assign(std::string_view target) const;
};

struct Command {
  int id = 0;
  std::int64_t location = 0;
  ExprPtr guard;  // without the cf-location conjunct
  std::vector<StochUpdate> updates;
};

struct LabelDef {
  std::string name;
  ExprPtr expr;
};

// A probabilistic control-flow program: bounded integer variables with
// initial values, guarded commands over a dedicated control-flow variable,
// and named boolean labels for property specification.
struct Program {
  std::string module_name = "main";
  std::string cf_var = "cf";
  std::int64_t cf_lo = 0;
  std::int64_t cf_hi = 0;
  std::vector<VarDecl> decls;
  std::vector<Command> commands;
  std::vector<LabelDef> labels;

  const VarDecl* find_decl(std::string_view name) const;
  const Command* find_command(int id) const;
  const LabelDef* find_label(std::string_view name) const;

  // Shared name table in declaration order, for building evaluations.
  std::shared_ptr<const std::vector<std::string>> var_names() const;

  // The unique initial evaluation (declared init values).
  VarEval initial_eval() const;
};

bool structurally_equal(const Assignment& a, const Assignment& b);
bool structurally_equal(const StochUpdate& a, const StochUpdate& b);
bool structurally_equal(const Command& a, const Command& b);
bool structurally_equal(const Program& a, const Program& b);

// Standard expression evaluation. cf_name/cf_value make the control-flow
// variable visible; pass an empty cf_name where cf must not occur.
std::int64_t eval_int(const Expr& e, const VarEval& eval,
                      std::int64_t cf_value, std::string_view cf_name = "cf");
bool eval_bool(const Expr& e, const VarEval& eval, std::int64_t cf_value,
               std::string_view cf_name = "cf");

// Exact rational value of a probability expression (decimal literal or
// ratio of integer expressions). Throws EvalError on zero denominator or
// a value outside [0,1].
Rational eval_prob(const Expr& e, const VarEval& eval);

// Rewrites every occurrence of the mapped variables in guards, probability
// expressions, assignment targets and right-hand sides. Declarations and
// labels are left untouched; callers merging variables rewrite those
// themselves. Keys must be declared variables; mapping onto the
// control-flow variable is an error.
Program rename_vars(const Program& p,
                    const std::map<std::string, std::string>& mapping);

// Human-readable diagnostics; empty iff the program satisfies all
// structural invariants (declared-variable references, locations inside
// the control-flow domain, a command at location 0, one write per
// variable per update, well-typed guards/probabilities/assignments, ...).
std::vector<std::string> well_formed(const Program& p);

}  // namespace pcfp
