#include "pcfp/printer.hpp"

namespace pcfp {

namespace {

void render_update(const StochUpdate& u, const Program& p, std::string& out) {
  out += to_string(*u.prob);
  out += ":(";
  out += p.cf_var;
  out += "'=";
  out += std::to_string(u.cf_target);
  out += ")";
  for (const auto& a : u.assigns) {
    out += "&(";
    out += a.target;
    out += "'=";
    out += to_string(*a.expr);
    out += ")";
  }
}

}  // namespace

std::string print(const Program& p) {
  std::string out = "dtmc\n\nmodule " + p.module_name + "\n";
  out += "  " + p.cf_var + " : [" + std::to_string(p.cf_lo) + ".." +
         std::to_string(p.cf_hi) + "] init 0;\n";
  for (const auto& d : p.decls) {
    out += "  " + d.name + " : [" + std::to_string(d.lo) + ".." +
           std::to_string(d.hi) + "] init " + std::to_string(d.init) + ";\n";
  }
  out += "\n";
  for (const auto& c : p.commands) {
    out += "  [] " + p.cf_var + "=" + std::to_string(c.location);
    bool trivial_guard =
        c.guard->kind == ExprKind::BoolLit && c.guard->bool_value;
    if (!trivial_guard) {
      // Parenthesize a top-level disjunction so the location conjunct
      // stays a top-level conjunct after re-parsing.
      bool parens = c.guard->kind == ExprKind::Or;
      out += " & ";
      if (parens) out += "(";
      out += to_string(*c.guard);
      if (parens) out += ")";
    }
    out += " -> ";
    for (std::size_t i = 0; i < c.updates.size(); ++i) {
      if (i > 0) out += " + ";
      render_update(c.updates[i], p, out);
    }
    out += ";\n";
  }
  out += "endmodule\n";
  if (!p.labels.empty()) {
    out += "\n";
    for (const auto& l : p.labels) {
      out += "label \"" + l.name + "\" = " + to_string(*l.expr) + ";\n";
    }
  }
  return out;
}

}  // namespace pcfp
