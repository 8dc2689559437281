#include "pcfp/reduce.hpp"

#include <algorithm>

#include "pcfp/errors.hpp"

namespace pcfp {

RvoResult rvo(const Program& p, const VarEval& reset, const ExcludeSet& ex,
              RvoMode mode) {
  for (const auto& v : ex) {
    if (!p.find_decl(v)) {
      throw ModelError("excluded variable '" + v + "' is not declared");
    }
  }
  for (const auto& d : p.decls) {
    const std::int64_t* r = reset.find(d.name);
    if (!r) {
      throw ModelError("reset evaluation missing variable '" + d.name + "'");
    }
    if (*r < d.lo || *r > d.hi) {
      throw ModelError("reset value " + std::to_string(*r) + " for '" +
                       d.name + "' outside its domain");
    }
  }

  LivenessMap live = lra(p);
  std::map<std::int64_t, VarSet> live_at;
  for (const auto& c : p.commands) {
    for (const auto& u : c.updates) {
      if (!live_at.count(u.cf_target)) {
        live_at.emplace(u.cf_target, live_at_location(p, live, u.cf_target));
      }
    }
  }

  RvoResult result;
  result.program = p;
  for (auto& c : result.program.commands) {
    for (std::size_t ui = 0; ui < c.updates.size(); ++ui) {
      StochUpdate& u = c.updates[ui];
      const VarSet& live_after = live_at.at(u.cf_target);

      // Reset candidates, in declaration order.
      std::vector<std::string> candidates;
      if (mode == RvoMode::AsWritten) {
        const VarSet& here = live.of(c.id);
        for (const auto& d : p.decls) {
          if (here.count(d.name) && !ex.count(d.name) &&
              !live_after.count(d.name)) {
            candidates.push_back(d.name);
          }
        }
      } else {
        for (const auto& d : p.decls) {
          if (!ex.count(d.name) && !live_after.count(d.name)) {
            candidates.push_back(d.name);
          }
        }
      }

      for (const auto& x : candidates) {
        ExprPtr value = Expr::int_lit(reset.get(x));
        bool found = false;
        for (auto& a : u.assigns) {
          if (a.target != x) continue;
          found = true;
          if (!structurally_equal(a.expr, value)) {
            a.expr = value;
            result.edits.push_back({c.id, static_cast<int>(ui), x, true});
          }
          break;
        }
        if (!found) {
          u.assigns.push_back({x, value});
          result.edits.push_back({c.id, static_cast<int>(ui), x, false});
        }
      }
    }
  }
  return result;
}

namespace {

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& taken) {
  std::string name = base;
  while (taken.count(name)) name += "_";
  return name;
}

}  // namespace

RaoResult rao(const Program& p, const ExcludeSet& ex) {
  for (const auto& v : ex) {
    if (!p.find_decl(v)) {
      throw ModelError("excluded variable '" + v + "' is not declared");
    }
  }
  for (const auto& l : p.labels) {
    for (const auto& v : collect_vars(*l.expr)) {
      if (v != p.cf_var && !ex.count(v)) {
        throw ModelError("label \"" + l.name + "\" variable '" + v +
                         "' must be excluded");
      }
    }
  }

  LivenessMap live = lra(p);
  Graph ig = build_ig(p, live);
  ColorAssignment wp = welsh_powell(ig);

  // Color classes over the non-excluded variables, declaration order
  // inside each class.
  std::map<int, std::vector<std::string>> classes;
  for (const auto& d : p.decls) {
    if (!ex.count(d.name)) classes[wp.color.at(d.name)].push_back(d.name);
  }

  // Names kept verbatim: excluded variables and singleton classes.
  std::set<std::string> taken{p.cf_var};
  for (const auto& v : ex) taken.insert(v);
  for (const auto& [color, members] : classes) {
    if (members.size() == 1) taken.insert(members.front());
  }

  RaoResult result;
  result.coloring = wp;
  VarSet live_init = live_at_location(p, live, 0);
  std::map<std::string, VarDecl> class_decl;  // by class variable name
  std::map<std::string, std::string> class_of;

  for (const auto& [color, members] : classes) {
    if (members.size() == 1) {
      class_of[members.front()] = members.front();
      continue;
    }
    std::string name = fresh_name("m" + std::to_string(color), taken);
    taken.insert(name);
    ++result.merged_classes;

    VarDecl merged;
    merged.name = name;
    merged.lo = p.find_decl(members.front())->lo;
    merged.hi = p.find_decl(members.front())->hi;
    // Initial value: the member live at the initial commands, if any
    // (condition (a) of the interference graph makes it unique);
    // otherwise the first member. A variable dead at every initial
    // command cannot influence behavior through its initial value.
    const VarDecl* init_source = p.find_decl(members.front());
    for (const auto& m : members) {
      const VarDecl* d = p.find_decl(m);
      merged.lo = std::min(merged.lo, d->lo);
      merged.hi = std::max(merged.hi, d->hi);
      if (live_init.count(m)) init_source = d;
      class_of[m] = name;
      result.renaming.emplace(m, name);
    }
    merged.init = init_source->init;
    class_decl.emplace(name, merged);
  }

  // Which assignments to merged members survive. The merged cell must
  // carry the value of the class member that is live at the update's
  // target location (unique if present, by the interference conditions):
  //  - some member is live there: only its own assignment may remain; a
  //    dead class-mate's store would clobber the live value;
  //  - no member is live: the value is unobservable until the next kept
  //    write, keep the declaration-order-first assignment.
  Program pruned = p;
  std::map<std::int64_t, VarSet> live_at;
  auto live_after = [&](std::int64_t loc) -> const VarSet& {
    auto it = live_at.find(loc);
    if (it == live_at.end()) {
      it = live_at.emplace(loc, live_at_location(p, live, loc)).first;
    }
    return it->second;
  };
  std::map<std::string, std::size_t> decl_order;
  for (std::size_t i = 0; i < p.decls.size(); ++i) {
    decl_order[p.decls[i].name] = i;
  }
  std::map<std::string, std::vector<std::string>> members_of;
  for (const auto& [var, cls] : class_of) {
    if (cls != var) members_of[cls].push_back(var);
  }
  for (auto& c : pruned.commands) {
    for (auto& u : c.updates) {
      std::map<std::string, std::vector<std::size_t>> assigned;
      for (std::size_t ai = 0; ai < u.assigns.size(); ++ai) {
        auto it = class_of.find(u.assigns[ai].target);
        if (it != class_of.end() && it->second != u.assigns[ai].target) {
          assigned[it->second].push_back(ai);
        }
      }
      std::set<std::size_t> drop;
      const VarSet& after = live_after(u.cf_target);
      for (const auto& [cls, idxs] : assigned) {
        const std::string* live_member = nullptr;
        for (const auto& m : members_of.at(cls)) {
          if (after.count(m)) {
            live_member = &m;
            break;
          }
        }
        std::size_t keep = static_cast<std::size_t>(-1);
        if (live_member) {
          for (std::size_t ai : idxs) {
            if (u.assigns[ai].target == *live_member) keep = ai;
          }
        } else {
          keep = idxs.front();
          for (std::size_t ai : idxs) {
            if (decl_order[u.assigns[ai].target] <
                decl_order[u.assigns[keep].target]) {
              keep = ai;
            }
          }
        }
        for (std::size_t ai : idxs) {
          if (ai != keep) drop.insert(ai);
        }
      }
      if (drop.empty()) continue;
      std::vector<Assignment> kept;
      for (std::size_t ai = 0; ai < u.assigns.size(); ++ai) {
        if (!drop.count(ai)) kept.push_back(std::move(u.assigns[ai]));
      }
      u.assigns = std::move(kept);
    }
  }

  result.program = rename_vars(pruned, result.renaming);

  // Rebuild declarations: each merged class appears once, at the position
  // of its first member; everything else is kept in place.
  std::vector<VarDecl> decls;
  std::set<std::string> emitted;
  for (const auto& d : p.decls) {
    auto it = class_of.find(d.name);
    if (it == class_of.end() || it->second == d.name) {
      decls.push_back(d);
      continue;
    }
    if (emitted.insert(it->second).second) {
      decls.push_back(class_decl.at(it->second));
    }
  }
  result.program.decls = std::move(decls);

  // Renaming can leave duplicated conjuncts behind (e.g. x=1 & y=1 with x
  // and y merged); collapse them.
  for (auto& c : result.program.commands) {
    c.guard = simplify_duplicate_conjuncts(c.guard);
  }
  return result;
}

ExprPtr simplify_duplicate_conjuncts(const ExprPtr& e) {
  if (!e || e->kind != ExprKind::And) return e;
  std::vector<ExprPtr> conjuncts;
  auto flatten = [](auto&& self, const ExprPtr& node,
                    std::vector<ExprPtr>& out) -> void {
    if (node->kind == ExprKind::And) {
      self(self, node->lhs, out);
      self(self, node->rhs, out);
    } else {
      out.push_back(node);
    }
  };
  flatten(flatten, e, conjuncts);

  std::vector<ExprPtr> unique;
  for (const auto& c : conjuncts) {
    bool seen = false;
    for (const auto& u : unique) {
      if (structurally_equal(u, c)) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(c);
  }
  if (unique.size() == conjuncts.size()) return e;
  ExprPtr out = unique.front();
  for (std::size_t i = 1; i < unique.size(); ++i) {
    out = Expr::land(std::move(out), unique[i]);
  }
  return out;
}

}  // namespace pcfp
