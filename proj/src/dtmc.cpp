#include "pcfp/dtmc.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "pcfp/errors.hpp"

namespace pcfp {

namespace {

struct StateKey {
  std::int64_t loc;
  std::vector<std::int64_t> vals;

  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(k.loc));
    for (std::int64_t v : k.vals) mix(static_cast<std::uint64_t>(v));
    return h;
  }
};

std::string describe(const StateKey& k, const std::string& cf_var,
                     const std::vector<std::string>& names) {
  std::string s = "(" + cf_var + "=" + std::to_string(k.loc);
  for (std::size_t i = 0; i < names.size(); ++i) {
    s += ", " + names[i] + "=" + std::to_string(k.vals[i]);
  }
  return s + ")";
}

}  // namespace

std::size_t Dtmc::transition_count() const {
  std::size_t n = 0;
  for (const auto& row : transitions) n += row.size();
  return n;
}

std::string Dtmc::describe_state(std::size_t index,
                                 const std::string& cf_var) const {
  const State& st = states[index];
  StateKey k{st.location, st.eval.values()};
  return describe(k, cf_var, st.eval.names());
}

Dtmc build_dtmc(const Program& p, std::size_t max_states) {
  auto names = p.var_names();
  const std::size_t nv = names->size();

  // Pre-resolved per-command data: assignment target slots and domains.
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < nv; ++i) slot[(*names)[i]] = i;
  struct ResolvedAssign {
    std::size_t slot;
    const Expr* expr;
    std::int64_t lo, hi;
    const std::string* name;
  };
  struct ResolvedUpdate {
    const Expr* prob;
    std::int64_t cf_target;
    std::vector<ResolvedAssign> assigns;
  };
  struct ResolvedCommand {
    int id;
    const Expr* guard;
    std::vector<ResolvedUpdate> updates;
  };
  std::map<std::int64_t, std::vector<ResolvedCommand>> at_location;
  for (const auto& c : p.commands) {
    ResolvedCommand rc{c.id, c.guard.get(), {}};
    for (const auto& u : c.updates) {
      ResolvedUpdate ru{u.prob.get(), u.cf_target, {}};
      for (const auto& a : u.assigns) {
        const VarDecl* d = p.find_decl(a.target);
        if (!d) {
          throw ModelError("assignment to undeclared variable '" + a.target +
                           "'");
        }
        ru.assigns.push_back(
            {slot.at(a.target), a.expr.get(), d->lo, d->hi, &d->name});
      }
      rc.updates.push_back(std::move(ru));
    }
    at_location[c.location].push_back(std::move(rc));
  }

  std::vector<StateKey> keys;
  std::unordered_map<StateKey, std::size_t, StateKeyHash> index;
  auto intern = [&](StateKey k) {
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (keys.size() >= max_states) {
      throw ModelError("state capacity exceeded (max " +
                       std::to_string(max_states) + " states)");
    }
    std::size_t id = keys.size();
    index.emplace(k, id);
    keys.push_back(std::move(k));
    return id;
  };

  StateKey init{0, {}};
  init.vals.reserve(nv);
  for (const auto& d : p.decls) init.vals.push_back(d.init);
  intern(std::move(init));

  Dtmc out;
  const Rational one = 1;
  for (std::size_t cur = 0; cur < keys.size(); ++cur) {
    // Rows may reallocate `keys` while expanding; copy what we need.
    const StateKey key = keys[cur];
    VarEval ev(names, key.vals);
    auto state_str = [&] { return describe(key, p.cf_var, *names); };

    std::vector<const ResolvedCommand*> enabled;
    if (auto it = at_location.find(key.loc); it != at_location.end()) {
      for (const auto& rc : it->second) {
        bool holds;
        try {
          holds = eval_bool(*rc.guard, ev, key.loc, p.cf_var);
        } catch (const EvalError& e) {
          throw ModelError("command " + std::to_string(rc.id) + " in state " +
                           state_str() + ": " + e.what());
        }
        if (holds) enabled.push_back(&rc);
      }
    }

    out.transitions.emplace_back();
    if (enabled.empty()) {
      out.deadlocks.push_back(cur);
      continue;
    }

    const Rational pick = make_rational(1, static_cast<std::int64_t>(
                                               enabled.size()));
    std::map<std::size_t, Rational> row;
    for (const ResolvedCommand* rc : enabled) {
      Rational sum = 0;
      for (const auto& u : rc->updates) {
        Rational q;
        try {
          q = eval_prob(*u.prob, ev);
        } catch (const EvalError& e) {
          throw ModelError("command " + std::to_string(rc->id) +
                           " in state " + state_str() + ": " + e.what());
        }
        sum += q;
        if (q == 0) continue;

        StateKey next{u.cf_target, key.vals};
        for (const auto& a : u.assigns) {
          std::int64_t v;
          try {
            v = eval_int(*a.expr, ev, key.loc, p.cf_var);
          } catch (const EvalError& e) {
            throw ModelError("command " + std::to_string(rc->id) +
                             " in state " + state_str() + ": " + e.what());
          }
          if (v < a.lo || v > a.hi) {
            throw ModelError("assignment " + *a.name + " := " +
                             std::to_string(v) + " out of domain [" +
                             std::to_string(a.lo) + ".." +
                             std::to_string(a.hi) + "] in state " +
                             state_str() + ", command " +
                             std::to_string(rc->id));
          }
          next.vals[a.slot] = v;
        }
        row[intern(std::move(next))] += pick * q;
      }
      if (sum != one) {
        throw ModelError("probabilities of command " + std::to_string(rc->id) +
                         " sum to " + rational_to_string(sum) +
                         " (expected 1) in state " + state_str());
      }
    }
    out.transitions.back().assign(row.begin(), row.end());
  }

  out.states.reserve(keys.size());
  for (auto& k : keys) {
    out.states.push_back({k.loc, VarEval(names, std::move(k.vals))});
  }
  out.initial = 0;
  return out;
}

DtmcStats stats(const Dtmc& d) {
  return {d.states.size(), d.transition_count(), d.deadlocks.size()};
}

std::vector<char> eval_on_states(const Program& p, const Dtmc& d,
                                 const ExprPtr& expr) {
  std::vector<char> out(d.states.size(), 0);
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    out[i] =
        eval_bool(*expr, d.states[i].eval, d.states[i].location, p.cf_var);
  }
  return out;
}

namespace {

// Strongly connected components of the graph restricted to `alive`
// vertices, Tarjan (iterative). Components are emitted with every edge
// leaving a component pointing to an earlier-emitted one, which is
// exactly the order the solver needs.
std::vector<std::vector<std::size_t>> sccs(
    const std::vector<std::vector<std::size_t>>& adj,
    const std::vector<char>& alive) {
  const std::size_t n = adj.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> idx(n, kNone), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t child = 0;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!alive[root] || idx[root] != kNone) continue;
    std::vector<Frame> frames{{root}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.child++];
        if (!alive[w]) continue;
        if (idx[w] == kNone) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        if (low[f.v] == idx[f.v]) {
          std::vector<std::size_t> comp;
          for (;;) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == f.v) break;
          }
          out.push_back(std::move(comp));
        }
        std::size_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
      }
    }
  }
  return out;
}

// Solves (I - A) x = b by Gauss-Jordan elimination over rationals.
std::vector<Rational> solve_dense(std::vector<std::vector<Rational>> m,
                                  std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) {
      throw PcfpError("internal error: singular linear system");
    }
    std::swap(m[pivot], m[col]);
    std::swap(b[pivot], b[col]);
    const Rational d = m[col][col];
    for (std::size_t j = col; j < n; ++j) m[col][j] /= d;
    b[col] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

// One layer of the round-counter product: v(s) = 1 on targets, otherwise
//   v(s) = sum over transitions, where entering location 0 switches to the
//   already-solved next layer (`prev`).
std::vector<Rational> solve_layer(const Dtmc& d,
                                  const std::vector<char>& target,
                                  const std::vector<Rational>& prev) {
  const std::size_t n = d.states.size();
  std::vector<Rational> rhs(n, Rational(0));
  std::vector<std::vector<std::size_t>> in_layer(n);
  std::vector<std::vector<Rational>> in_layer_p(n);

  for (std::size_t s = 0; s < n; ++s) {
    if (target[s]) continue;
    for (const auto& [t, pr] : d.transitions[s]) {
      if (d.states[t].location == 0) {
        rhs[s] += pr * prev[t];  // crossing into the next round
      } else if (target[t]) {
        rhs[s] += pr;
      } else {
        in_layer[s].push_back(t);
        in_layer_p[s].push_back(pr);
      }
    }
  }

  // Positive-value closure: only states that can reach a target (inside
  // the layer or through a positive next-layer value) enter the linear
  // system; everything else is exactly 0, which also keeps the system
  // nonsingular.
  std::vector<char> positive(n, 0);
  std::vector<std::vector<std::size_t>> rev(n);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s]) continue;
    for (std::size_t t : in_layer[s]) rev[t].push_back(s);
    if (rhs[s] > 0) {
      positive[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t t = queue.back();
    queue.pop_back();
    for (std::size_t s : rev[t]) {
      if (!positive[s] && !target[s]) {
        positive[s] = 1;
        queue.push_back(s);
      }
    }
  }

  std::vector<Rational> value(n, Rational(0));
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s]) value[s] = 1;
  }

  std::vector<char> unknown(n, 0);
  for (std::size_t s = 0; s < n; ++s) unknown[s] = positive[s] && !target[s];

  std::vector<std::size_t> pos(n, 0);
  std::vector<std::size_t> comp_stamp(n, 0);
  std::size_t stamp = 0;
  for (const auto& comp : sccs(in_layer, unknown)) {
    // Edges to later (already solved) components move to the right-hand
    // side; the in-component part forms the dense system.
    ++stamp;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      pos[comp[i]] = i;
      comp_stamp[comp[i]] = stamp;
    }
    std::vector<Rational> b(comp.size(), Rational(0));
    std::vector<std::vector<Rational>> m(
        comp.size(), std::vector<Rational>(comp.size(), Rational(0)));
    for (std::size_t i = 0; i < comp.size(); ++i) {
      std::size_t s = comp[i];
      m[i][i] = 1;
      b[i] = rhs[s];
      for (std::size_t j = 0; j < in_layer[s].size(); ++j) {
        std::size_t t = in_layer[s][j];
        if (!unknown[t]) continue;  // zero-valued, contributes nothing
        if (comp_stamp[t] == stamp) {
          m[i][pos[t]] -= in_layer_p[s][j];
        } else {
          b[i] += in_layer_p[s][j] * value[t];
        }
      }
    }
    std::vector<Rational> x = comp.size() == 1 && m[0][0] == 1
                                  ? std::move(b)
                                  : solve_dense(std::move(m), std::move(b));
    for (std::size_t i = 0; i < comp.size(); ++i) value[comp[i]] = x[i];
  }
  return value;
}

}  // namespace

std::vector<Rational> bounded_reach_many(const Dtmc& d,
                                         const std::vector<char>& target,
                                         const std::vector<unsigned>& ks) {
  unsigned max_k = 0;
  for (unsigned k : ks) max_k = std::max(max_k, k);

  std::vector<Rational> out(ks.size(), Rational(0));
  std::vector<Rational> layer(d.states.size(), Rational(0));
  for (unsigned m = 1; m <= max_k; ++m) {
    layer = solve_layer(d, target, layer);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (ks[i] == m) out[i] = layer[d.initial];
    }
  }
  return out;
}

Rational bounded_reach(const Program& p, const ExprPtr& label, unsigned k,
                       std::size_t max_states) {
  Dtmc d = build_dtmc(p, max_states);
  return bounded_reach_many(d, eval_on_states(p, d, label), {k})[0];
}

PreservationReport check_preservation(const Program& original,
                                      const Program& reduced,
                                      const ExprPtr& label,
                                      const std::vector<unsigned>& ks,
                                      std::size_t max_states) {
  return check_preservation(original, reduced, label, label, ks, max_states);
}

PreservationReport check_preservation(const Program& original,
                                      const Program& reduced,
                                      const ExprPtr& label_original,
                                      const ExprPtr& label_reduced,
                                      const std::vector<unsigned>& ks,
                                      std::size_t max_states) {
  Dtmc da = build_dtmc(original, max_states);
  Dtmc db = build_dtmc(reduced, max_states);
  std::vector<Rational> va = bounded_reach_many(
      da, eval_on_states(original, da, label_original), ks);
  std::vector<Rational> vb =
      bounded_reach_many(db, eval_on_states(reduced, db, label_reduced), ks);

  PreservationReport report;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    bool equal = va[i] == vb[i];
    report.checks.push_back({ks[i], va[i], vb[i], equal});
    if (!equal) report.pass = false;
  }
  return report;
}

std::vector<std::uint32_t> label_masks(const Program& p, const Dtmc& d,
                                       const std::vector<ExprPtr>& labels) {
  std::vector<std::uint32_t> masks(d.states.size(), 0);
  for (std::size_t li = 0; li < labels.size(); ++li) {
    std::vector<char> sat = eval_on_states(p, d, labels[li]);
    for (std::size_t s = 0; s < d.states.size(); ++s) {
      if (sat[s]) masks[s] |= 1u << li;
    }
  }
  return masks;
}

}  // namespace pcfp
