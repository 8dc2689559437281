#include "pcfp/liveness.hpp"

#include <algorithm>
#include <deque>

#include "pcfp/errors.hpp"

namespace pcfp {

const VarSet& LivenessMap::of(int command_id) const {
  auto it = live.find(command_id);
  if (it == live.end()) {
    throw PcfpError("no liveness entry for command " +
                    std::to_string(command_id));
  }
  return it->second;
}

VarSet reads(const Program& p, const Command& c) {
  VarSet s;
  collect_vars(*c.guard, s);
  for (const auto& u : c.updates) {
    collect_vars(*u.prob, s);
    for (const auto& a : u.assigns) collect_vars(*a.expr, s);
  }
  s.erase(p.cf_var);
  return s;
}

VarSet writes(const Command& c) {
  VarSet s;
  if (c.updates.empty()) return s;
  for (const auto& a : c.updates.front().assigns) s.insert(a.target);
  for (std::size_t i = 1; i < c.updates.size() && !s.empty(); ++i) {
    VarSet next;
    for (const auto& a : c.updates[i].assigns) {
      if (s.count(a.target)) next.insert(a.target);
    }
    s = std::move(next);
  }
  return s;
}

std::int64_t cf_of(const Command& c) { return c.location; }

namespace {

// Command indices grouped by location, in command order.
std::map<std::int64_t, std::vector<std::size_t>> location_index(
    const Program& p) {
  std::map<std::int64_t, std::vector<std::size_t>> at;
  for (std::size_t i = 0; i < p.commands.size(); ++i) {
    at[p.commands[i].location].push_back(i);
  }
  return at;
}

}  // namespace

std::vector<int> succ(const Program& p, const Command& c) {
  std::set<int> ids;
  for (const auto& u : c.updates) {
    for (const auto& other : p.commands) {
      if (other.location == u.cf_target) ids.insert(other.id);
    }
  }
  return {ids.begin(), ids.end()};
}

std::vector<int> pred(const Program& p, const Command& c) {
  std::set<int> ids;
  for (const auto& other : p.commands) {
    for (const auto& u : other.updates) {
      if (u.cf_target == c.location) {
        ids.insert(other.id);
        break;
      }
    }
  }
  return {ids.begin(), ids.end()};
}

LivenessMap lra(const Program& p, LraStats* stats) {
  const std::size_t n = p.commands.size();

  // Dense variable indexing keeps the fixpoint iteration cheap.
  std::map<std::string, int> var_index;
  for (const auto& d : p.decls) {
    var_index.emplace(d.name, static_cast<int>(var_index.size()));
  }
  const std::size_t nv = var_index.size();

  auto at = location_index(p);
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> targets;
    for (const auto& u : p.commands[i].updates) {
      auto it = at.find(u.cf_target);
      if (it == at.end()) continue;
      for (std::size_t j : it->second) targets.insert(j);
    }
    for (std::size_t j : targets) preds[j].push_back(i);
  }

  std::vector<std::vector<char>> live(n, std::vector<char>(nv, 0));
  std::vector<std::vector<char>> kill(n, std::vector<char>(nv, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& v : reads(p, p.commands[i])) {
      live[i][var_index.at(v)] = 1;
    }
    for (const auto& v : writes(p.commands[i])) {
      kill[i][var_index.at(v)] = 1;
    }
  }

  // FIFO worklist over command indices, seeded in command order.
  std::deque<std::size_t> work;
  std::vector<char> queued(n, 1);
  for (std::size_t i = 0; i < n; ++i) work.push_back(i);

  LraStats local;
  while (!work.empty()) {
    std::size_t cur = work.front();
    work.pop_front();
    queued[cur] = 0;
    ++local.iterations;
    for (std::size_t pr : preds[cur]) {
      bool changed = false;
      for (std::size_t v = 0; v < nv; ++v) {
        if (live[cur][v] && !kill[pr][v] && !live[pr][v]) {
          live[pr][v] = 1;
          ++local.additions;
          changed = true;
        }
      }
      if (changed && !queued[pr]) {
        queued[pr] = 1;
        work.push_back(pr);
      }
    }
  }
  if (stats) *stats = local;

  std::vector<std::string> names(nv);
  for (const auto& [name, idx] : var_index) names[idx] = name;
  LivenessMap out;
  for (std::size_t i = 0; i < n; ++i) {
    VarSet s;
    for (std::size_t v = 0; v < nv; ++v) {
      if (live[i][v]) s.insert(names[v]);
    }
    out.live.emplace(p.commands[i].id, std::move(s));
  }
  return out;
}

VarSet live_at_location(const Program& p, const LivenessMap& live,
                        std::int64_t location) {
  VarSet s;
  for (const auto& c : p.commands) {
    if (c.location != location) continue;
    const VarSet& l = live.of(c.id);
    s.insert(l.begin(), l.end());
  }
  return s;
}

}  // namespace pcfp
