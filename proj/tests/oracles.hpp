#pragma once

// Independent reference implementations used only by tests. They share no
// code with the library paths they check.

#include <map>
#include <set>
#include <vector>

#include "pcfp/dtmc.hpp"
#include "pcfp/errors.hpp"
#include "pcfp/liveness.hpp"
#include "pcfp/program.hpp"

namespace oracles {

// Round-bounded reachability solved on the full (state x round) product
// with one dense Gauss-Jordan pass: no layer recursion, no SCC
// decomposition.
inline pcfp::Rational product_bounded_reach(const pcfp::Dtmc& d,
                                            const std::vector<char>& target,
                                            unsigned k) {
  using pcfp::Rational;
  const std::size_t n = d.states.size();
  if (k == 0 || n == 0) return Rational(0);
  const std::size_t pn = n * (k + 1);
  auto id = [n](std::size_t s, unsigned round) { return round * n + s; };
  auto is_target = [&](std::size_t s, unsigned round) {
    return round < k && target[s];
  };

  // Product transitions; the round counter saturates at k.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> trans(pn);
  for (unsigned r = 0; r <= k; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      if (is_target(s, r)) continue;  // absorbing
      for (const auto& [t, pr] : d.transitions[s]) {
        unsigned nr = d.states[t].location == 0 ? std::min(r + 1, k) : r;
        trans[id(s, r)].emplace_back(id(t, nr), pr);
      }
    }
  }

  // Restrict to states that can reach a target at all.
  std::vector<std::vector<std::size_t>> rev(pn);
  std::vector<char> can(pn, 0);
  std::vector<std::size_t> queue;
  for (unsigned r = 0; r <= k; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      if (is_target(s, r)) {
        can[id(s, r)] = 1;
        queue.push_back(id(s, r));
      }
    }
  }
  for (std::size_t u = 0; u < pn; ++u) {
    for (const auto& [v, pr] : trans[u]) rev[v].push_back(u);
  }
  while (!queue.empty()) {
    std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t u : rev[v]) {
      if (!can[u]) {
        can[u] = 1;
        queue.push_back(u);
      }
    }
  }

  // x = Px + t over the can-reach non-target states, dense.
  std::vector<std::size_t> unknowns;
  std::vector<std::size_t> pos(pn, 0);
  for (std::size_t u = 0; u < pn; ++u) {
    unsigned r = static_cast<unsigned>(u / n);
    std::size_t s = u % n;
    if (can[u] && !is_target(s, r)) {
      pos[u] = unknowns.size();
      unknowns.push_back(u);
    }
  }
  const std::size_t m = unknowns.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    a[i][pos[unknowns[i]]] = 1;
    for (const auto& [v, pr] : trans[unknowns[i]]) {
      if (!can[v]) continue;
      unsigned r = static_cast<unsigned>(v / n);
      std::size_t s = v % n;
      if (is_target(s, r)) {
        a[i][m] += pr;
      } else {
        a[i][pos[v]] -= pr;
      }
    }
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw pcfp::PcfpError("oracle: singular system");
    std::swap(a[piv], a[col]);
    Rational d0 = a[col][col];
    for (auto& x : a[col]) x /= d0;
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (std::size_t j = col; j <= m; ++j) a[row][j] -= f * a[col][j];
    }
  }

  std::size_t start = id(d.initial, 0);
  if (is_target(d.initial, 0)) return Rational(1);
  if (!can[start]) return Rational(0);
  return a[pos[start]][m];
}

// Exhaustive round-annotated path enumeration, cut off after `max_steps`
// transitions. Returns exact bounds: hit mass and still-unresolved mass.
// On chains whose paths all resolve within the cutoff the bracket is
// tight.
struct PathBracket {
  pcfp::Rational lower;  // mass of paths that reached a target
  pcfp::Rational open;   // mass still alive at the step cutoff
};

inline PathBracket enumerate_paths(const pcfp::Dtmc& d,
                                   const std::vector<char>& target,
                                   unsigned k, unsigned max_steps) {
  using pcfp::Rational;
  PathBracket out{Rational(0), Rational(0)};
  struct Item {
    std::size_t state;
    unsigned round;
    unsigned steps;
    Rational mass;
  };
  std::vector<Item> stack{{d.initial, 0, 0, Rational(1)}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.round < k && target[it.state]) {
      out.lower += it.mass;
      continue;
    }
    if (it.round >= k || d.transitions[it.state].empty()) {
      continue;  // can never hit below the bound any more
    }
    if (it.steps >= max_steps) {
      out.open += it.mass;
      continue;
    }
    for (const auto& [t, pr] : d.transitions[it.state]) {
      unsigned nr = d.states[t].location == 0 ? it.round + 1 : it.round;
      stack.push_back({t, nr, it.steps + 1, it.mass * pr});
    }
  }
  return out;
}

// Liveness by naive full sweeps until nothing changes.
inline pcfp::LivenessMap naive_lra(const pcfp::Program& p) {
  pcfp::LivenessMap out;
  for (const auto& c : p.commands) {
    out.live[c.id] = pcfp::reads(p, c);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : p.commands) {
      pcfp::VarSet want = out.live[c.id];
      pcfp::VarSet w = pcfp::writes(c);
      for (int sid : pcfp::succ(p, c)) {
        for (const auto& v : out.live[sid]) {
          if (!w.count(v)) want.insert(v);
        }
      }
      if (want != out.live[c.id]) {
        out.live[c.id] = std::move(want);
        changed = true;
      }
    }
  }
  return out;
}

// Liveness with a LIFO worklist, to witness pick-order independence.
inline pcfp::LivenessMap lifo_lra(const pcfp::Program& p) {
  pcfp::LivenessMap out;
  std::vector<int> work;
  for (const auto& c : p.commands) {
    out.live[c.id] = pcfp::reads(p, c);
    work.push_back(c.id);
  }
  while (!work.empty()) {
    int cur = work.back();
    work.pop_back();
    const pcfp::Command* cc = p.find_command(cur);
    for (int pid : pcfp::pred(p, *cc)) {
      const pcfp::Command* pc = p.find_command(pid);
      pcfp::VarSet w = pcfp::writes(*pc);
      pcfp::VarSet& lp = out.live[pid];
      bool changed = false;
      for (const auto& v : out.live[cur]) {
        if (!w.count(v) && lp.insert(v).second) changed = true;
      }
      if (changed) work.push_back(pid);
    }
  }
  return out;
}

}  // namespace oracles
