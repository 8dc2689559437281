#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pcfp/program.hpp"

namespace pcfp {

using VarSet = std::set<std::string>;

// Per-command live variable sets, keyed by command id.
struct LivenessMap {
  std::map<int, VarSet> live;

  const VarSet& of(int command_id) const;
  bool operator==(const LivenessMap&) const = default;
};

struct LraStats {
  std::size_t iterations = 0;  // worklist pops
  std::size_t additions = 0;   // total variables added across all sets
};

// Variables read by c: occurrences in the guard, any probability
// expression, or any assignment right-hand side. Never contains the
// control-flow variable.
VarSet reads(const Program& p, const Command& c);

// Variables written in *every* stochastic update of c.
VarSet writes(const Command& c);

std::int64_t cf_of(const Command& c);

// succ(c): commands at locations targeted by c's updates.
// pred(c): commands with an update targeting c's location.
// Returned as command ids in ascending order.
std::vector<int> succ(const Program& p, const Command& c);
std::vector<int> pred(const Program& p, const Command& c);

// Live range analysis: least fixpoint of
//   live(c) = reads(c) ∪ ⋃_{c' ∈ succ(c)} (live(c') \ writes(c))
// via a FIFO worklist seeded with all commands. The result is independent
// of the pick order.
LivenessMap lra(const Program& p, LraStats* stats = nullptr);

// ⋃ live(s) over all commands s at the given location.
VarSet live_at_location(const Program& p, const LivenessMap& live,
                        std::int64_t location);

}  // namespace pcfp
