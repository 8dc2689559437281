#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pcfp/interference.hpp"
#include "pcfp/liveness.hpp"
#include "pcfp/program.hpp"

namespace pcfp {

// Variables exempt from both passes; properties stated over these (plus
// the control-flow variable) keep their meaning in the reduced program.
using ExcludeSet = std::set<std::string>;

enum class RvoMode {
  // Reset candidates per update: (live(c) \ Ex) minus everything live at
  // the update's target location.
  AsWritten,
  // Reset candidates per update: (Var \ Ex) minus everything live at the
  // update's target location — every variable dead at all successors is
  // reset. Default; gives the stronger reduction.
  Aggressive,
};

struct RvoEdit {
  int command_id = 0;
  int update_index = 0;
  std::string var;
  bool replaced = false;  // true: rewrote an existing right-hand side
};

struct RvoResult {
  Program program;
  std::vector<RvoEdit> edits;
};

// Reset value optimization: rewrites variables that are dead at every
// command of an update's target location to their reset value. Keeps the
// variable set, locations, guards and probabilities intact; only
// assignment lists change. The reset evaluation must be total over the
// declared variables and in-domain (checked before any rewriting).
RvoResult rvo(const Program& p, const VarEval& reset, const ExcludeSet& ex,
              RvoMode mode = RvoMode::Aggressive);

struct RaoResult {
  Program program;
  // Original name -> class variable name, for every renamed variable.
  std::map<std::string, std::string> renaming;
  ColorAssignment coloring;
  int merged_classes = 0;
};

// Register allocation optimization: colors the interference graph and
// merges all non-excluded variables of one color into a single variable.
// Labels are left untouched; a label over a non-excluded variable is an
// error, since merging could change its meaning.
RaoResult rao(const Program& p, const ExcludeSet& ex);

// Deduplicates syntactically identical top-level conjuncts; no other
// rewriting.
ExprPtr simplify_duplicate_conjuncts(const ExprPtr& e);

}  // namespace pcfp
