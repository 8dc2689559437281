#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcfp/program.hpp"
#include "pcfp/rational.hpp"

namespace pcfp {

inline constexpr std::size_t kDefaultMaxStates = 10'000'000;

struct State {
  std::int64_t location = 0;
  VarEval eval;
};

// Explicit-state chain. States are indexed in BFS discovery order (a pure
// function of the program); transition lists are sorted by target and the
// probabilities of coinciding successors are summed. Non-deadlock rows
// sum to exactly 1.
struct Dtmc {
  std::vector<State> states;
  std::size_t initial = 0;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> transitions;
  std::vector<std::size_t> deadlocks;  // ascending

  std::size_t transition_count() const;
  std::string describe_state(std::size_t index, const std::string& cf_var)
      const;
};

struct DtmcStats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t deadlocks = 0;
};

// Breadth-first exploration from (cf=0, declared init values). In each
// state the enabled commands are selected uniformly; within a command the
// stochastic updates fire with their (exactly evaluated) probabilities.
// Throws ModelError on out-of-domain assignments, per-state distributions
// not summing to 1, or exceeding max_states.
Dtmc build_dtmc(const Program& p, std::size_t max_states = kDefaultMaxStates);

DtmcStats stats(const Dtmc& d);

// Pr of visiting a label state at round index < k. The round index starts
// at 0 in the initial state and increments on every transition whose
// target has location 0 (the initial visit is not a return). Exact, via
// layer-by-layer elimination over rationals.
Rational bounded_reach(const Program& p, const ExprPtr& label, unsigned k,
                       std::size_t max_states = kDefaultMaxStates);

// One value per entry of ks over a prebuilt chain; target flags one per
// state. Shares the layer recursion across all bounds.
std::vector<Rational> bounded_reach_many(const Dtmc& d,
                                         const std::vector<char>& target,
                                         const std::vector<unsigned>& ks);

// Evaluates a boolean expression in every state.
std::vector<char> eval_on_states(const Program& p, const Dtmc& d,
                                 const ExprPtr& expr);

struct PreservationCheck {
  unsigned k = 0;
  Rational original;
  Rational reduced;
  bool equal = false;
};

struct PreservationReport {
  std::vector<PreservationCheck> checks;
  bool pass = true;
};

// Exact equality of round-bounded reachability between a program and its
// reduction, for each bound. The two-label overload supports properties
// rewritten over merged variable names.
PreservationReport check_preservation(const Program& original,
                                      const Program& reduced,
                                      const ExprPtr& label,
                                      const std::vector<unsigned>& ks,
                                      std::size_t max_states =
                                          kDefaultMaxStates);
PreservationReport check_preservation(const Program& original,
                                      const Program& reduced,
                                      const ExprPtr& label_original,
                                      const ExprPtr& label_reduced,
                                      const std::vector<unsigned>& ks,
                                      std::size_t max_states =
                                          kDefaultMaxStates);

// Probabilistic bisimilarity of the initial states, by partition
// refinement on the disjoint union starting from label equivalence.
// labels_* give one proposition bitmask per state.
bool check_bisimilar(const Dtmc& a, const std::vector<std::uint32_t>& labels_a,
                     const Dtmc& b,
                     const std::vector<std::uint32_t>& labels_b);

// Bitmask per state over the given label expressions (bit i = labels[i]).
std::vector<std::uint32_t> label_masks(const Program& p, const Dtmc& d,
                                       const std::vector<ExprPtr>& labels);

}  // namespace pcfp
