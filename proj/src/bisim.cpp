#include <map>
#include <utility>
#include <vector>

#include "pcfp/dtmc.hpp"

namespace pcfp {

namespace {

using Signature = std::vector<std::pair<int, Rational>>;

}  // namespace

bool check_bisimilar(const Dtmc& a, const std::vector<std::uint32_t>& labels_a,
                     const Dtmc& b,
                     const std::vector<std::uint32_t>& labels_b) {
  const std::size_t na = a.states.size();
  const std::size_t n = na + b.states.size();

  // Initial partition: label equivalence over the disjoint union.
  std::vector<int> block(n);
  {
    std::map<std::uint32_t, int> by_label;
    auto assign = [&by_label](std::uint32_t mask) {
      auto [it, _] = by_label.emplace(mask, static_cast<int>(by_label.size()));
      return it->second;
    };
    for (std::size_t i = 0; i < na; ++i) block[i] = assign(labels_a[i]);
    for (std::size_t i = 0; i < b.states.size(); ++i) {
      block[na + i] = assign(labels_b[i]);
    }
  }

  auto transitions_of = [&](std::size_t i)
      -> const std::vector<std::pair<std::size_t, Rational>>& {
    return i < na ? a.transitions[i] : b.transitions[i - na];
  };
  auto offset_of = [&](std::size_t i) { return i < na ? 0 : na; };

  // Refine by the per-block transition probability signature until the
  // block count stabilizes (splits only add blocks).
  std::size_t blocks = 0;
  for (const int bl : block) blocks = std::max(blocks, std::size_t(bl) + 1);
  for (;;) {
    std::map<std::pair<int, Signature>, int> next_id;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::map<int, Rational> sums;
      for (const auto& [t, pr] : transitions_of(i)) {
        sums[block[t + offset_of(i)]] += pr;
      }
      Signature sig(sums.begin(), sums.end());
      auto [it, _] = next_id.emplace(
          std::make_pair(block[i], std::move(sig)),
          static_cast<int>(next_id.size()));
      next[i] = it->second;
    }
    if (next_id.size() == blocks) break;
    blocks = next_id.size();
    block = std::move(next);
  }
  return block[a.initial] == block[na + b.initial];
}

}  // namespace pcfp
