#pragma once

#include <cstdint>

#include "pcfp/program.hpp"

namespace pcfp {

struct GenParams {
  std::uint64_t seed = 0;
  int num_locations = 5;
  int num_vars = 3;            // besides the never-read and flag variables
  int commands_per_location = 1;
  int max_branching = 3;
  int prob_denominator_bound = 6;
};

// Deterministic-in-seed random program. Well-formed by construction:
// probabilities are exact rationals summing to 1 per command, assignments
// are in-domain constants or guard-pinned copies/increments, location 0
// always has a command. Always declares a write-only variable, a
// write-dominated variable, and a failure flag with a label
//   label "fail" = flag=1;
// so both reduction passes and the preservation checks have work to do.
Program generate(const GenParams& params);

}  // namespace pcfp
