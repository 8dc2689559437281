#pragma once

#include <string>

#include "pcfp/program.hpp"

namespace pcfp {

// Canonical text form; deterministic, LF line endings, re-parses to a
// structurally equal program.
std::string print(const Program& p);

}  // namespace pcfp
