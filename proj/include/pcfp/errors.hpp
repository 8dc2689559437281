#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcfp {

// Position in a source text, for parse diagnostics.
struct SourceSpan {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

class PcfpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expression evaluation failure (unbound variable, zero denominator,
// probability outside [0,1], type mismatch).
class EvalError : public PcfpError {
 public:
  using PcfpError::PcfpError;
};

// State-space construction or verification failure (out-of-domain
// assignment, bad distribution, capacity exceeded, bad exclusion set).
class ModelError : public PcfpError {
 public:
  using PcfpError::PcfpError;
};

class ParseError : public PcfpError {
 public:
  ParseError(const std::string& message, SourceSpan where)
      : PcfpError(message), span(where) {}
  SourceSpan span;
};

}  // namespace pcfp
