#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcfp/dtmc.hpp"

namespace pcfp {

// Parsed command line. Mutual consistency is validated by run() before
// anything executes.
struct CliConfig {
  std::string subcommand;  // parse | analyze | reduce | stats | verify | fuzz
  std::string input_path;  // "-" reads stdin
  std::string output_path;  // reduce: "-" writes stdout
  std::string sidecar_path;  // reduce: stats JSON ("" = derive from output)
  std::string cf_var = "cf";

  std::string pass = "rvo+rao";           // reduce/verify
  std::string rvo_mode = "aggressive";    // aggressive | as-written
  std::vector<std::string> exclude;       // extra exclusions
  std::vector<std::string> resets;        // "x=1" overrides
  std::vector<unsigned> ks = {1, 2, 5};   // verify/fuzz bounds
  bool auto_exclude_labels = true;
  bool bisimulation = false;  // verify: also run the bisimilarity check
  bool json = false;          // verify: structured output
  bool check_only = false;    // parse: do not echo the canonical form
  bool dump_ig = false;       // analyze: DOT interference graph
  bool no_stats = false;      // reduce: skip the DTMC sidecar

  std::size_t max_states = kDefaultMaxStates;

  // fuzz
  std::string seeds = "0..99";
  std::string passes = "rvo,rvo-as-written,rao,rvo+rao";
  std::string report_path;
  int gen_locations = 5;
  int gen_vars = 3;
  int gen_commands_per_location = 1;
  int gen_max_branching = 3;
  int gen_prob_denominator_bound = 6;
};

// Exit codes: 0 success, 1 parse/semantic error, 2 verification mismatch
// or campaign failures.
int run(const CliConfig& config, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace pcfp
