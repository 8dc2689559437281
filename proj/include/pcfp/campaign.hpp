#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcfp/dtmc.hpp"
#include "pcfp/generator.hpp"
#include "pcfp/reduce.hpp"

namespace pcfp {

enum class PassKind {
  Identity,
  RvoAsWritten,
  RvoAggressive,
  Rao,
  RvoRao,  // aggressive RVO, then RAO
};

const char* pass_name(PassKind k);
// Parses "identity", "rvo", "rvo-as-written", "rao", "rvo+rao"; throws
// PcfpError on anything else.
PassKind parse_pass(const std::string& name);

// Applies a pass with the campaign defaults: reset evaluation = declared
// initial values, exclude set = label variables plus `extra_exclude`.
Program apply_pass(const Program& p, PassKind kind,
                   const ExcludeSet& extra_exclude = {});

struct CampaignParams {
  GenParams base;                       // seed is overridden per case
  std::vector<std::uint64_t> seeds;
  std::vector<PassKind> passes;
  std::vector<unsigned> ks;
  std::size_t max_states = 1'000'000;
  bool run_bisimulation = true;
};

struct CaseResult {
  std::uint64_t seed = 0;
  PassKind pass = PassKind::Identity;
  bool preservation_ok = false;
  bool bisimilar = false;
  bool changed = false;  // pass modified the program
  std::size_t original_states = 0;
  std::size_t reduced_states = 0;
  std::vector<PreservationCheck> checks;
  std::string error;  // nonempty: the case failed to run

  bool ok() const { return error.empty() && preservation_ok && bisimilar; }
};

struct CampaignReport {
  CampaignParams params;
  std::vector<CaseResult> cases;  // sorted by (seed, pass)
  std::size_t failures = 0;
  // Program text of failing cases, for reproduction.
  std::vector<std::string> failing_programs;
};

CampaignReport run_campaign(const CampaignParams& params);

nlohmann::json to_json(const CampaignReport& report);

}  // namespace pcfp
