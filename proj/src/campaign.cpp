#include "pcfp/campaign.hpp"

#include <algorithm>

#include "pcfp/errors.hpp"
#include "pcfp/printer.hpp"

namespace pcfp {

const char* pass_name(PassKind k) {
  switch (k) {
    case PassKind::Identity: return "identity";
    case PassKind::RvoAsWritten: return "rvo-as-written";
    case PassKind::RvoAggressive: return "rvo";
    case PassKind::Rao: return "rao";
    case PassKind::RvoRao: return "rvo+rao";
  }
  return "?";
}

PassKind parse_pass(const std::string& name) {
  if (name == "identity") return PassKind::Identity;
  if (name == "rvo") return PassKind::RvoAggressive;
  if (name == "rvo-as-written") return PassKind::RvoAsWritten;
  if (name == "rao") return PassKind::Rao;
  if (name == "rvo+rao") return PassKind::RvoRao;
  throw PcfpError("unknown pass '" + name +
                  "' (expected identity, rvo, rvo-as-written, rao, rvo+rao)");
}

namespace {

ExcludeSet label_exclusions(const Program& p, const ExcludeSet& extra) {
  ExcludeSet ex = extra;
  for (const auto& l : p.labels) {
    for (const auto& v : collect_vars(*l.expr)) {
      if (v != p.cf_var) ex.insert(v);
    }
  }
  return ex;
}

}  // namespace

Program apply_pass(const Program& p, PassKind kind,
                   const ExcludeSet& extra_exclude) {
  ExcludeSet ex = label_exclusions(p, extra_exclude);
  switch (kind) {
    case PassKind::Identity:
      return p;
    case PassKind::RvoAsWritten:
      return rvo(p, p.initial_eval(), ex, RvoMode::AsWritten).program;
    case PassKind::RvoAggressive:
      return rvo(p, p.initial_eval(), ex, RvoMode::Aggressive).program;
    case PassKind::Rao:
      return rao(p, ex).program;
    case PassKind::RvoRao: {
      Program mid = rvo(p, p.initial_eval(), ex, RvoMode::Aggressive).program;
      return rao(mid, ex).program;
    }
  }
  throw PcfpError("unknown pass");
}

namespace {

CaseResult run_case(const GenParams& base, std::uint64_t seed, PassKind pass,
                    const CampaignParams& params) {
  CaseResult result;
  result.seed = seed;
  result.pass = pass;

  GenParams gp = base;
  gp.seed = seed;
  Program prog = generate(gp);
  try {
    Program reduced = apply_pass(prog, pass);
    result.changed = !structurally_equal(prog, reduced);

    Dtmc da = build_dtmc(prog, params.max_states);
    Dtmc db = build_dtmc(reduced, params.max_states);
    result.original_states = da.states.size();
    result.reduced_states = db.states.size();

    const LabelDef* fail = prog.find_label("fail");
    if (!fail) throw PcfpError("generated program lacks the fail label");

    std::vector<Rational> va = bounded_reach_many(
        da, eval_on_states(prog, da, fail->expr), params.ks);
    std::vector<Rational> vb = bounded_reach_many(
        db, eval_on_states(reduced, db, fail->expr), params.ks);
    result.preservation_ok = true;
    for (std::size_t i = 0; i < params.ks.size(); ++i) {
      bool equal = va[i] == vb[i];
      result.checks.push_back({params.ks[i], va[i], vb[i], equal});
      if (!equal) result.preservation_ok = false;
    }

    if (params.run_bisimulation) {
      std::vector<ExprPtr> labels;
      for (const auto& l : prog.labels) labels.push_back(l.expr);
      result.bisimilar =
          check_bisimilar(da, label_masks(prog, da, labels), db,
                          label_masks(reduced, db, labels));
    } else {
      result.bisimilar = true;
    }
  } catch (const PcfpError& e) {
    result.error = e.what();
  }
  return result;
}

}  // namespace

CampaignReport run_campaign(const CampaignParams& params) {
  CampaignReport report;
  report.params = params;

  std::vector<std::uint64_t> seeds = params.seeds;
  std::sort(seeds.begin(), seeds.end());
  for (std::uint64_t seed : seeds) {
    for (PassKind pass : params.passes) {
      CaseResult r = run_case(params.base, seed, pass, params);
      if (!r.ok()) {
        ++report.failures;
        GenParams gp = params.base;
        gp.seed = seed;
        report.failing_programs.push_back(print(generate(gp)));
      }
      report.cases.push_back(std::move(r));
    }
  }
  return report;
}

nlohmann::json to_json(const CampaignReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& ch : c.checks) {
      checks.push_back({{"k", ch.k},
                        {"original", rational_to_string(ch.original)},
                        {"reduced", rational_to_string(ch.reduced)},
                        {"equal", ch.equal}});
    }
    double factor = c.reduced_states == 0
                        ? 1.0
                        : static_cast<double>(c.original_states) /
                              static_cast<double>(c.reduced_states);
    nlohmann::json entry{{"seed", c.seed},
                         {"pass", pass_name(c.pass)},
                         {"ok", c.ok()},
                         {"preservation", c.preservation_ok},
                         {"bisimilar", c.bisimilar},
                         {"changed", c.changed},
                         {"originalStates", c.original_states},
                         {"reducedStates", c.reduced_states},
                         {"factor", factor},
                         {"checks", checks}};
    if (!c.error.empty()) entry["error"] = c.error;
    cases.push_back(std::move(entry));
  }

  nlohmann::json passes = nlohmann::json::array();
  for (PassKind k : report.params.passes) passes.push_back(pass_name(k));
  nlohmann::json seeds = nlohmann::json::array();
  for (auto s : report.params.seeds) seeds.push_back(s);

  return nlohmann::json{
      {"params",
       {{"seeds", seeds},
        {"passes", passes},
        {"k", report.params.ks},
        {"maxStates", report.params.max_states},
        {"generator",
         {{"numLocations", report.params.base.num_locations},
          {"numVars", report.params.base.num_vars},
          {"commandsPerLocation", report.params.base.commands_per_location},
          {"maxBranching", report.params.base.max_branching},
          {"probDenominatorBound",
           report.params.base.prob_denominator_bound}}}}},
      {"summary",
       {{"total", report.cases.size()}, {"failures", report.failures}}},
      {"cases", cases},
      {"failingPrograms", report.failing_programs}};
}

}  // namespace pcfp
