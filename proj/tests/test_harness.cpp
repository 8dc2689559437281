#include <set>

#include "doctest.h"
#include "paper_programs.hpp"
#include "pcfp/campaign.hpp"
#include "pcfp/dtmc.hpp"
#include "pcfp/generator.hpp"
#include "pcfp/liveness.hpp"
#include "pcfp/parser.hpp"
#include "pcfp/printer.hpp"

using namespace pcfp;

TEST_CASE("generator is deterministic in the seed") {
  GenParams gp;
  gp.seed = 1;
  Program a = generate(gp);
  Program b = generate(gp);
  CHECK(structurally_equal(a, b));
  CHECK(print(a) == print(b));

  gp.seed = 2;
  CHECK_FALSE(structurally_equal(a, generate(gp)));
}

TEST_CASE("generated programs are well-formed and explorable") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenParams gp;
    gp.seed = seed;
    gp.num_locations = 3 + static_cast<int>(seed % 3);
    gp.num_vars = 2 + static_cast<int>(seed % 3);  // <= 4
    gp.commands_per_location = 1 + static_cast<int>(seed % 2);
    Program p = generate(gp);

    CHECK(well_formed(p).empty());

    // structural guarantees: location 0 populated, fail label over the
    // dedicated flag variable, a never-read variable present
    bool loc0 = false;
    for (const auto& c : p.commands) loc0 |= c.location == 0;
    CHECK(loc0);
    REQUIRE(p.find_label("fail") != nullptr);
    CHECK(collect_vars(*p.find_label("fail")->expr) ==
          std::set<std::string>{"flag"});
    VarSet all_reads;
    for (const auto& c : p.commands) {
      VarSet r = reads(p, c);
      all_reads.insert(r.begin(), r.end());
    }
    CHECK(all_reads.count("junk") == 0);

    // the semantics never hits an out-of-domain assignment
    Dtmc d = build_dtmc(p, 200000);
    CHECK(d.states.size() >= 1);

    // round trip through the text format
    CHECK(structurally_equal(parse(print(p)), p));
  }
}

TEST_CASE("campaign: identity pass keeps the state count") {
  CampaignParams params;
  params.seeds = {0, 1, 2, 3, 4};
  params.passes = {PassKind::Identity};
  params.ks = {1, 2};
  CampaignReport report = run_campaign(params);
  CHECK(report.failures == 0);
  for (const auto& c : report.cases) {
    CHECK(c.original_states == c.reduced_states);
    CHECK(c.preservation_ok);
    CHECK(c.bisimilar);
    CHECK_FALSE(c.changed);
  }
}

TEST_CASE("campaign: all passes preserve on a small corpus") {
  CampaignParams params;
  params.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  params.passes = {PassKind::RvoAsWritten, PassKind::RvoAggressive,
                   PassKind::Rao, PassKind::RvoRao};
  params.ks = {1, 2, 5};
  CampaignReport report = run_campaign(params);
  CHECK(report.failures == 0);
  CHECK(report.cases.size() == 40);
  for (const auto& c : report.cases) {
    CHECK(c.error.empty());
    CHECK(c.preservation_ok);
    CHECK(c.bisimilar);
    // holds on this fixed sub-corpus; not a theorem for rao/as-written
    CHECK(c.reduced_states <= c.original_states);
  }
  // report is sorted by (seed, pass) and JSON-serializable
  nlohmann::json j = to_json(report);
  CHECK(j["summary"]["failures"] == 0);
  CHECK(j["cases"].size() == 40);
}

TEST_CASE("apply_pass reproduces the paper state counts") {
  Program p = parse(fixtures::kBsp);
  // auto-exclusion keeps the label variable x out of every pass
  CHECK(build_dtmc(apply_pass(p, PassKind::Identity)).states.size() == 7);
  Program unlabeled = p;
  unlabeled.labels.clear();
  CHECK(build_dtmc(apply_pass(unlabeled, PassKind::Rao)).states.size() == 5);
  CHECK(build_dtmc(apply_pass(unlabeled, PassKind::RvoAggressive))
            .states.size() == 5);
  CHECK(build_dtmc(apply_pass(unlabeled, PassKind::RvoAsWritten))
            .states.size() == 7);
}

TEST_CASE("pass names round-trip") {
  for (PassKind k : {PassKind::Identity, PassKind::RvoAsWritten,
                     PassKind::RvoAggressive, PassKind::Rao,
                     PassKind::RvoRao}) {
    CHECK(parse_pass(pass_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_pass("bogus"), PcfpError);
}
