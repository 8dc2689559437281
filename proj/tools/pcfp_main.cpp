#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pcfp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "pcfp - reduction toolkit for probabilistic control-flow programs\n"
      "Live range analysis, reset value optimization (RVO), register\n"
      "allocation optimization (RAO), and an exact explicit-state DTMC\n"
      "verifier for round-bounded reachability."};
  app.require_subcommand(1);

  pcfp::CliConfig cfg;
  if (const char* env = std::getenv("PCFP_MAX_STATES")) {
    cfg.max_states = std::strtoull(env, nullptr, 10);
  }

  auto add_common = [&cfg](CLI::App* sub, bool needs_input) {
    if (needs_input) {
      sub->add_option("input", cfg.input_path, "input model ('-' for stdin)")
          ->required();
    }
    sub->add_option("--cf-var", cfg.cf_var, "control-flow variable name");
    sub->add_option("--max-states", cfg.max_states,
                    "state cap for explicit exploration");
  };

  CLI::App* parse = app.add_subcommand(
      "parse", "parse a model and echo its canonical form");
  add_common(parse, true);
  parse->add_flag("--check", cfg.check_only, "validate only, no echo");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "live range analysis as JSON {commandId: [vars...]}");
  add_common(analyze, true);
  analyze->add_flag("--ig", cfg.dump_ig,
                    "dump the interference graph in DOT format instead");

  CLI::App* reduce =
      app.add_subcommand("reduce", "apply reduction passes to a model");
  add_common(reduce, true);
  reduce->add_option("-o,--output", cfg.output_path,
                     "output path ('-' for stdout)");
  reduce->add_option("--sidecar", cfg.sidecar_path,
                     "stats JSON path (default: <output>.stats.json)");
  reduce->add_option("--pass", cfg.pass, "rvo | rao | rvo+rao");
  reduce->add_option("--rvo-mode", cfg.rvo_mode, "aggressive | as-written");
  reduce->add_option("--exclude", cfg.exclude,
                     "variables to exclude from reduction")
      ->delimiter(',');
  reduce->add_option("--reset", cfg.resets,
                     "reset overrides, e.g. --reset x=1,y=0")
      ->delimiter(',');
  reduce->add_flag("--no-stats", cfg.no_stats, "skip the DTMC stats sidecar");
  reduce->add_flag("--unsafe-no-auto-exclude{false}",
                   cfg.auto_exclude_labels,
                   "do not exclude label variables automatically");

  CLI::App* stats = app.add_subcommand(
      "stats", "explicit state-space statistics as JSON");
  add_common(stats, true);

  CLI::App* verify = app.add_subcommand(
      "verify",
      "check that a reduction preserves round-bounded reachability");
  add_common(verify, true);
  verify->add_option("--pass", cfg.pass, "rvo | rao | rvo+rao");
  verify->add_option("--rvo-mode", cfg.rvo_mode, "aggressive | as-written");
  verify->add_option("--exclude", cfg.exclude,
                     "variables to exclude from reduction")
      ->delimiter(',');
  verify->add_option("--reset", cfg.resets, "reset overrides")
      ->delimiter(',');
  verify->add_option("--k", cfg.ks, "round bounds to check")->delimiter(',');
  verify->add_flag("--bisim", cfg.bisimulation,
                   "also check probabilistic bisimilarity");
  verify->add_flag("--json", cfg.json, "structured output");
  verify->add_flag("--unsafe-no-auto-exclude{false}",
                   cfg.auto_exclude_labels,
                   "do not exclude label variables automatically");

  CLI::App* fuzz = app.add_subcommand(
      "fuzz", "random-program equivalence campaign over the passes");
  fuzz->add_option("--seeds", cfg.seeds, "e.g. 0..99 or 1,2,7");
  fuzz->add_option("--passes", cfg.passes,
                   "comma list of identity,rvo,rvo-as-written,rao,rvo+rao");
  fuzz->add_option("--k", cfg.ks, "round bounds to check")->delimiter(',');
  fuzz->add_option("--out", cfg.report_path, "report JSON path");
  fuzz->add_option("--gen-locations", cfg.gen_locations,
                   "control-flow locations per generated program");
  fuzz->add_option("--gen-vars", cfg.gen_vars, "variables per program");
  fuzz->add_option("--gen-commands", cfg.gen_commands_per_location,
                   "commands per location");
  fuzz->add_option("--gen-branching", cfg.gen_max_branching,
                   "max stochastic branches per command");
  fuzz->add_option("--gen-denominator", cfg.gen_prob_denominator_bound,
                   "probability denominator bound");
  fuzz->add_option("--max-states", cfg.max_states, "state cap per case");

  CLI11_PARSE(app, argc, argv);

  for (CLI::App* sub : {parse, analyze, reduce, stats, verify, fuzz}) {
    if (sub->parsed()) {
      cfg.subcommand = sub->get_name();
      break;
    }
  }
  return pcfp::run(cfg, std::cin, std::cout, std::cerr);
}
