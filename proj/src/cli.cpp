#include "pcfp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "pcfp/campaign.hpp"
#include "pcfp/errors.hpp"
#include "pcfp/interference.hpp"
#include "pcfp/liveness.hpp"
#include "pcfp/parser.hpp"
#include "pcfp/printer.hpp"
#include "pcfp/reduce.hpp"

namespace pcfp {

namespace {

std::string read_input(const CliConfig& cfg, std::istream& in) {
  if (cfg.input_path.empty()) throw PcfpError("no input file given");
  if (cfg.input_path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(cfg.input_path, std::ios::binary);
  if (!f) throw PcfpError("cannot open '" + cfg.input_path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

RvoMode rvo_mode_of(const CliConfig& cfg) {
  if (cfg.rvo_mode == "aggressive") return RvoMode::Aggressive;
  if (cfg.rvo_mode == "as-written") return RvoMode::AsWritten;
  throw PcfpError("unknown RVO mode '" + cfg.rvo_mode +
                  "' (expected aggressive or as-written)");
}

ExcludeSet exclusions(const CliConfig& cfg, const Program& p,
                      std::ostream& err) {
  ExcludeSet ex(cfg.exclude.begin(), cfg.exclude.end());
  if (cfg.auto_exclude_labels) {
    for (const auto& l : p.labels) {
      for (const auto& v : collect_vars(*l.expr)) {
        if (v != p.cf_var) ex.insert(v);
      }
    }
  } else if (!p.labels.empty()) {
    err << "warning: label variables are not auto-excluded; property "
           "preservation is not guaranteed\n";
  }
  return ex;
}

VarEval resets_of(const CliConfig& cfg, const Program& p) {
  std::vector<std::pair<std::string, std::int64_t>> pairs;
  for (const auto& d : p.decls) pairs.emplace_back(d.name, d.init);
  for (const auto& spec : cfg.resets) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw PcfpError("bad reset override '" + spec + "' (expected var=int)");
    }
    std::string name = spec.substr(0, eq);
    std::int64_t value = std::stoll(spec.substr(eq + 1));
    bool found = false;
    for (auto& [n, v] : pairs) {
      if (n == name) {
        v = value;
        found = true;
      }
    }
    if (!found) {
      throw PcfpError("reset override for undeclared variable '" + name +
                      "'");
    }
  }
  return VarEval::from_pairs(std::move(pairs));
}

struct Reduction {
  Program program;
  std::string pass;
};

Reduction reduce_program(const Program& p, const CliConfig& cfg,
                         std::ostream& err) {
  ExcludeSet ex = exclusions(cfg, p, err);
  RvoMode mode = rvo_mode_of(cfg);
  if (cfg.pass == "rvo") {
    return {rvo(p, resets_of(cfg, p), ex, mode).program, cfg.pass};
  }
  if (cfg.pass == "rao") {
    return {rao(p, ex).program, cfg.pass};
  }
  if (cfg.pass == "rvo+rao") {
    Program mid = rvo(p, resets_of(cfg, p), ex, mode).program;
    return {rao(mid, ex).program, cfg.pass};
  }
  throw PcfpError("unknown pass '" + cfg.pass +
                  "' (expected rvo, rao, rvo+rao)");
}

std::vector<unsigned> parse_seed_range(const std::string& spec,
                                       std::vector<std::uint64_t>& seeds) {
  std::string rest = spec;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string item = rest.substr(0, comma);
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(std::stoull(item));
    } else {
      std::uint64_t lo = std::stoull(item.substr(0, dots));
      std::uint64_t hi = std::stoull(item.substr(dots + 2));
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
  }
  return {};
}

int cmd_parse(const CliConfig& cfg, const Program& p, std::ostream& out) {
  if (cfg.check_only) {
    out << "ok: " << p.commands.size() << " commands, " << p.decls.size()
        << " variables, " << p.labels.size() << " labels\n";
  } else {
    out << print(p);
  }
  return 0;
}

int cmd_analyze(const CliConfig& cfg, const Program& p, std::ostream& out) {
  LivenessMap live = lra(p);
  if (cfg.dump_ig) {
    out << to_dot(build_ig(p, live));
    return 0;
  }
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, vars] : live.live) {
    j[std::to_string(id)] = vars;
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_stats(const CliConfig& cfg, const Program& p, std::ostream& out) {
  DtmcStats s = stats(build_dtmc(p, cfg.max_states));
  nlohmann::json j{{"states", s.states},
                   {"transitions", s.transitions},
                   {"deadlocks", s.deadlocks}};
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_reduce(const CliConfig& cfg, const Program& p, std::ostream& out,
               std::ostream& err) {
  Reduction red = reduce_program(p, cfg, err);
  std::string text = print(red.program);
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    out << text;
  } else {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw PcfpError("cannot write '" + cfg.output_path + "'");
    f << text;
  }

  if (cfg.no_stats) return 0;
  nlohmann::json sidecar;
  try {
    DtmcStats before = stats(build_dtmc(p, cfg.max_states));
    DtmcStats after = stats(build_dtmc(red.program, cfg.max_states));
    sidecar = {{"states", after.states},
               {"transitions", after.transitions},
               {"deadlocks", after.deadlocks},
               {"reduction",
                {{"pass", red.pass},
                 {"originalStates", before.states},
                 {"reducedStates", after.states},
                 {"factor", after.states == 0
                                ? 1.0
                                : static_cast<double>(before.states) /
                                      static_cast<double>(after.states)}}}};
  } catch (const ModelError& e) {
    sidecar = {{"error", e.what()}};
  }
  std::string side = cfg.sidecar_path;
  if (side.empty() && !cfg.output_path.empty() && cfg.output_path != "-") {
    side = cfg.output_path + ".stats.json";
  }
  if (side.empty()) {
    err << sidecar.dump(2) << "\n";
  } else {
    std::ofstream f(side, std::ios::binary);
    if (!f) throw PcfpError("cannot write '" + side + "'");
    f << sidecar.dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const CliConfig& cfg, const Program& p, std::ostream& out,
               std::ostream& err) {
  Reduction red = reduce_program(p, cfg, err);
  Dtmc da = build_dtmc(p, cfg.max_states);
  Dtmc db = build_dtmc(red.program, cfg.max_states);

  bool pass = true;
  nlohmann::json jlabels = nlohmann::json::array();
  if (p.labels.empty()) {
    err << "warning: no labels to verify; nothing to compare\n";
  }
  for (const auto& l : p.labels) {
    std::vector<Rational> va =
        bounded_reach_many(da, eval_on_states(p, da, l.expr), cfg.ks);
    std::vector<Rational> vb = bounded_reach_many(
        db, eval_on_states(red.program, db, l.expr), cfg.ks);
    nlohmann::json jchecks = nlohmann::json::array();
    for (std::size_t i = 0; i < cfg.ks.size(); ++i) {
      bool equal = va[i] == vb[i];
      if (!equal) pass = false;
      jchecks.push_back({{"k", cfg.ks[i]},
                         {"original", rational_to_string(va[i])},
                         {"reduced", rational_to_string(vb[i])},
                         {"equal", equal}});
      if (!cfg.json) {
        out << "label \"" << l.name << "\" k=" << cfg.ks[i] << ": "
            << rational_to_string(va[i]) << " vs "
            << rational_to_string(vb[i]) << (equal ? " (equal)" : " (DIFFER)")
            << "\n";
      }
    }
    jlabels.push_back({{"label", l.name}, {"checks", jchecks}});
  }

  bool bisim_ok = true;
  if (cfg.bisimulation) {
    std::vector<ExprPtr> labels;
    for (const auto& l : p.labels) labels.push_back(l.expr);
    bisim_ok = check_bisimilar(da, label_masks(p, da, labels), db,
                               label_masks(red.program, db, labels));
    if (!cfg.json) {
      out << "bisimulation: " << (bisim_ok ? "bisimilar" : "NOT bisimilar")
          << "\n";
    }
    if (!bisim_ok) pass = false;
  }

  if (cfg.json) {
    nlohmann::json j{{"pass", pass},
                     {"reduction", red.pass},
                     {"originalStates", da.states.size()},
                     {"reducedStates", db.states.size()},
                     {"labels", jlabels}};
    if (cfg.bisimulation) j["bisimilar"] = bisim_ok;
    out << j.dump(2) << "\n";
  } else {
    out << "states: " << da.states.size() << " -> " << db.states.size()
        << "\n";
    out << (pass ? "preservation holds" : "preservation VIOLATED") << "\n";
  }
  return pass ? 0 : 2;
}

int cmd_fuzz(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  CampaignParams params;
  parse_seed_range(cfg.seeds, params.seeds);
  std::string rest = cfg.passes;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    params.passes.push_back(parse_pass(rest.substr(0, comma)));
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
  }
  params.ks = cfg.ks;
  params.max_states = cfg.max_states;
  params.base.num_locations = cfg.gen_locations;
  params.base.num_vars = cfg.gen_vars;
  params.base.commands_per_location = cfg.gen_commands_per_location;
  params.base.max_branching = cfg.gen_max_branching;
  params.base.prob_denominator_bound = cfg.gen_prob_denominator_bound;

  CampaignReport report = run_campaign(params);
  nlohmann::json j = to_json(report);
  if (!cfg.report_path.empty()) {
    std::ofstream f(cfg.report_path, std::ios::binary);
    if (!f) throw PcfpError("cannot write '" + cfg.report_path + "'");
    f << j.dump(2) << "\n";
    out << report.cases.size() << " cases, " << report.failures
        << " failures; report written to " << cfg.report_path << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  if (report.failures != 0) {
    err << "error: " << report.failures << " failing cases\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(const CliConfig& cfg, std::istream& in, std::ostream& out,
        std::ostream& err) {
  try {
    if (cfg.subcommand == "fuzz") return cmd_fuzz(cfg, out, err);

    std::string text = read_input(cfg, in);
    Program p;
    try {
      p = parse(text, cfg.cf_var);
    } catch (const ParseError& e) {
      err << (cfg.input_path == "-" ? "<stdin>" : cfg.input_path) << ":"
          << e.span.line << ":" << e.span.column << ": error: " << e.what()
          << "\n";
      return 1;
    }

    if (cfg.subcommand == "parse") return cmd_parse(cfg, p, out);
    if (cfg.subcommand == "analyze") return cmd_analyze(cfg, p, out);
    if (cfg.subcommand == "stats") return cmd_stats(cfg, p, out);
    if (cfg.subcommand == "reduce") return cmd_reduce(cfg, p, out, err);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, p, out, err);
    throw PcfpError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const PcfpError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pcfp
