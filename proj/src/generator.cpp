#include "pcfp/generator.hpp"

#include <random>
#include <vector>

#include "pcfp/errors.hpp"

namespace pcfp {

namespace {

// mt19937_64 output is standardized; raw modulo keeps corpora
// reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(n));
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + below(hi - lo + 1);
  }
  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

Program generate(const GenParams& params) {
  if (params.num_locations < 1 || params.num_vars < 1 ||
      params.commands_per_location < 1 || params.max_branching < 1 ||
      params.prob_denominator_bound < 1) {
    throw PcfpError("generator parameters must be positive");
  }
  Rng rng(params.seed);

  Program p;
  p.module_name = "gen" + std::to_string(params.seed);
  p.cf_lo = 0;
  p.cf_hi = params.num_locations - 1;

  for (int i = 0; i < params.num_vars; ++i) {
    std::int64_t hi = rng.range(1, 2);
    p.decls.push_back(
        {"v" + std::to_string(i), 0, hi, rng.range(0, hi)});
  }
  p.decls.push_back({"junk", 0, 1, 0});     // written, never read
  p.decls.push_back({"flag", 0, 1, 0});     // failure flag, label variable
  p.labels.push_back(
      {"fail", Expr::eq(Expr::var_ref("flag"), Expr::int_lit(1))});

  // v0 is write-dominated: most commands write it in every update.
  const std::string dominated = "v0";

  for (std::int64_t loc = 0; loc < params.num_locations; ++loc) {
    for (int rep = 0; rep < params.commands_per_location; ++rep) {
      Command cmd;
      cmd.id = static_cast<int>(p.commands.size());
      cmd.location = loc;

      // Guard: conjunction of equality pins over a few variables. Values
      // are biased toward the initial values to keep enabledness dense;
      // pins also license the in-range copies/increments below.
      std::vector<std::pair<std::string, std::int64_t>> pinned;
      ExprPtr guard = Expr::bool_lit(true);
      for (int i = 0; i < params.num_vars; ++i) {
        if (!rng.chance(40) || pinned.size() >= 2) continue;
        const VarDecl& d = p.decls[i];
        std::int64_t v = rng.chance(60) ? d.init : rng.range(d.lo, d.hi);
        pinned.emplace_back(d.name, v);
        ExprPtr pin = Expr::eq(Expr::var_ref(d.name), Expr::int_lit(v));
        guard = guard->kind == ExprKind::BoolLit ? pin
                                                 : Expr::land(guard, pin);
      }
      cmd.guard = guard;

      int branches = static_cast<int>(rng.range(1, params.max_branching));
      std::vector<ExprPtr> probs;
      if (branches == 1) {
        probs.push_back(Expr::prob_lit(make_rational(1)));
      } else if (!pinned.empty() && branches == 2 && rng.chance(25)) {
        // Variable-dependent pair q/d, (d-q)/d; the guard pins q.
        const auto& [name, value] = pinned[rng.below(pinned.size())];
        std::int64_t den = value + rng.range(1, 3);
        probs.push_back(
            Expr::ratio(Expr::var_ref(name), Expr::int_lit(den)));
        probs.push_back(Expr::ratio(
            Expr::sub(Expr::int_lit(den), Expr::var_ref(name)),
            Expr::int_lit(den)));
      } else {
        // Composition of a small denominator into positive weights.
        std::int64_t den =
            rng.range(branches, std::max<std::int64_t>(
                                    branches, params.prob_denominator_bound));
        std::vector<std::int64_t> weights(branches, 1);
        for (std::int64_t left = den - branches; left > 0; --left) {
          ++weights[rng.below(branches)];
        }
        for (std::int64_t w : weights) {
          probs.push_back(Expr::prob_lit(make_rational(w, den)));
        }
      }

      bool write_dominated_here = rng.chance(60);
      for (int br = 0; br < branches; ++br) {
        StochUpdate u;
        u.prob = probs[br];
        u.cf_target = rng.below(params.num_locations);

        for (int i = 0; i < params.num_vars; ++i) {
          const VarDecl& d = p.decls[i];
          bool is_dominated = d.name == dominated;
          if (is_dominated ? !write_dominated_here : !rng.chance(40)) {
            continue;
          }
          ExprPtr rhs;
          if (!pinned.empty() && rng.chance(40)) {
            const auto& [src, value] = pinned[rng.below(pinned.size())];
            if (value + 1 <= d.hi && rng.chance(50)) {
              rhs = Expr::add(Expr::var_ref(src), Expr::int_lit(1));
            } else if (value >= d.lo && value <= d.hi) {
              rhs = Expr::var_ref(src);
            }
          }
          if (!rhs) rhs = Expr::int_lit(rng.range(d.lo, d.hi));
          u.assigns.push_back({d.name, std::move(rhs)});
        }
        if (rng.chance(40)) {
          u.assigns.push_back({"junk", Expr::int_lit(rng.range(0, 1))});
        }
        if (rng.chance(15)) {
          u.assigns.push_back({"flag", Expr::int_lit(1)});
        }
        cmd.updates.push_back(std::move(u));
      }
      p.commands.push_back(std::move(cmd));
    }
  }
  return p;
}

}  // namespace pcfp
