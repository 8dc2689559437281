#include <fstream>
#include <sstream>

#include "doctest.h"
#include "paper_programs.hpp"
#include "pcfp/parser.hpp"
#include "pcfp/printer.hpp"
#include "pcfp/program.hpp"

using namespace pcfp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("bsp parses to the expected structure") {
  Program p = parse(fixtures::kBsp);
  CHECK(p.module_name == "bsp");
  CHECK(p.cf_var == "cf");
  CHECK(p.cf_hi == 3);
  REQUIRE(p.decls.size() == 2);
  CHECK(p.decls[0].name == "x");
  CHECK(p.decls[0].init == 1);
  REQUIRE(p.commands.size() == 4);
  CHECK(p.commands[0].location == 0);
  CHECK(p.commands[1].location == 1);
  CHECK(p.commands[1].updates.size() == 2);
  CHECK(p.commands[1].updates[0].cf_target == 2);
  CHECK(p.commands[1].updates[1].cf_target == 3);
  CHECK(p.commands[2].guard->kind == ExprKind::BoolLit);
  REQUIRE(p.labels.size() == 1);
  CHECK(p.labels[0].name == "fail");
  CHECK(well_formed(p).empty());

  // probabilities fold to exact rationals
  CHECK(p.commands[3].updates[0].prob->kind == ExprKind::ProbLit);
  CHECK(p.commands[3].updates[0].prob->prob_value == make_rational(3, 10));
}

TEST_CASE("models/ files stay in sync with the embedded fixtures") {
  CHECK(structurally_equal(parse(slurp(PCFP_MODELS_DIR "/bsp.pm")),
                           parse(fixtures::kBsp)));
  CHECK(structurally_equal(parse(slurp(PCFP_MODELS_DIR "/bsp_rvo.pm")),
                           parse(fixtures::kBspRvoByHand)));
  CHECK(structurally_equal(parse(slurp(PCFP_MODELS_DIR "/bsp_rao.pm")),
                           parse(fixtures::kBspRaoByHand)));
}

TEST_CASE("round trip on the fixture programs") {
  for (const char* src :
       {fixtures::kBsp, fixtures::kBspRvoByHand, fixtures::kBspRaoByHand}) {
    Program p = parse(src);
    Program q = parse(print(p));
    CHECK(structurally_equal(p, q));
    // printing is deterministic
    CHECK(print(p) == print(q));
  }
}

TEST_CASE("guard shapes survive the round trip") {
  const char* src = R"(dtmc
module m
  cf : [0..1] init 0;
  x : [0..2] init 0;
  y : [-1..1] init 0;
  [] cf=0 & (x=1 | x=2) & !(y=0) -> 1:(cf'=1);
  [] x<=1 & cf=1 & y>=-1+x*2 -> 0.5:(cf'=0)&(x'=x+1) + 1/2:(cf'=1)&(y'=0-1);
endmodule
label "odd" = x=1 | (x=2 & cf=1);
)";
  Program p = parse(src);
  CHECK(p.commands[0].location == 0);
  CHECK(p.commands[1].location == 1);  // cf conjunct not first
  Program q = parse(print(p));
  CHECK(structurally_equal(p, q));
}

TEST_CASE("parse errors carry positions") {
  auto expect_error = [](const char* src, const char* needle) {
    try {
      parse(src);
      FAIL_CHECK("expected a parse error for: " << needle);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      CHECK(e.span.line >= 1);
      CHECK(e.span.column >= 1);
    }
  };

  expect_error("dtmc\nmodule m\n  cf : [0..1] init 0;\n"
               "  [] x=0 -> 1:(x'=1);\nendmodule\n",
               "unknown variable");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n  x : [0..1] init 0;\n"
      "  [] x=0 -> 1:(cf'=1)&(x'=1);\nendmodule\n",
      "non-control-flow command");
  expect_error("dtmc\nmodule m\n  cf : [0..1] init 0;\nendmodule\n",
               "no command at location 0");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n  x : [0..1] init 0;\n"
      "  [] cf=0 -> 1:(cf'=x)&(x'=1);\nendmodule\n",
      "non-literal control-flow target");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n"
      "  [] cf=0 -> 1:(cf'=5);\nendmodule\n",
      "outside the domain");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n  x : [0..1] init 0;\n"
      "  [] cf=0 & cf=1 -> 1:(cf'=0);\nendmodule\n",
      "multiple control-flow conjuncts");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n  x : [0..1] init 0;\n"
      "  [] cf=0 -> 1:(cf'=0)&(x'=1)&(x'=0);\nendmodule\n",
      "updated more than once");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n  x : [0..3] init 2;\n"
      "  [] cf=0 -> x:(cf'=0);\nendmodule\n",
      "decimal literal or a ratio");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n"
      "  [] cf=0 -> 1:(cf'=0) endmodule\n",
      "';'");
  expect_error("dtmc\nmodule m\n  x : [0..1] init 0;\nendmodule\n",
               "control-flow variable 'cf' is not declared");
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n"
      "  [] cf=0 -> 1:(cf'=0/0);\nendmodule\n",
      "')'");  // '/' is not an operator outside probability position
  expect_error(
      "dtmc\nmodule m\n  cf : [0..1] init 0;\n"
      "  [] cf=0 -> 1/0:(cf'=0);\nendmodule\n",
      "zero denominator");
}

TEST_CASE("error positions point at the offending token") {
  try {
    parse("dtmc\nmodule m\n  cf : [0..1] init 0;\n  [] cf=0 & zz=1 -> "
          "1:(cf'=0);\nendmodule\n");
    FAIL_CHECK("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 4);
    CHECK(e.span.column == 13);
  }
}

TEST_CASE("CRLF input is accepted, LF is emitted") {
  std::string src = fixtures::kBsp;
  std::string crlf;
  for (char c : src) {
    if (c == '\n') crlf += "\r\n";
    else crlf += c;
  }
  Program p = parse(crlf);
  CHECK(structurally_equal(p, parse(fixtures::kBsp)));
  CHECK(print(p).find('\r') == std::string::npos);
}

TEST_CASE("custom control-flow variable name") {
  const char* src = R"(dtmc
module m
  pc : [0..1] init 0;
  x : [0..1] init 1;
  [] pc=0 & x=1 -> 1:(pc'=1)&(x'=0);
  [] pc=1 -> 1:(pc'=0)&(x'=1);
endmodule
)";
  Program p = parse(src, "pc");
  CHECK(p.cf_var == "pc");
  CHECK(p.commands[0].location == 0);
  Program q = parse(print(p), "pc");
  CHECK(structurally_equal(p, q));
}

TEST_CASE("locations and targets are taken verbatim") {
  // location numbering need not be dense or ordered
  const char* src = R"(dtmc
module m
  cf : [0..7] init 0;
  [] cf=0 -> 1:(cf'=5);
  [] cf=5 -> 0.25:(cf'=0) + 0.75:(cf'=7);
endmodule
)";
  Program p = parse(src);
  CHECK(p.commands[0].location == 0);
  CHECK(p.commands[0].updates[0].cf_target == 5);
  CHECK(p.commands[1].updates[1].cf_target == 7);
}
