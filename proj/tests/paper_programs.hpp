#pragma once

// Shared fixture programs used across the test suites: a four-location
// loop program (bsp) plus hand-reduced variants of it, kept in sync with
// models/*.pm by test_parser.cpp.

namespace fixtures {

inline constexpr const char* kBsp = R"(dtmc

module bsp
  cf : [0..3] init 0;
  x : [0..1] init 1;
  y : [0..1] init 1;

  [] cf=0 & x=1 -> 1:(cf'=1)&(x'=0);
  [] cf=1 & x=0 -> 0.5:(cf'=2)&(y'=0) + 0.5:(cf'=3)&(y'=0);
  [] cf=2 -> 1:(cf'=0)&(x'=1);
  [] cf=3 -> 0.3:(cf'=0)&(x'=0) + 0.7:(cf'=1)&(x'=0);
endmodule

label "fail" = cf=0 & x=0;
)";

// bsp with x reset to 1 where it is dead after the location-1 branch and
// y reset to 1 on the way back to location 0 (six reachable states).
inline constexpr const char* kBspRvoByHand = R"(dtmc

module bsp_rvo
  cf : [0..3] init 0;
  x : [0..1] init 1;
  y : [0..1] init 1;

  [] cf=0 & x=1 -> 1:(cf'=1)&(x'=0);
  [] cf=1 & x=0 -> 0.5:(cf'=2)&(x'=1)&(y'=0) + 0.5:(cf'=3)&(x'=1)&(y'=0);
  [] cf=2 -> 1:(cf'=0)&(x'=1)&(y'=1);
  [] cf=3 -> 0.3:(cf'=0)&(x'=0) + 0.7:(cf'=1)&(x'=0);
endmodule

label "fail" = cf=0 & x=0;
)";

// bsp with x and y merged into one variable (five reachable states).
inline constexpr const char* kBspRaoByHand = R"(dtmc

module bsp_rao
  cf : [0..3] init 0;
  xy : [0..1] init 1;

  [] cf=0 & xy=1 -> 1:(cf'=1)&(xy'=0);
  [] cf=1 & xy=0 -> 0.5:(cf'=2)&(xy'=0) + 0.5:(cf'=3)&(xy'=0);
  [] cf=2 -> 1:(cf'=0)&(xy'=1);
  [] cf=3 -> 0.3:(cf'=0)&(xy'=0) + 0.7:(cf'=1)&(xy'=0);
endmodule

label "fail" = cf=0 & xy=0;
)";

}  // namespace fixtures
