#pragma once

#include <string_view>

#include "pcfp/errors.hpp"
#include "pcfp/program.hpp"

namespace pcfp {

// Parses the PRISM-subset model format:
//
//   dtmc
//   module <name>
//     <var> : [<lo>..<hi>] init <v>;    // declarations first; one must
//                                       // declare the control-flow variable
//     [] cf=<int> & <guard> -> <p>:(cf'=<int>)&(x'=<expr>)&... + ...;
//   endmodule
//   label "<name>" = <boolExpr>;
//
// Guards must carry a top-level conjunct `<cf_var>=<int>` (stripped into
// Command::location); every update must assign a literal location to the
// control-flow variable (stripped into StochUpdate::cf_target).
// `//` line comments, LF or CRLF. Throws ParseError with a SourceSpan on
// any rejection; on success well_formed(result) is empty.
Program parse(std::string_view text, std::string_view cf_var_name = "cf");

}  // namespace pcfp
