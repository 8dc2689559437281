#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pcfp {

// Arbitrary-precision rational. All probability arithmetic in the toolkit
// is exact; floating point never enters a verdict.
using Rational = mpq_class;

// num/den, canonicalized. Throws EvalError when den == 0.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

// Exact value of "<int_part>.<frac_part>" as digits / 10^k.
Rational rational_from_decimal(const std::string& int_part,
                               const std::string& frac_part);

// Canonical rendering: plain integer, finite decimal when the denominator
// is of the form 2^a*5^b, otherwise "num/den".
std::string rational_to_string(const Rational& r);

}  // namespace pcfp
