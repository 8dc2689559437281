#include "pcfp/rational.hpp"

#include <algorithm>

#include "pcfp/errors.hpp"

namespace pcfp {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw EvalError("zero denominator in rational");
  Rational r(mpz_class(static_cast<long>(num)),
             mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational rational_from_decimal(const std::string& int_part,
                               const std::string& frac_part) {
  mpz_class digits(int_part + frac_part, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
  Rational r(digits, den);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) {
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (den == 1) return num.get_str();

  mpz_class rest = den;
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) {
    rest /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.get_str() + "/" + den.get_str();

  // Finite decimal exists: scale to k = max(a, b) fractional digits.
  unsigned long k = std::max(twos, fives);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, k);
  mpz_class scaled = num * (p10 / den);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.get_str();
  if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
  s.insert(s.size() - k, ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return (neg ? "-" : "") + s;
}

}  // namespace pcfp
