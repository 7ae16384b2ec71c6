#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "mes/real.hpp"

namespace mes {

using BigInt = mpz_class;
using Rational = mpq_class;

// B_n with the convention t/(e^t - 1), so B_1 = -1/2.
Rational bernoulli(unsigned n);

// q with zeta(2n) = q * pi^(2n).
Rational zeta_even_closed_form(unsigned n);

// Continued-fraction convergent p/q with q <= max_denominator and
// |x - p/q| < 10^-(digits - 8). Nothing when no convergent qualifies.
std::optional<Rational> rationalize(const Real& x, const BigInt& max_denominator, unsigned digits);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

// "p/q" or "p"; parse accepts the same forms plus a leading sign.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

Real to_real(const Rational& q);
Real to_real(const BigInt& z);

}  // namespace mes
