#pragma once

#include <stdexcept>
#include <string>

#include "mes/algebra.hpp"
#include "mes/real.hpp"

namespace mes {

class DivergentWord : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value together with a proven bound on its truncation error.
struct MPReal {
    Real value;
    Real error_bound;
    unsigned digits = 0;  // requested accuracy

    std::string str(unsigned shown = 0) const { return to_decimal(value, shown ? shown : digits); }
};

inline constexpr unsigned kDefaultDigits = 60;

// Signed iterated integral over the given endpoints (no (-1)^depth factor).
MPReal eval_word(const IIWord& w, unsigned digits);

// Period of zeta_a(c): (-1)^depth times the integral of rho, leading zeros expanded first.
MPReal eval_composition(const SignedComposition& c, unsigned digits);

enum class Regularization { none, shuffle, stuffle };
Regularization parse_regularization(const std::string& s);
std::string to_string(Regularization r);

// T^0 part of the regularized value. `none` requires a convergent input.
MPReal eval_regularized(const SignedComposition& c, Regularization kind, unsigned digits);

MPReal eval_lincomb(const LinComb<SignedComposition>& lc, unsigned digits);

Real pi_value(unsigned digits);
Real zeta_even_value(unsigned n, unsigned digits);

struct Prop22Result {
    Rational c;
    Real imag_residual;   // |Im| of the closed form
    Real cross_check;     // |c - zeta({2s bar}_d) / zeta(2sd)|
};

// Closed-form constant for zeta({2s bar}_d) = c zeta(2sd). Throws NumericError
// with "RationalizationFailed" or "CrossCheckFailed" in the message.
Prop22Result prop22_c(int s, int d, unsigned digits = kDefaultDigits, const BigInt& den_bound = BigInt("1000000000000"));

}  // namespace mes
