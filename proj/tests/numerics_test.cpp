#include <doctest.h>

#include <cmath>
#include <random>

#include "mes/numerics.hpp"

using namespace mes;

namespace {

// Nested partial sums over 0 < k_1 < ... < k_d <= n, innermost entry first.
long double truncated_series(const SignedComposition& c, long n) {
    const std::size_t d = c.entries.size();
    std::vector<long double> below(d + 1, 0.0L);
    below[0] = 1.0L;
    for (long k = 1; k <= n; ++k) {
        for (std::size_t j = d; j >= 1; --j) {
            const auto& e = c.entries[j - 1];
            long double term = std::pow(static_cast<long double>(k), -e.magnitude);
            if (e.sign < 0 && k % 2) term = -term;
            below[j] += term * below[j - 1];
        }
    }
    return below[d];
}

// Richardson step removes the 1/n tail of a non-alternating outer sum.
long double series_oracle(const SignedComposition& c) {
    const long n = 400000;
    if (c.entries.back().sign < 0) return (truncated_series(c, n) + truncated_series(c, n + 1)) / 2;
    return 2 * truncated_series(c, 2 * n) - truncated_series(c, n);
}

bool close(const Real& a, const Real& b, const char* tol) { return abs(a - b) < Real(tol); }

}  // namespace

TEST_CASE("classical values") {
    PrecisionScope scope(70);
    const Real pi = pi_value(60);
    CHECK(close(eval_composition(parse_composition("2"), 60).value, pi * pi / 6, "1e-58"));
    CHECK(close(eval_composition(parse_composition("b2"), 60).value, -pi * pi / 12, "1e-58"));
    const Real z3 = eval_composition(parse_composition("3"), 60).value;
    CHECK(close(z3, Real("1.2020569031595942853997381615114499907649862923404988817922"), "1e-55"));
    CHECK(close(eval_composition(parse_composition("1,b2"), 60).value, z3 / 8, "1e-58"));
    CHECK(close(eval_composition(parse_composition("b2,3"), 60).value, Real("-0.18615775"), "1e-8"));
    CHECK(close(eval_composition(parse_composition("b1"), 60).value, -log(Real(2)), "1e-58"));
    CHECK(close(zeta_even_value(2, 60), pow(pi, 4) / 90, "1e-58"));
}

TEST_CASE("values agree with the truncated series") {
    for (const char* text : {"3", "b3", "2,3", "3,2", "b2,3", "3,b2", "1,b2", "b1,b2", "1,1,3", "b2,b2", "2,b1,3", "b3,b3"}) {
        const SignedComposition c = parse_composition(text);
        const MPReal v = eval_composition(c, 30);
        const double got = static_cast<double>(v.value);
        CHECK_MESSAGE(std::abs(got - static_cast<double>(series_oracle(c))) < 1e-6, text);
    }
}

TEST_CASE("leading zeros") {
    CHECK_THROWS_AS(eval_word(rho(parse_composition("a1;b2,3")), 30), DivergentWord);
    PrecisionScope scope(50);
    const auto z = [](const char* t) { return eval_composition(parse_composition(t), 40).value; };
    // Shuffling a leading 0 into the word moves one unit onto each entry.
    CHECK(close(z("a1;b2"), -2 * z("b3"), "1e-38"));
    CHECK(close(z("a1;3"), -3 * z("4"), "1e-38"));
    CHECK(close(z("a1;b2,3"), -(2 * z("b3,3") + 3 * z("b2,4")), "1e-38"));
    CHECK(close(z("a2;3"), 6 * z("5"), "1e-38"));
}

TEST_CASE("raising the precision stays inside the error bound") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> mag(1, 3), coin(0, 1);
    for (int i = 0; i < 40; ++i) {
        SignedComposition c;
        while (c.weight() < 3 || (coin(rng) && c.weight() < 8)) c.entries.push_back({mag(rng), coin(rng) ? 1 : -1});
        if (!c.convergent()) c.entries.back().magnitude = 2;
        const MPReal lo = eval_composition(c, 40);
        const MPReal hi = eval_composition(c, 80);
        PrecisionScope scope(90);
        CHECK_MESSAGE(abs(lo.value - hi.value) <= lo.error_bound + hi.error_bound + pow10(-40), format_composition(c));
        CHECK(lo.error_bound < pow10(-39));
    }
}

TEST_CASE("regularized values") {
    CHECK_THROWS_AS(eval_regularized(parse_composition("1"), Regularization::none, 30), DivergentWord);
    CHECK_THROWS_AS(eval_composition(parse_composition("1"), 30), DivergentWord);
    PrecisionScope scope(50);
    CHECK(abs(eval_regularized(parse_composition("1"), Regularization::shuffle, 40).value) < pow10(-38));
    CHECK(abs(eval_regularized(parse_composition("1"), Regularization::stuffle, 40).value) < pow10(-38));
    LinComb<SignedComposition> tail;
    tail.add(parse_composition("1,3"), -2);
    tail.add(parse_composition("2,2"), -1);
    CHECK(close(eval_regularized(parse_composition("3,1"), Regularization::shuffle, 40).value, eval_lincomb(tail, 40).value, "1e-38"));
    const SignedComposition conv = parse_composition("b2,3");
    for (auto kind : {Regularization::none, Regularization::shuffle, Regularization::stuffle})
        CHECK(close(eval_regularized(conv, kind, 40).value, eval_composition(conv, 40).value, "1e-38"));
    CHECK(parse_regularization("stuffle") == Regularization::stuffle);
    CHECK(to_string(Regularization::shuffle) == "shuffle");
}

TEST_CASE("closed-form constants") {
    CHECK(prop22_c(1, 1).c == Rational(-1, 2));
    CHECK(prop22_c(1, 2).c == Rational(-3, 16));
    CHECK(prop22_c(1, 3).c == Rational(3, 128));
    CHECK(prop22_c(2, 1).c == Rational(-7, 8));
    CHECK(prop22_c(2, 2).c == Rational(-41, 768));
    const Prop22Result r = prop22_c(1, 4);
    PrecisionScope scope(70);
    CHECK(r.cross_check < pow10(-40));
    CHECK(r.imag_residual < pow10(-40));
}

TEST_CASE("repeated 3bar is finite") {
    const MPReal v = eval_composition(parse_composition("b3,b3"), 40);
    PrecisionScope scope(50);
    CHECK(abs(v.value) < Real(1));
    CHECK(abs(v.value) > Real("0.01"));
}
