#include "mes/exact.hpp"

#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace mes {

namespace {

std::recursive_mutex& precision_mutex() {
    static std::recursive_mutex m;
    return m;
}

struct BernoulliCache {
    std::shared_mutex mutex;
    std::vector<Rational> values{Rational(1)};
};

BernoulliCache& bernoulli_cache() {
    static BernoulliCache cache;
    return cache;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned digits10) : lock_(precision_mutex()) {
    saved_ = Real::default_precision();
    Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real pow10(int e) {
    Real ten = 10;
    return pow(ten, e);
}

std::string to_decimal(const Real& x, unsigned digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational bernoulli(unsigned n) {
    auto& cache = bernoulli_cache();
    {
        std::shared_lock lock(cache.mutex);
        if (n < cache.values.size()) return cache.values[n];
    }
    std::unique_lock lock(cache.mutex);
    auto& b = cache.values;
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    while (b.size() <= n) {
        const unsigned m = static_cast<unsigned>(b.size());
        Rational s = 0;
        for (unsigned j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * b[j];
        Rational bm = -s / Rational(m + 1);
        bm.canonicalize();
        b.push_back(bm);
    }
    return b[n];
}

Rational zeta_even_closed_form(unsigned n) {
    if (n == 0) throw std::invalid_argument("zeta_even_closed_form: n must be >= 1");
    BigInt pow2 = 1;
    pow2 <<= 2 * n;
    Rational q = bernoulli(2 * n) * Rational(pow2) / Rational(2 * factorial(2 * n));
    q.canonicalize();
    return (n % 2 == 1) ? q : Rational(-q);
}

Real to_real(const BigInt& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real to_real(const Rational& q) { return to_real(BigInt(q.get_num())) / to_real(BigInt(q.get_den())); }

namespace {

BigInt floor_to_int(const Real& x) {
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDD);
    return z;
}

}  // namespace

std::optional<Rational> rationalize(const Real& x, const BigInt& max_denominator, unsigned digits) {
    if (digits <= 8) throw std::invalid_argument("rationalize: digits must exceed 8");
    PrecisionScope scope(digits + kGuardDigits);
    const Real tol = pow10(-static_cast<int>(digits - 8));
    BigInt h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    Real y = x;
    for (unsigned iter = 0; iter < 20 * digits + 20; ++iter) {
        BigInt a = floor_to_int(y);
        BigInt h = a * h_prev + h_prev2;
        BigInt k = a * k_prev + k_prev2;
        if (k > max_denominator) break;
        if (abs(x - to_real(h) / to_real(k)) < tol) {
            Rational q(h, k);
            q.canonicalize();
            return q;
        }
        Real frac = y - to_real(a);
        if (frac == 0) break;
        y = 1 / frac;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return std::nullopt;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    if (s.empty()) throw std::invalid_argument("empty rational");
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && i == 0);
        if (!ok) throw std::invalid_argument("malformed rational: " + s);
    }
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("malformed rational: " + s);
    q.canonicalize();
    return q;
}

}  // namespace mes
