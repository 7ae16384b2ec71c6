#include "mes/numerics.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <map>
#include <mutex>

#include "mes/exact.hpp"

namespace mes {

namespace {

unsigned work_digits(unsigned digits) { return digits + kGuardDigits; }

// Series length so that 3 (w + 1) 2^-N stays below 10^-(digits + guard).
long series_terms(unsigned digits, std::size_t weight) {
    const double bits = std::ceil(work_digits(digits) * std::log2(10.0));
    return static_cast<long>(bits + std::ceil(std::log2(2.0 * static_cast<double>(weight + 1))) + 2);
}

// Scaled power-series coefficients c_m x^m of I(0; letters; x) at x = 1/2,
// letters drawn from {0, 1, -1, 2}. Feeding one letter at a time integrates
// f(t) dt / (t - b); for b != 0 every coefficient stays bounded by 1 in
// absolute value, hence the 2^-N tail.
class HalfSeries {
public:
    explicit HalfSeries(long n) : coef_(static_cast<std::size_t>(n) + 1, Real(0)) { coef_[0] = 1; }

    void push(int b) {
        const std::size_t n = coef_.size() - 1;
        std::vector<Real> next(coef_.size(), Real(0));
        if (b == 0) {
            if (coef_[0] != 0) throw DivergentWord("series letter 0 at the base point");
            for (std::size_t m = 1; m <= n; ++m) next[m] = coef_[m] / static_cast<long>(m);
        } else {
            // q = x / b with x = 1/2
            const int shift = (b == 2 || b == -2) ? 2 : 1;
            const bool negative = b < 0;
            Real g = 0;
            for (std::size_t m = 0; m < n; ++m) {
                g = ldexp(g, -shift);
                if (negative) g = -g;
                g += coef_[m];
                Real d = ldexp(g, -shift);
                if (!negative) d = -d;
                next[m + 1] = d / static_cast<long>(m + 1);
            }
        }
        coef_.swap(next);
    }

    Real sum() const {
        Real s = 0;
        for (const Real& c : coef_) s += c;
        return s;
    }

private:
    std::vector<Real> coef_;
};

// I(0; a; 1) for a convergent letter list.
MPReal eval_01(const LetterList& a, unsigned digits) {
    const std::size_t w = a.size();
    if (w == 0) return {Real(1), Real(0), digits};
    if (a.front() == Letter::zero || a.back() == Letter::plus)
        throw DivergentWord("divergent word: interior must not start with 0 or end with 1");

    PrecisionScope scope(work_digits(digits));
    const long n = series_terms(digits, w);

    std::vector<Real> F(w + 1), G(w + 1);
    HalfSeries prefix(n);
    F[0] = 1;
    for (std::size_t i = 0; i < w; ++i) {
        prefix.push(value(a[i]));
        F[i + 1] = prefix.sum();
    }
    // I(1/2; a_{i+1..w}; 1) = (-1)^(w-i) I(0; 1 - a_w, ..., 1 - a_{i+1}; 1/2)
    HalfSeries suffix(n);
    G[w] = 1;
    for (std::size_t k = 0; k < w; ++k) {
        suffix.push(1 - value(a[w - 1 - k]));
        G[w - 1 - k] = (k % 2 == 0) ? Real(-suffix.sum()) : suffix.sum();
    }
    Real total = 0;
    for (std::size_t i = 0; i <= w; ++i) total += F[i] * G[i];

    MPReal out;
    out.value = total;
    out.error_bound = ldexp(Real(3 * static_cast<long>(w + 1)), static_cast<int>(-n)) + pow10(-static_cast<int>(digits + kGuardDigits / 2));
    out.digits = digits;
    return out;
}

MPReal negate_value(MPReal v) {
    v.value = -v.value;
    return v;
}

struct EvalCache {
    std::mutex mutex;
    std::map<std::pair<SignedComposition, unsigned>, MPReal> values;
};

EvalCache& eval_cache() {
    static EvalCache cache;
    return cache;
}

}  // namespace

MPReal eval_word(const IIWord& input, unsigned digits) {
    const std::size_t n = input.weight();
    if (n == 0) return {Real(1), Real(0), digits};
    if (input.start == input.end) return {Real(0), Real(0), digits};
    IIWord w = input;
    bool flip = false;
    if (w.end == Letter::zero) {
        w = reversed(w);
        flip = (n % 2 == 1);
    }
    if (w.end == Letter::minus) w = negated(w);  // t -> -t
    if (w.start == Letter::zero) {
        MPReal v = eval_01(w.interior, digits);
        return flip ? negate_value(v) : v;
    }
    // (-1, 1): compose paths at 0; every piece has to converge on its own.
    PrecisionScope scope(work_digits(digits));
    MPReal total{Real(0), Real(0), digits};
    for (std::size_t i = 0; i <= n; ++i) {
        const IIWord left{Letter::minus, LetterList(w.interior.begin(), w.interior.begin() + static_cast<std::ptrdiff_t>(i)), Letter::zero};
        const IIWord right{Letter::zero, LetterList(w.interior.begin() + static_cast<std::ptrdiff_t>(i), w.interior.end()), Letter::plus};
        const MPReal l = eval_word(left, digits);
        const MPReal r = eval_word(right, digits);
        total.value += l.value * r.value;
        total.error_bound += abs(l.value) * r.error_bound + abs(r.value) * l.error_bound + l.error_bound * r.error_bound;
    }
    return flip ? negate_value(total) : total;
}

MPReal eval_composition(const SignedComposition& c, unsigned digits) {
    if (c.leading_zeros > 0) {
        if (!SignedComposition(c.entries).convergent()) throw DivergentWord("divergent composition: " + format_composition(c));
        return eval_lincomb(expand_leading_zeros(c), digits);
    }
    if (!c.convergent()) throw DivergentWord("divergent composition: " + format_composition(c));
    auto& cache = eval_cache();
    {
        std::lock_guard lock(cache.mutex);
        if (auto it = cache.values.find({c, digits}); it != cache.values.end()) return it->second;
    }
    MPReal v = eval_word(rho(c), digits);
    if (period_sign(c) < 0) v.value = -v.value;
    std::lock_guard lock(cache.mutex);
    cache.values.emplace(std::make_pair(c, digits), v);
    return v;
}

MPReal eval_lincomb(const LinComb<SignedComposition>& lc, unsigned digits) {
    PrecisionScope scope(work_digits(digits));
    MPReal total{Real(0), Real(0), digits};
    for (const auto& [c, q] : lc) {
        const MPReal v = eval_composition(c, digits);
        const Real rq = to_real(q);
        total.value += rq * v.value;
        total.error_bound += abs(rq) * v.error_bound;
    }
    return total;
}

Regularization parse_regularization(const std::string& s) {
    if (s == "none") return Regularization::none;
    if (s == "shuffle") return Regularization::shuffle;
    if (s == "stuffle") return Regularization::stuffle;
    throw std::invalid_argument("unknown regularization: " + s);
}

std::string to_string(Regularization r) {
    switch (r) {
        case Regularization::none: return "none";
        case Regularization::shuffle: return "shuffle";
        case Regularization::stuffle: return "stuffle";
    }
    return "none";
}

MPReal eval_regularized(const SignedComposition& c, Regularization kind, unsigned digits) {
    switch (kind) {
        case Regularization::none: return eval_composition(c, digits);
        case Regularization::shuffle: return eval_lincomb(shuffle_regularize(c).constant_term(), digits);
        case Regularization::stuffle: return eval_lincomb(stuffle_regularize(c).constant_term(), digits);
    }
    return eval_composition(c, digits);
}

Real pi_value(unsigned digits) {
    PrecisionScope scope(work_digits(digits));
    return boost::math::constants::pi<Real>();
}

Real zeta_even_value(unsigned n, unsigned digits) {
    PrecisionScope scope(work_digits(digits));
    return to_real(zeta_even_closed_form(n)) * pow(pi_value(digits), static_cast<int>(2 * n));
}

namespace {

struct Complex {
    Real re, im;
};

Complex operator*(const Complex& a, const Complex& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }

Complex cpow(Complex base, unsigned e) {
    Complex r{Real(1), Real(0)};
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

}  // namespace

Prop22Result prop22_c(int s, int d, unsigned digits, const BigInt& den_bound) {
    if (s < 1 || d < 1) throw std::invalid_argument("prop22_c requires s >= 1 and d >= 1");
    PrecisionScope scope(work_digits(digits) + 10);
    const Real pi = boost::math::constants::pi<Real>();
    const unsigned n_total = static_cast<unsigned>(s * d);
    const Real angle = pi / (2 * s);
    const Complex omega{cos(angle), sin(angle)};
    const Complex one{Real(1), Real(0)};
    const Complex A = one + omega;
    const Complex B{Real(1) - omega.re, -omega.im};

    // f_j(n) = ((1+w)^(2n+1) + (1-w)^(2n+1)) / (2 (2n+1)!) * exp(i pi (2j-1) n / s)
    std::vector<Complex> base(n_total + 1);
    for (unsigned n = 0; n <= n_total; ++n) {
        Complex t = cpow(A, 2 * n + 1) + cpow(B, 2 * n + 1);
        const Real den = 2 * to_real(factorial(2 * n + 1));
        base[n] = {t.re / den, t.im / den};
    }
    // Convolution over n_1 + ... + n_s = sd.
    std::vector<Complex> acc(n_total + 1, Complex{Real(0), Real(0)});
    acc[0] = one;
    for (int j = 1; j <= s; ++j) {
        std::vector<Complex> next(n_total + 1, Complex{Real(0), Real(0)});
        for (unsigned n = 0; n <= n_total; ++n) {
            const Real phase = pi * (2 * j - 1) * static_cast<long>(n) / s;
            const Complex f = base[n] * Complex{cos(phase), sin(phase)};
            for (unsigned k = 0; k + n <= n_total; ++k) next[k + n] = next[k + n] + acc[k] * f;
        }
        acc.swap(next);
    }
    BigInt pow16 = 1;
    pow16 <<= 4 * n_total;
    const Rational prefactor = Rational(-2 * factorial(2 * n_total)) / (Rational(pow16) * bernoulli(2 * n_total));
    const Real pre = to_real(prefactor);
    const Real re = pre * acc[n_total].re;
    const Real im = pre * acc[n_total].im;

    Prop22Result out;
    out.imag_residual = abs(im);
    if (out.imag_residual > pow10(-static_cast<int>(digits - 8)))
        throw NumericError("RationalizationFailed: imaginary part " + to_decimal(im, 10) + " does not vanish");
    auto q = rationalize(re, den_bound, digits);
    if (!q) throw NumericError("RationalizationFailed: real part " + to_decimal(re, 30) + " is not a small rational");
    out.c = *q;

    const MPReal lhs = eval_composition(SignedComposition(std::vector<Entry>(static_cast<std::size_t>(d), Entry{2 * s, -1})), digits);
    const Real ratio = lhs.value / zeta_even_value(n_total, digits);
    out.cross_check = abs(ratio - to_real(out.c));
    if (out.cross_check > pow10(-static_cast<int>(digits - 10)))
        throw NumericError("CrossCheckFailed: closed form gives " + to_string(out.c) + " but the numeric ratio is " + to_decimal(ratio, 30));
    return out;
}

}  // namespace mes
