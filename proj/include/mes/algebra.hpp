#pragma once

#include <map>
#include <vector>

#include "mes/exact.hpp"
#include "mes/words.hpp"

namespace mes {

// Finite Q-linear combination; zero coefficients are never stored.
template <class T>
class LinComb {
public:
    using Map = std::map<T, Rational>;

    LinComb() = default;
    explicit LinComb(const T& t, const Rational& c = 1) { add(t, c); }

    void add(const T& t, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add(const LinComb& o, const Rational& scale = 1) {
        for (const auto& [t, c] : o.terms_) add(t, c * scale);
    }

    LinComb& operator+=(const LinComb& o) {
        add(o);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        add(o, Rational(-1));
        return *this;
    }
    LinComb& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& kv : terms_) kv.second *= s;
        }
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }

    Rational coeff(const T& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    const Map& terms() const { return terms_; }

    bool operator==(const LinComb& o) const { return terms_ == o.terms_; }
    bool operator<(const LinComb& o) const { return terms_ < o.terms_; }

private:
    Map terms_;
};

// Polynomial in the regularization variable T with LinComb coefficients.
template <class T>
class TPolynomial {
public:
    TPolynomial() = default;
    explicit TPolynomial(LinComb<T> constant) {
        coeffs_.push_back(std::move(constant));
        trim();
    }

    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    LinComb<T> coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : LinComb<T>{}; }
    LinComb<T> constant_term() const { return coeff(0); }

    void add(std::size_t k, const LinComb<T>& c, const Rational& scale = 1) {
        if (coeffs_.size() <= k) coeffs_.resize(k + 1);
        coeffs_[k].add(c, scale);
        trim();
    }
    void add(const TPolynomial& o, const Rational& scale = 1) {
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) add(k, o.coeffs_[k], scale);
    }
    TPolynomial times_T() const {
        TPolynomial r;
        if (coeffs_.empty()) return r;
        r.coeffs_.push_back({});
        r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
        return r;
    }
    TPolynomial& operator*=(const Rational& s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }
    bool operator==(const TPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<LinComb<T>> coeffs_;
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().empty()) coeffs_.pop_back();
    }
};

template <class X>
LinComb<std::vector<X>> shuffle(const std::vector<X>& u, const std::vector<X>& v);

LinComb<LetterList> shuffle_letters(const LetterList& u, const LetterList& v);

// Quasi-shuffle; merged entries are (s + s', eps * eps').
LinComb<SignedComposition> stuffle(const SignedComposition& a, const SignedComposition& b);
LinComb<SignedComposition> stuffle(const LinComb<SignedComposition>& a, const LinComb<SignedComposition>& b);

// Shuffle regularization of a (0, 1) word with I(0;1;1) = T and I(0;0;1) = 0.
// Coefficients are convergent (0, 1) words; the empty word stands for 1.
TPolynomial<IIWord> shuffle_regularize(const IIWord& w);

// Same, returned in composition form (every composition convergent, a = 0).
TPolynomial<SignedComposition> shuffle_regularize(const SignedComposition& c);

// Quasi-shuffle regularization with zeta_*(1) = T. Requires a = 0.
TPolynomial<SignedComposition> stuffle_regularize(const SignedComposition& c);

// zeta_a(s; eps) = (-1)^a sum_{|i| = a} prod C(s_j + i_j - 1, i_j) zeta(s + i; eps).
LinComb<SignedComposition> expand_leading_zeros(int a, const SignedComposition& c);

// Applies expand_leading_zeros to the composition's own leading-zero count.
LinComb<SignedComposition> expand_leading_zeros(const SignedComposition& c);

// ---- template implementation ----

template <class X>
LinComb<std::vector<X>> shuffle(const std::vector<X>& u, const std::vector<X>& v) {
    // Dynamic programming over prefixes: table[i][j] = u[0..i) sh v[0..j).
    using Word = std::vector<X>;
    std::vector<std::vector<LinComb<Word>>> table(u.size() + 1, std::vector<LinComb<Word>>(v.size() + 1));
    table[0][0].add(Word{}, 1);
    for (std::size_t i = 0; i <= u.size(); ++i) {
        for (std::size_t j = 0; j <= v.size(); ++j) {
            if (i == 0 && j == 0) continue;
            LinComb<Word>& cell = table[i][j];
            if (i > 0) {
                for (const auto& [w, c] : table[i - 1][j]) {
                    Word x = w;
                    x.push_back(u[i - 1]);
                    cell.add(x, c);
                }
            }
            if (j > 0) {
                for (const auto& [w, c] : table[i][j - 1]) {
                    Word x = w;
                    x.push_back(v[j - 1]);
                    cell.add(x, c);
                }
            }
        }
    }
    return table[u.size()][v.size()];
}

}  // namespace mes
