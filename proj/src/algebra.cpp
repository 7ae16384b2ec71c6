#include "mes/algebra.hpp"

#include <functional>
#include <stdexcept>

namespace mes {

LinComb<LetterList> shuffle_letters(const LetterList& u, const LetterList& v) { return shuffle(u, v); }

namespace {

using Entries = std::vector<Entry>;

LinComb<Entries> stuffle_entries(const Entries& a, const Entries& b, std::map<std::pair<Entries, Entries>, LinComb<Entries>>& memo) {
    if (a.empty()) return LinComb<Entries>(b);
    if (b.empty()) return LinComb<Entries>(a);
    auto key = std::make_pair(a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    // Recurse on the outermost (last) entries.
    const Entry x = a.back(), y = b.back();
    const Entries a1(a.begin(), a.end() - 1), b1(b.begin(), b.end() - 1);
    LinComb<Entries> out;
    auto append = [&out](const LinComb<Entries>& lc, const Entry& e) {
        for (const auto& [w, c] : lc) {
            Entries v = w;
            v.push_back(e);
            out.add(v, c);
        }
    };
    append(stuffle_entries(a1, b, memo), x);
    append(stuffle_entries(a, b1, memo), y);
    append(stuffle_entries(a1, b1, memo), Entry{x.magnitude + y.magnitude, x.sign * y.sign});
    memo.emplace(key, out);
    return out;
}

}  // namespace

LinComb<SignedComposition> stuffle(const SignedComposition& a, const SignedComposition& b) {
    if (a.leading_zeros != 0 || b.leading_zeros != 0) throw std::invalid_argument("stuffle: leading zeros not allowed");
    std::map<std::pair<Entries, Entries>, LinComb<Entries>> memo;
    LinComb<SignedComposition> out;
    for (const auto& [e, c] : stuffle_entries(a.entries, b.entries, memo)) out.add(SignedComposition(e), c);
    return out;
}

LinComb<SignedComposition> stuffle(const LinComb<SignedComposition>& a, const LinComb<SignedComposition>& b) {
    LinComb<SignedComposition> out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.add(stuffle(x, y), cx * cy);
    return out;
}

LinComb<SignedComposition> expand_leading_zeros(int a, const SignedComposition& c) {
    const int total = a + c.leading_zeros;
    SignedComposition base(c.entries);
    if (total == 0) return LinComb<SignedComposition>(base);
    LinComb<SignedComposition> out;
    const std::size_t d = c.entries.size();
    if (d == 0) return out;  // I(0; 0^a; 1) = 0
    std::vector<int> parts(d, 0);
    const Rational sign = (total % 2 == 0) ? 1 : -1;
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
        if (j + 1 == d) {
            parts[j] = left;
            Rational coeff = sign;
            SignedComposition t = base;
            for (std::size_t k = 0; k < d; ++k) {
                const int s = base.entries[k].magnitude;
                coeff *= Rational(binomial(static_cast<unsigned>(s + parts[k] - 1), static_cast<unsigned>(parts[k])));
                t.entries[k].magnitude = s + parts[k];
            }
            out.add(t, coeff);
            return;
        }
        for (int i = 0; i <= left; ++i) {
            parts[j] = i;
            rec(j + 1, left - i);
        }
    };
    rec(0, total);
    return out;
}

LinComb<SignedComposition> expand_leading_zeros(const SignedComposition& c) { return expand_leading_zeros(0, c); }

namespace {

using WordPoly = TPolynomial<IIWord>;

IIWord word01(LetterList interior) { return IIWord{Letter::zero, std::move(interior), Letter::plus}; }

WordPoly regularize_interior(const LetterList& w, std::map<LetterList, WordPoly>& memo) {
    if (w.empty()) return WordPoly(LinComb<IIWord>(word01({})));
    if (auto it = memo.find(w); it != memo.end()) return it->second;

    WordPoly out;
    std::size_t b = 0;
    while (b < w.size() && w[w.size() - 1 - b] == Letter::plus) ++b;
    if (b > 0) {
        const LetterList u(w.begin(), w.end() - static_cast<std::ptrdiff_t>(b));
        if (u.empty()) {
            // R(1^b) = T^b / b!
            out.add(b, LinComb<IIWord>(word01({})), Rational(1, factorial(static_cast<unsigned>(b))));
        } else {
            // (u 1^{b-1}) sh 1 = b u1^b + sum_{i<|u|} ins(u, i, 1) 1^{b-1}
            LetterList shorter = w;
            shorter.pop_back();
            out = regularize_interior(shorter, memo).times_T();
            for (std::size_t i = 0; i < u.size(); ++i) {
                LetterList v = u;
                v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), Letter::plus);
                v.insert(v.end(), b - 1, Letter::plus);
                out.add(regularize_interior(v, memo), Rational(-1));
            }
            out *= Rational(1, static_cast<long>(b));
        }
    } else if (w.front() == Letter::zero) {
        const SignedComposition c = unrho(word01(w));
        LinComb<IIWord> expanded;
        for (const auto& [t, coeff] : expand_leading_zeros(c)) expanded.add(rho(t), coeff);
        out = WordPoly(expanded);
    } else {
        out = WordPoly(LinComb<IIWord>(word01(w)));
    }
    memo.emplace(w, out);
    return out;
}

}  // namespace

TPolynomial<IIWord> shuffle_regularize(const IIWord& w) {
    if (w.start != Letter::zero || w.end != Letter::plus) throw std::invalid_argument("shuffle_regularize: endpoints must be (0, 1)");
    std::map<LetterList, WordPoly> memo;
    return regularize_interior(w.interior, memo);
}

TPolynomial<SignedComposition> shuffle_regularize(const SignedComposition& c) {
    const auto p = shuffle_regularize(rho(c));
    TPolynomial<SignedComposition> out;
    for (std::size_t k = 0; k <= p.degree(); ++k) {
        LinComb<SignedComposition> lc;
        for (const auto& [w, coeff] : p.coeff(k)) lc.add(unrho(w), coeff);
        out.add(k, lc);
    }
    return out;
}

namespace {

using CompPoly = TPolynomial<SignedComposition>;

CompPoly stuffle_reg(const Entries& e, std::map<Entries, CompPoly>& memo) {
    auto is_one = [](const Entry& x) { return x.magnitude == 1 && x.sign == 1; };
    std::size_t b = 0;
    while (b < e.size() && is_one(e[e.size() - 1 - b])) ++b;
    if (b == 0) return CompPoly(LinComb<SignedComposition>(SignedComposition(e)));
    if (auto it = memo.find(e); it != memo.end()) return it->second;

    const Entries u(e.begin(), e.end() - static_cast<std::ptrdiff_t>(b));
    const Entries ones(b - 1, Entry{1, 1});
    auto with_tail = [&](Entries head) {
        head.insert(head.end(), ones.begin(), ones.end());
        return head;
    };
    // (u 1^{b-1}) * (1) = b u1^b + insertions into u + merges with every entry.
    Entries shorter = e;
    shorter.pop_back();
    CompPoly out = stuffle_reg(shorter, memo).times_T();
    for (std::size_t i = 0; i < u.size(); ++i) {
        Entries v = u;
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), Entry{1, 1});
        out.add(stuffle_reg(with_tail(v), memo), Rational(-1));
    }
    for (std::size_t j = 0; j < u.size(); ++j) {
        Entries v = u;
        v[j].magnitude += 1;
        out.add(stuffle_reg(with_tail(v), memo), Rational(-1));
    }
    for (std::size_t k = 0; k + 1 < b; ++k) {
        Entries v = u;
        v.insert(v.end(), k, Entry{1, 1});
        v.push_back(Entry{2, 1});
        v.insert(v.end(), b - 2 - k, Entry{1, 1});
        out.add(stuffle_reg(v, memo), Rational(-1));
    }
    out *= Rational(1, static_cast<long>(b));
    memo.emplace(e, out);
    return out;
}

}  // namespace

TPolynomial<SignedComposition> stuffle_regularize(const SignedComposition& c) {
    if (c.leading_zeros != 0) throw std::invalid_argument("stuffle_regularize: leading zeros not allowed");
    std::map<Entries, CompPoly> memo;
    return stuffle_reg(c.entries, memo);
}

}  // namespace mes
