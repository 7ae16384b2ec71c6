#include "mes/motivic.hpp"

#include <algorithm>
#include <sstream>

namespace mes {

namespace {

Rational parity_sign(std::size_t n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

bool all_same_in_01(const LetterList& v) {
    if (v.empty()) return false;
    const Letter a = v.front();
    if (a == Letter::minus) return false;
    return std::all_of(v.begin(), v.end(), [a](Letter x) { return x == a; });
}

}  // namespace

HCanonical canonicalize_H(const IIWord& input) {
    HCanonical out;
    if (input.interior.empty()) {
        out.kind = HCanonical::Kind::one;
        out.coeff = 1;
        return out;
    }
    if (input.start == input.end) return out;

    IIWord w = input;
    Rational coeff = 1;
    const std::size_t n = w.weight();
    if (w.end == Letter::zero) {
        w = reversed(w);
        coeff *= parity_sign(n);
    }
    if (w.end == Letter::minus) w = negated(w);

    if (w.start == Letter::zero) {
        if (all_same_in_01(w.interior)) return out;
    } else {
        // Endpoints (-1, 1): the reversal-homothety image is I(-1; -rev w; 1) * (-1)^n.
        IIWord image = negated(reversed(w));
        if (image == w) {
            if (n % 2 == 1) return out;
        } else if (image < w) {
            w = image;
            coeff *= parity_sign(n);
        }
    }
    out.kind = HCanonical::Kind::word;
    out.coeff = coeff;
    out.word = std::move(w);
    return out;
}

Rational weight1_class(Letter a, Letter b, Letter c) {
    auto s = [](Letter x, Letter y) { return std::abs(value(x) - value(y)) == 2 ? 1 : 0; };
    return Rational(s(c, b) - s(a, b));
}

IIWord log2_word() { return IIWord{Letter::zero, {Letter::minus}, Letter::plus}; }

LinComb<IIWord> canonicalize_L(const IIWord& w) {
    if (w.weight() == 0) throw DomainError("canonicalize_L: weight must be positive");
    if (w.weight() == 1) return LinComb<IIWord>(log2_word(), weight1_class(w.start, w.interior[0], w.end));
    const HCanonical h = canonicalize_H(w);
    if (h.is_zero()) return {};
    if (!h.unresolved()) return LinComb<IIWord>(h.word, h.coeff);
    // Path composition through 0; every middle split is a product and vanishes in L.
    LinComb<IIWord> out = canonicalize_L(IIWord{Letter::minus, h.word.interior, Letter::zero});
    out += canonicalize_L(IIWord{Letter::zero, h.word.interior, Letter::plus});
    out *= h.coeff;
    return out;
}

std::vector<RawCut> coaction_Dr(const IIWord& w, int r) {
    const int weight = static_cast<int>(w.weight());
    if (r < 1 || r % 2 == 0) throw DomainError("D_r requires odd r >= 1, got r = " + std::to_string(r));
    if (r >= weight) throw DomainError("D_r requires r < weight (r = " + std::to_string(r) + ", weight = " + std::to_string(weight) + ")");
    LetterList a;
    a.reserve(w.interior.size() + 2);
    a.push_back(w.start);
    a.insert(a.end(), w.interior.begin(), w.interior.end());
    a.push_back(w.end);

    std::vector<RawCut> cuts;
    const std::size_t R = static_cast<std::size_t>(r);
    for (std::size_t p = 0; p + R <= w.interior.size(); ++p) {
        RawCut cut;
        cut.p = p;
        cut.left.start = a[p];
        cut.left.interior.assign(a.begin() + static_cast<std::ptrdiff_t>(p + 1), a.begin() + static_cast<std::ptrdiff_t>(p + R + 1));
        cut.left.end = a[p + R + 1];
        cut.right.start = a.front();
        cut.right.end = a.back();
        cut.right.interior.assign(a.begin() + 1, a.begin() + static_cast<std::ptrdiff_t>(p + 1));
        cut.right.interior.insert(cut.right.interior.end(), a.begin() + static_cast<std::ptrdiff_t>(p + R + 1), a.end() - 1);
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

void TensorSum::add(const SignedComposition& right, const LinComb<SignedComposition>& left, const Rational& scale) {
    auto& slot = by_right[right];
    slot.add(left, scale);
    if (slot.empty()) by_right.erase(right);
}

LinComb<std::pair<SignedComposition, SignedComposition>> TensorSum::pairs() const {
    LinComb<std::pair<SignedComposition, SignedComposition>> out;
    for (const auto& [right, left] : by_right)
        for (const auto& [l, c] : left) out.add({l, right}, c);
    return out;
}

namespace {

// MZV terms first, then the rest, each in map order.
std::vector<std::pair<SignedComposition, Rational>> display_order(const LinComb<SignedComposition>& lc) {
    std::vector<std::pair<SignedComposition, Rational>> out;
    for (const auto& kv : lc)
        if (kv.first.all_positive()) out.emplace_back(kv);
    for (const auto& kv : lc)
        if (!kv.first.all_positive()) out.emplace_back(kv);
    return out;
}

}  // namespace

std::vector<TensorTerm> tensor_terms(const TensorSum& t) {
    std::vector<TensorTerm> out;
    for (const auto& [right, left] : t.by_right) {
        BigInt num = 0, den = 1;
        for (const auto& [c, q] : left) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        }
        TensorTerm term;
        term.right = right;
        term.coeff = Rational(num, den);
        term.coeff.canonicalize();
        if (display_order(left).front().second < 0) term.coeff = -term.coeff;
        term.left = left;
        term.left *= Rational(1) / term.coeff;
        out.push_back(std::move(term));
    }
    return out;
}

std::string format_lincomb(const LinComb<SignedComposition>& lc) {
    if (lc.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, q] : display_order(lc)) {
        Rational mag = abs(q);
        if (first) {
            if (q < 0) out += "-";
        } else {
            out += (q < 0) ? " - " : " + ";
        }
        if (mag != 1) out += to_string(mag) + "*";
        out += format_composition(c);
        first = false;
    }
    return out;
}

std::string format_tensor(const TensorSum& t) {
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& term : tensor_terms(t)) {
        if (!first) os << " + ";
        if (term.coeff != 1) os << to_string(term.coeff) << " * ";
        os << "(" << format_lincomb(term.left) << ") (x) " << format_composition(term.right);
        first = false;
    }
    return os.str();
}

DrResult Dr_detail(const SignedComposition& c, int r) {
    const IIWord w = rho(c);
    std::map<SignedComposition, LinComb<IIWord>> grouped;
    for (const RawCut& cut : coaction_Dr(w, r)) {
        const HCanonical right = canonicalize_H(cut.right);
        if (right.kind == HCanonical::Kind::one || right.unresolved())
            throw std::logic_error("quotient sequence lost its (0, 1) endpoints: " + format_word(cut.right));
        if (right.is_zero()) continue;
        const LinComb<IIWord> left = canonicalize_L(cut.left);
        if (left.empty()) continue;
        auto& slot = grouped[unrho(right.word)];
        slot.add(left, right.coeff);
    }

    DrResult out;
    out.word_form.r = r;
    out.simplified.r = r;
    for (const auto& [right, left] : grouped) {
        if (left.empty()) continue;
        LinComb<SignedComposition> words, expanded;
        for (const auto& [word, q] : left) {
            const SignedComposition lc = unrho(word);
            words.add(lc, q);
            expanded.add(shuffle_regularize(lc).constant_term(), q);
        }
        out.word_form.add(right, words);
        out.simplified.add(right, expanded);
    }
    return out;
}

TensorSum Dr_simplified(const SignedComposition& c, int r) { return Dr_detail(c, r).simplified; }

TensorSum Dr_simplified(int a, const SignedComposition& c, int r) {
    SignedComposition x = c;
    x.leading_zeros += a;
    return Dr_simplified(x, r);
}

bool D1_vanishes(const SignedComposition& c) {
    if (c.weight() <= 1) return true;
    return Dr_simplified(c, 1).empty();
}

SignedComposition singles(int m, int d, int a) {
    if (m < 1 || d < 0) throw DomainError("singles requires m >= 1 and d >= 0");
    SignedComposition c;
    c.leading_zeros = a;
    c.entries.assign(static_cast<std::size_t>(d), Entry{m, -1});
    return c;
}

TensorSum prop22_structure(int m, int d, int r) {
    if (m < 2 || d < 1) throw DomainError("prop22_structure requires m >= 2 and d >= 1");
    if (r < 1 || r % 2 == 0 || r >= m * d) throw DomainError("prop22_structure requires odd r < m*d");
    TensorSum t;
    t.r = r;
    if (m % 2 == 0 || r % m != 0) return t;
    const int p = r / m;
    t.add(singles(m, d - p), LinComb<SignedComposition>(singles(m, p)));
    return t;
}

std::vector<std::string> family_names() {
    return {"bar23", "bar23-bar2", "3bar2", "3bar2-3", "bar21", "bar21-bar2", "1bar2", "1bar2-1"};
}

SignedComposition family(const std::string& name, int ell, int a) {
    if (ell < 0 || a < 0) throw DomainError("family requires ell >= 0 and a >= 0");
    struct Shape {
        std::vector<int> block;
        std::vector<int> tail;
    };
    static const std::map<std::string, Shape> shapes = {
        {"bar23", {{-2, 3}, {}}},   {"bar23-bar2", {{-2, 3}, {-2}}}, {"3bar2", {{3, -2}, {}}},  {"3bar2-3", {{3, -2}, {3}}},
        {"bar21", {{-2, 1}, {}}},   {"bar21-bar2", {{-2, 1}, {-2}}}, {"1bar2", {{1, -2}, {}}},  {"1bar2-1", {{1, -2}, {1}}},
    };
    auto it = shapes.find(name);
    if (it == shapes.end()) throw DomainError("unknown family: " + name);
    SignedComposition c;
    c.leading_zeros = a;
    auto push = [&c](int v) { c.entries.push_back({v > 0 ? v : -v, v > 0 ? 1 : -1}); };
    for (int k = 0; k < ell; ++k)
        for (int v : it->second.block) push(v);
    for (int v : it->second.tail) push(v);
    return c;
}

}  // namespace mes
