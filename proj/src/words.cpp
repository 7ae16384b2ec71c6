#include "mes/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mes {

Letter letter_from_int(int v) {
    if (v < -1 || v > 1) throw std::invalid_argument("letter out of range: " + std::to_string(v));
    return static_cast<Letter>(v);
}

std::size_t IIWord::depth() const {
    return static_cast<std::size_t>(std::count_if(interior.begin(), interior.end(), [](Letter a) { return a != Letter::zero; }));
}

IIWord reversed(const IIWord& w) {
    IIWord r{w.end, LetterList(w.interior.rbegin(), w.interior.rend()), w.start};
    return r;
}

IIWord negated(const IIWord& w) {
    IIWord r{negate(w.start), {}, negate(w.end)};
    r.interior.reserve(w.interior.size());
    for (Letter a : w.interior) r.interior.push_back(negate(a));
    return r;
}

int SignedComposition::weight() const {
    int s = leading_zeros;
    for (const auto& e : entries) s += e.magnitude;
    return s;
}

bool SignedComposition::all_positive() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.sign == 1; });
}

bool SignedComposition::convergent() const {
    if (leading_zeros != 0) return false;
    if (entries.empty()) return true;
    return !(entries.back().magnitude == 1 && entries.back().sign == 1);
}

std::strong_ordering SignedComposition::operator<=>(const SignedComposition& o) const {
    if (auto c = weight() <=> o.weight(); c != 0) return c;
    if (auto c = depth() <=> o.depth(); c != 0) return c;
    if (auto c = leading_zeros <=> o.leading_zeros; c != 0) return c;
    return entries <=> o.entries;
}

SignedComposition comp(std::initializer_list<int> signed_entries, int leading_zeros) {
    SignedComposition c;
    c.leading_zeros = leading_zeros;
    for (int v : signed_entries) {
        if (v == 0) throw std::invalid_argument("composition entries must be nonzero");
        c.entries.push_back({v > 0 ? v : -v, v > 0 ? 1 : -1});
    }
    return c;
}

IIWord rho(const SignedComposition& c) {
    IIWord w;
    w.start = Letter::zero;
    w.end = Letter::plus;
    w.interior.assign(static_cast<std::size_t>(c.leading_zeros), Letter::zero);
    const std::size_t d = c.entries.size();
    std::vector<int> eta(d + 1, 1);
    for (std::size_t j = d; j-- > 0;) eta[j] = eta[j + 1] * c.entries[j].sign;
    for (std::size_t j = 0; j < d; ++j) {
        w.interior.push_back(letter_from_int(eta[j]));
        w.interior.insert(w.interior.end(), static_cast<std::size_t>(c.entries[j].magnitude - 1), Letter::zero);
    }
    return w;
}

SignedComposition unrho(const IIWord& w) {
    if (w.start != Letter::zero || w.end != Letter::plus) throw NotCanonical("word endpoints are not (0, 1): " + format_word(w));
    SignedComposition c;
    std::size_t i = 0;
    while (i < w.interior.size() && w.interior[i] == Letter::zero) ++i;
    c.leading_zeros = static_cast<int>(i);
    std::vector<int> eta;
    while (i < w.interior.size()) {
        eta.push_back(value(w.interior[i]));
        int s = 1;
        ++i;
        while (i < w.interior.size() && w.interior[i] == Letter::zero) {
            ++s;
            ++i;
        }
        c.entries.push_back({s, 1});
    }
    eta.push_back(1);
    for (std::size_t j = 0; j < c.entries.size(); ++j) c.entries[j].sign = eta[j] * eta[j + 1];
    return c;
}

int period_sign(const SignedComposition& c) { return (c.depth() % 2 == 0) ? 1 : -1; }

namespace {

class CompositionParser {
public:
    explicit CompositionParser(std::string_view text) : s_(text) {}

    SignedComposition parse() {
        SignedComposition c;
        skip_ws();
        if (at_end()) return c;
        if (peek() == 'a') {
            ++pos_;
            c.leading_zeros = parse_int(0);
            skip_ws();
            expect(';');
        }
        skip_ws();
        if (!at_end()) parse_list(c.entries);
        skip_ws();
        if (!at_end()) fail("unexpected character '" + std::string(1, peek()) + "'");
        return c;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void expect(char ch) {
        skip_ws();
        if (at_end() || peek() != ch) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    int parse_int(int min_value) {
        skip_ws();
        const std::size_t begin = pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 100000) fail("integer too large");
            ++pos_;
        }
        if (v < min_value) {
            pos_ = begin;
            fail("integer must be >= " + std::to_string(min_value));
        }
        return static_cast<int>(v);
    }

    void parse_item(std::vector<Entry>& out) {
        skip_ws();
        if (at_end()) fail("expected entry");
        if (peek() == '(') {
            ++pos_;
            std::vector<Entry> inner;
            parse_list(inner);
            expect(')');
            expect('^');
            const int n = parse_int(0);
            for (int k = 0; k < n; ++k) out.insert(out.end(), inner.begin(), inner.end());
            return;
        }
        int sign = 1;
        if (peek() == 'b') {
            sign = -1;
            ++pos_;
        }
        out.push_back({parse_int(1), sign});
    }

    void parse_list(std::vector<Entry>& out) {
        parse_item(out);
        skip_ws();
        while (!at_end() && peek() == ',') {
            ++pos_;
            parse_item(out);
            skip_ws();
        }
    }
};

}  // namespace

SignedComposition parse_composition(std::string_view text) { return CompositionParser(text).parse(); }

std::string format_composition(const SignedComposition& c) {
    std::string out;
    if (c.leading_zeros != 0) out += "a" + std::to_string(c.leading_zeros) + ";";
    for (std::size_t j = 0; j < c.entries.size(); ++j) {
        if (j) out += ",";
        if (c.entries[j].sign < 0) out += "b";
        out += std::to_string(c.entries[j].magnitude);
    }
    return out;
}

std::string pretty(const SignedComposition& c) {
    std::string out = "zeta";
    if (c.leading_zeros != 0) out += "_" + std::to_string(c.leading_zeros);
    out += "(";
    for (std::size_t j = 0; j < c.entries.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(c.entries[j].magnitude);
        if (c.entries[j].sign < 0) out += "bar";
    }
    return out + ")";
}

std::string format_word(const IIWord& w) {
    std::ostringstream os;
    os << value(w.start) << ";";
    for (std::size_t i = 0; i < w.interior.size(); ++i) os << (i ? "," : " ") << value(w.interior[i]);
    os << "; " << value(w.end);
    return os.str();
}

IIWord parse_word(std::string_view text) {
    std::vector<std::vector<int>> parts(1);
    std::size_t i = 0;
    auto fail = [&](const std::string& m) { throw ParseError(m, i); };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
            ++i;
        } else if (ch == ';') {
            parts.emplace_back();
            ++i;
        } else if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
            int sign = 1;
            if (ch == '-') {
                sign = -1;
                ++i;
            }
            if (i >= text.size() || (text[i] != '0' && text[i] != '1')) fail("letter must be 0, 1 or -1");
            parts.back().push_back(sign * (text[i] - '0'));
            ++i;
        } else {
            fail("unexpected character");
        }
    }
    if (parts.size() != 3 || parts[0].size() != 1 || parts[2].size() != 1) fail("word must look like 'a0; a1,...,aw; a(w+1)'");
    IIWord w;
    w.start = letter_from_int(parts[0][0]);
    w.end = letter_from_int(parts[2][0]);
    for (int v : parts[1]) w.interior.push_back(letter_from_int(v));
    return w;
}

}  // namespace mes
