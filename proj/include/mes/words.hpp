#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mes {

// Level-2 alphabet: 0 and the square roots of unity.
enum class Letter : std::int8_t { minus = -1, zero = 0, plus = 1 };

inline Letter negate(Letter a) { return static_cast<Letter>(-static_cast<int>(a)); }
inline int value(Letter a) { return static_cast<int>(a); }
Letter letter_from_int(int v);

using LetterList = std::vector<Letter>;

// I(start; interior; end). Weight is the interior length.
struct IIWord {
    Letter start = Letter::zero;
    LetterList interior;
    Letter end = Letter::plus;

    std::size_t weight() const { return interior.size(); }
    std::size_t depth() const;

    auto operator<=>(const IIWord&) const = default;
    bool operator==(const IIWord&) const = default;
};

IIWord reversed(const IIWord& w);
IIWord negated(const IIWord& w);

struct Entry {
    int magnitude = 1;
    int sign = 1;  // -1 is a barred entry

    auto operator<=>(const Entry&) const = default;
    bool operator==(const Entry&) const = default;
};

// zeta_a(s_1, ..., s_d; eps) summed over 0 < k_1 < ... < k_d (innermost first).
struct SignedComposition {
    int leading_zeros = 0;
    std::vector<Entry> entries;

    SignedComposition() = default;
    SignedComposition(std::vector<Entry> e, int a = 0) : leading_zeros(a), entries(std::move(e)) {}

    int weight() const;
    std::size_t depth() const { return entries.size(); }
    bool all_positive() const;
    // a = 0 and the last entry is not an unbarred 1.
    bool convergent() const;

    std::strong_ordering operator<=>(const SignedComposition& o) const;
    bool operator==(const SignedComposition&) const = default;
};

// Convenience: {2,-3} means (2, 3bar). Zero is rejected.
SignedComposition comp(std::initializer_list<int> signed_entries, int leading_zeros = 0);

IIWord rho(const SignedComposition& c);

class NotCanonical : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inverse of rho on words with endpoints (0, 1).
SignedComposition unrho(const IIWord& w);

int period_sign(const SignedComposition& c);

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

SignedComposition parse_composition(std::string_view text);
std::string format_composition(const SignedComposition& c);

// Human-readable forms: "0; -1,0,1,0,0; 1" and "zeta_1(2bar,3)".
std::string format_word(const IIWord& w);
IIWord parse_word(std::string_view text);
std::string pretty(const SignedComposition& c);

}  // namespace mes
