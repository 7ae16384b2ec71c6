#include <doctest.h>

#include <random>
#include <thread>

#include "mes/catalog.hpp"
#include "mes/json_io.hpp"
#include "mes/motivic.hpp"

using namespace mes;

namespace {

IIWord word(int start, std::initializer_list<int> interior, int end) {
    IIWord w;
    w.start = letter_from_int(start);
    for (int x : interior) w.interior.push_back(letter_from_int(x));
    w.end = letter_from_int(end);
    return w;
}

IIWord random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<int> letter(-1, 1);
    IIWord w;
    w.start = letter_from_int(letter(rng));
    w.end = letter_from_int(letter(rng));
    w.interior.resize(len(rng));
    for (auto& x : w.interior) x = letter_from_int(letter(rng));
    return w;
}

LinComb<SignedComposition> lc(std::initializer_list<std::pair<const char*, Rational>> terms) {
    LinComb<SignedComposition> out;
    for (const auto& [c, q] : terms) out.add(parse_composition(c), q);
    return out;
}

TensorSum tensor(int r, std::initializer_list<std::pair<const char*, LinComb<SignedComposition>>> terms) {
    TensorSum t;
    t.r = r;
    for (const auto& [right, left] : terms) t.add(parse_composition(right), left);
    return t;
}

std::string repeat(const std::string& block, int n) {
    std::string out;
    for (int i = 0; i < n; ++i) out += (i ? "," : "") + block;
    return out;
}

}  // namespace

TEST_CASE("canonicalize_H examples") {
    const HCanonical h = canonicalize_H(word(0, {1, 0, -1, 0, 0}, -1));
    REQUIRE(h.kind == HCanonical::Kind::word);
    CHECK(h.coeff == 1);
    CHECK(h.word == word(0, {-1, 0, 1, 0, 0}, 1));
    CHECK(canonicalize_H(word(1, {0, -1, 1}, 1)).is_zero());
    CHECK(canonicalize_H(word(0, {1, 1}, 1)).is_zero());
    CHECK(canonicalize_H(word(0, {}, 1)).kind == HCanonical::Kind::one);
    CHECK(canonicalize_H(word(0, {-1}, 1)).word == log2_word());
}

TEST_CASE("canonicalize_H is idempotent and respects reversal") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 3000; ++i) {
        const IIWord w = random_word(rng, 1, 7);
        const HCanonical h = canonicalize_H(w);
        const HCanonical r = canonicalize_H(reversed(w));
        const Rational sign = w.weight() % 2 ? -1 : 1;
        CHECK(h.kind == r.kind);
        if (h.kind != HCanonical::Kind::word) continue;
        CHECK(r.word == h.word);
        CHECK(r.coeff == sign * h.coeff);
        const HCanonical again = canonicalize_H(h.word);
        CHECK(again.kind == HCanonical::Kind::word);
        CHECK(again.word == h.word);
        CHECK(again.coeff == 1);
    }
}

TEST_CASE("weight-one classes") {
    for (int eta : {-1, 1}) {
        const Letter e = letter_from_int(eta);
        CHECK(weight1_class(Letter::zero, e, e) == 0);
        CHECK(weight1_class(e, e, Letter::zero) == 0);
        CHECK(weight1_class(e, Letter::zero, e) == 0);
        CHECK(weight1_class(e, e, e) == 0);
    }
    CHECK(weight1_class(Letter::zero, Letter::minus, Letter::plus) == 1);
    CHECK(weight1_class(Letter::zero, Letter::plus, Letter::plus) == 0);
}

TEST_CASE("canonicalize_L") {
    // Sign of this cut is the engine's own; see the D_3 zeta(2bar,3) check below.
    CHECK(canonicalize_L(word(-1, {0, 1, 0}, 0)) == LinComb<IIWord>(word(0, {0, -1, 0}, 1), -1));
    CHECK(canonicalize_L(word(0, {-1}, 1)) == LinComb<IIWord>(log2_word()));
    CHECK(canonicalize_L(word(1, {-1}, 0)) == LinComb<IIWord>(log2_word(), weight1_class(Letter::plus, Letter::minus, Letter::zero)));
    const IIWord canonical = rho(comp({-2, 3}));
    CHECK(canonicalize_L(canonical) == LinComb<IIWord>(canonical));
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        const IIWord w = random_word(rng, 1, 6);
        for (const auto& [u, c] : canonicalize_L(w)) {
            CHECK(u.start == Letter::zero);
            CHECK(u.end == Letter::plus);
            CHECK(u.weight() == w.weight());
        }
    }
}

TEST_CASE("raw cuts and grading") {
    CHECK(coaction_Dr(rho(comp({-2, 3})), 3).size() == 3);
    CHECK_THROWS_AS(coaction_Dr(rho(comp({3})), 2), DomainError);
    CHECK_THROWS_AS(coaction_Dr(rho(comp({3})), 3), DomainError);
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> mag(1, 3), coin(0, 1);
    for (int i = 0; i < 300; ++i) {
        SignedComposition c;
        c.leading_zeros = i % 2;
        while (c.weight() < 4 || (coin(rng) && c.weight() < 10)) c.entries.push_back({mag(rng), coin(rng) ? 1 : -1});
        const int w = c.weight();
        for (int r = 1; r < w; r += 2) {
            const auto cuts = coaction_Dr(rho(c), r);
            CHECK(cuts.size() == static_cast<std::size_t>(w - r + 1));
            for (const auto& cut : cuts) {
                CHECK(static_cast<int>(cut.left.weight()) == r);
                CHECK(static_cast<int>(cut.right.weight()) == w - r);
            }
            for (const auto& [right, left] : Dr_simplified(c, r).by_right) {
                CHECK(right.weight() == w - r);
                for (const auto& kv : left) CHECK(kv.first.weight() == r);
            }
        }
    }
}

TEST_CASE("D_r base cases") {
    CHECK(Dr_simplified(parse_composition("b2,3"), 3) == tensor(3, {{"b2", lc({{"3", 1}, {"b3", 2}})}}));
    CHECK(Dr_detail(parse_composition("b2,3"), 3).word_form == tensor(3, {{"b2", lc({{"3", 1}, {"a1;b2", -1}})}}));
    CHECK(Dr_simplified(parse_composition("b2,3,b2"), 3).empty());
    CHECK(Dr_simplified(parse_composition("b2,3,b2"), 5) == tensor(5, {{"b2", lc({{"b2,3", 1}})}}));
    CHECK(Dr_detail(parse_composition("3,b2"), 3).word_form == tensor(3, {{"b2", lc({{"a1;b2", 1}})}}));
    CHECK(Dr_simplified(parse_composition("3,b2,3"), 5) == tensor(5, {{"3", lc({{"3,b2", 1}})}}));
    CHECK(Dr_simplified(parse_composition("a1;3,b2"), 5).empty());
    CHECK(Dr_simplified(parse_composition("a1;3,b2,3"), 7).empty());
    CHECK(Dr_detail(parse_composition("3,2"), 3).word_form == tensor(3, {{"2", lc({{"a1;2", 1}})}}));
    CHECK(Dr_simplified(parse_composition("3,2"), 3) == tensor(3, {{"2", lc({{"3", -2}})}}));
    CHECK(Dr_simplified(parse_composition("2,3"), 3) == tensor(3, {{"2", lc({{"3", 3}})}}));
    CHECK(Dr_simplified(parse_composition("1,3"), 3).empty());
    CHECK(Dr_simplified(parse_composition("1,b2,1"), 3).empty());
    CHECK(Dr_simplified(1, parse_composition("3,b2"), 5).empty());
}

TEST_CASE("D_1 vanishes on every family member") {
    for (const auto& name : family_names())
        for (int ell = 0; ell <= 4; ++ell)
            for (int a = 0; a <= 2; ++a) CHECK_MESSAGE(D1_vanishes(family(name, ell, a)), name << " l=" << ell << " a=" << a);
    CHECK(D1_vanishes(parse_composition("1,b2")));
    CHECK_FALSE(D1_vanishes(parse_composition("b2,b1")));
}

TEST_CASE("D_{6n+5} vanishes on {1,2bar}_k and 3_k") {
    for (int k = 2; k <= 4; ++k) {
        for (int r = 5; r < 3 * k; r += 6) {
            CHECK(Dr_simplified(parse_composition(repeat("1,b2", k)), r).empty());
            CHECK(Dr_simplified(parse_composition(repeat("3", k)), r).empty());
        }
    }
}

TEST_CASE("survivor structure of the singles matches the coaction") {
    CHECK(prop22_structure(4, 2, 3).empty());
    CHECK(prop22_structure(3, 3, 3) == tensor(3, {{"b3,b3", lc({{"b3", 1}})}}));
    CHECK_THROWS_AS(prop22_structure(2, 2, 2), DomainError);
    for (int m = 2; m <= 4; ++m)
        for (int d = 1; d <= 3; ++d)
            for (int r = 1; r < m * d; r += 2) CHECK_MESSAGE(prop22_structure(m, d, r) == Dr_simplified(singles(m, d), r), "m=" << m << " d=" << d << " r=" << r);
}

TEST_CASE("families") {
    CHECK(family("bar23", 2, 0) == parse_composition("b2,3,b2,3"));
    CHECK(family("1bar2-1", 1, 0) == parse_composition("1,b2,1"));
    CHECK(family("3bar2-3", 1, 2) == parse_composition("a2;3,b2,3"));
    CHECK(singles(2, 3) == parse_composition("b2,b2,b2"));
    CHECK_THROWS_AS(family("nope", 1, 0), DomainError);
}

TEST_CASE("certificates") {
    KnowledgeBase kb;
    for (const char* text : {"b2,3", "b3,b3", "b2,3,b2,3,b2", "a1;1,b2,1", "b2,b3"}) {
        const CertifyResult r = certify_unramified(parse_composition(text), kb);
        REQUIRE_MESSAGE(r.verified, text << ": " << r.reason);
        CHECK(replay_certificate(*r.certificate).empty());
        const auto j = certificate_to_json(*r.certificate);
        CHECK(j.at("target") == format_composition(parse_composition(text)));
    }
    const CertifyResult remark = certify_unramified(parse_composition("b2,3,b2,5"), kb);
    CHECK_FALSE(remark.verified);
    CHECK(remark.reason.find("D_1") != std::string::npos);
    CHECK_FALSE(certify_unramified(parse_composition("b1"), kb).verified);
    CHECK_FALSE(certify_unramified(parse_composition("b2,2"), kb).verified);

    KnowledgeBase shallow;
    const CertifyResult budget = certify_unramified(parse_composition("b2,3,b2,3,b2,3"), shallow, 1);
    CHECK_FALSE(budget.verified);
    CHECK(budget.reason.find("recursion budget") != std::string::npos);
    // A budget failure is not cached as a disproof.
    CHECK(certify_unramified(parse_composition("b2,3,b2,3,b2,3"), shallow).verified);
}

TEST_CASE("tampered certificates fail replay") {
    KnowledgeBase kb;
    const CertifyResult r = certify_unramified(parse_composition("b2,3,b2"), kb);
    REQUIRE(r.verified);
    Certificate forged = *r.certificate;
    forged.children.clear();
    CHECK_FALSE(replay_certificate(forged).empty());
    Certificate wrong;
    wrong.target = parse_composition("b2,3,b2,5");
    wrong.basis = Certificate::Basis::recursive;
    CHECK_FALSE(replay_certificate(wrong).empty());
}

TEST_CASE("concurrent certification shares one knowledge base") {
    KnowledgeBase shared;
    std::vector<SignedComposition> targets;
    for (const auto& name : family_names())
        for (int ell = 1; ell <= 3; ++ell) targets.push_back(family(name, ell, ell % 2));
    std::vector<int> verdicts(targets.size(), -1);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < targets.size(); i += 4) verdicts[i] = certify_unramified(targets[i], shared).verified;
        });
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        KnowledgeBase alone;
        CHECK(verdicts[i] == static_cast<int>(certify_unramified(targets[i], alone).verified));
    }
}

TEST_CASE("D_r identities") {
    KnowledgeBase kb;
    load_default_rules(kb);
    CHECK(verify_Dr_identity(64, parse_composition("1,b2,1,b2"), lc({{"3,3", 1}}), 3, kb).equal);
    CHECK(verify_Dr_identity(64, parse_composition("1,b2,1,b2"), lc({{"3,3", 1}}), 5, kb).equal);
    CHECK(verify_Dr_identity(16, parse_composition("b2,1,b2"), lc({{"3,2", 1}, {"2,3", -1}}), 3, kb).equal);
    const IdentityCheck wrong = verify_Dr_identity(32, parse_composition("1,b2,1,b2"), lc({{"3,3", 1}}), 3, kb);
    CHECK_FALSE(wrong.equal);
    CHECK_FALSE(wrong.diff.empty());
    CHECK_THROWS_AS(verify_Dr_identity(1, parse_composition("b2,3"), lc({{"3", 1}}), 3, kb), DomainError);
}

TEST_CASE("TensorSum JSON round trip") {
    for (const auto& [text, r] : std::vector<std::pair<const char*, int>>{{"b2,3", 3}, {"b2,3,b2", 5}, {"3,2", 3}, {"b3,b3,b3", 3}, {"a1;b2,3,b2", 3}}) {
        const TensorSum t = Dr_simplified(parse_composition(text), r);
        CHECK(tensor_from_json(tensor_to_json(t)) == t);
        CHECK(tensor_from_json(nlohmann::ordered_json::parse(tensor_to_json(t).dump())) == t);
    }
}
