#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "mes/algebra.hpp"

namespace mes {

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---- canonical forms -------------------------------------------------------

struct HCanonical {
    enum class Kind { zero, one, word };
    Kind kind = Kind::zero;
    Rational coeff = 0;
    IIWord word;  // endpoints (0, 1), or (-1, 1) which only canonicalize_L resolves

    bool is_zero() const { return kind == Kind::zero; }
    bool unresolved() const { return kind == Kind::word && word.start == Letter::minus; }
};

HCanonical canonicalize_H(const IIWord& w);

// Weight-one integral I(a; b; c) as a multiple of the class I(0; -1; 1).
Rational weight1_class(Letter a, Letter b, Letter c);
IIWord log2_word();

// Class in L as a combination of (0, 1) words. Products are dropped.
LinComb<IIWord> canonicalize_L(const IIWord& w);

// ---- coaction ------------------------------------------------------------------

struct RawCut {
    std::size_t p = 0;
    IIWord left;   // subsequence a_p; a_{p+1..p+r}; a_{p+r+1}
    IIWord right;  // quotient sequence
};

std::vector<RawCut> coaction_Dr(const IIWord& w, int r);

// D_r value in L_r (x) H_{w-r}: right factor composition -> left combination.
// Compositions on the right may carry leading zeros or end in an unbarred 1;
// they denote the shuffle-regularized motivic integral of rho.
struct TensorSum {
    int r = 0;
    std::map<SignedComposition, LinComb<SignedComposition>> by_right;

    bool empty() const { return by_right.empty(); }
    void add(const SignedComposition& right, const LinComb<SignedComposition>& left, const Rational& scale = 1);
    bool operator==(const TensorSum& o) const { return r == o.r && by_right == o.by_right; }
    // Bilinear expansion, used for exact comparison.
    LinComb<std::pair<SignedComposition, SignedComposition>> pairs() const;
};

struct TensorTerm {
    Rational coeff;
    LinComb<SignedComposition> left;  // integral content 1, first displayed term positive
    SignedComposition right;
};

std::vector<TensorTerm> tensor_terms(const TensorSum& t);
std::string format_tensor(const TensorSum& t);
std::string format_lincomb(const LinComb<SignedComposition>& lc);

// Grouped and cancelled D_r. `word_form` keeps left factors as the canonical
// (0,1) words read back through unrho; `simplified` has them expanded into
// convergent compositions through leading zeros and shuffle regularization.
struct DrResult {
    TensorSum word_form;
    TensorSum simplified;
};

DrResult Dr_detail(const SignedComposition& c, int r);
TensorSum Dr_simplified(const SignedComposition& c, int r);
TensorSum Dr_simplified(int a, const SignedComposition& c, int r);

bool D1_vanishes(const SignedComposition& c);

// Survivor structure of D_r zeta({m bar}_d) predicted in closed form.
TensorSum prop22_structure(int m, int d, int r);

SignedComposition family(const std::string& name, int ell, int a);
SignedComposition singles(int m, int d, int a = 0);
std::vector<std::string> family_names();

// ---- knowledge base and certificates -------------------------------------------

struct Certificate;
using CertificatePtr = std::shared_ptr<const Certificate>;

struct Obligation {
    int r = 0;
    std::vector<SignedComposition> rights;
    std::vector<SignedComposition> lefts;
    bool left_expanded = false;  // lefts came from the expanded zeta form
};

struct Certificate {
    enum class Basis { mzv, seed, recursive };
    SignedComposition target;
    Basis basis = Basis::recursive;
    bool all_Dr_vanish = false;  // reporting flag: then target is q * zeta(weight)
    std::vector<Obligation> obligations;
    std::map<SignedComposition, CertificatePtr> children;
};

struct RewriteRule {
    std::string name;
    SignedComposition lhs;              // shuffle-regularized (a, c)
    LinComb<SignedComposition> rhs;     // value of lhs
    bool conjectural = false;
};

class KnowledgeBase {
public:
    CertificatePtr find(const SignedComposition& c) const;
    void insert(const SignedComposition& c, CertificatePtr cert);
    std::optional<std::string> known_failure(const SignedComposition& c) const;
    void insert_failure(const SignedComposition& c, const std::string& reason);
    std::size_t size() const;

    void add_rule(RewriteRule rule);
    std::vector<RewriteRule> rules(bool include_conjectural) const;

    // Seeds the singles {m bar}_d with certificates built from prop22_structure.
    void seed_singles(int max_m, int max_d);

private:
    mutable std::shared_mutex mutex_;
    std::map<SignedComposition, CertificatePtr> verified_;
    std::map<SignedComposition, std::string> failed_;
    std::vector<RewriteRule> rules_;
};

struct CertifyResult {
    bool verified = false;
    CertificatePtr certificate;
    std::string reason;
};

CertifyResult certify_unramified(const SignedComposition& c, KnowledgeBase& kb, int depth_limit = 64);

// Re-derives every node of the tree from scratch. Empty string on success.
std::string replay_certificate(const Certificate& cert);
std::string format_certificate(const Certificate& cert, int max_depth = 3);

// ---- identity checks under D_r ---------------------------------------------------

struct NormalizeOptions {
    bool conjectural = false;
    unsigned digits = 60;
};

struct IdentityCheck {
    bool equal = false;
    LinComb<std::pair<SignedComposition, SignedComposition>> lhs, rhs;
    std::string diff;
};

// Rewrites a composition to a normal form using the kb rules, the
// "all D_r vanish" reduction and the leading-zero / regularization expansion.
LinComb<SignedComposition> normalize_factor(const SignedComposition& c, const KnowledgeBase& kb, const NormalizeOptions& opt);

IdentityCheck verify_Dr_identity(const Rational& lhs_scale, const SignedComposition& lhs, const LinComb<SignedComposition>& rhs, int r,
                                 const KnowledgeBase& kb, const NormalizeOptions& opt = {});

}  // namespace mes
