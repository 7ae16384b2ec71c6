#include <functional>
#include <set>
#include <sstream>

#include "mes/motivic.hpp"
#include "mes/numerics.hpp"
#include "mes/relations.hpp"

namespace mes {

CertificatePtr KnowledgeBase::find(const SignedComposition& c) const {
    std::shared_lock lock(mutex_);
    auto it = verified_.find(c);
    return it == verified_.end() ? nullptr : it->second;
}

void KnowledgeBase::insert(const SignedComposition& c, CertificatePtr cert) {
    std::unique_lock lock(mutex_);
    verified_.emplace(c, std::move(cert));
}

std::optional<std::string> KnowledgeBase::known_failure(const SignedComposition& c) const {
    std::shared_lock lock(mutex_);
    auto it = failed_.find(c);
    if (it == failed_.end()) return std::nullopt;
    return it->second;
}

void KnowledgeBase::insert_failure(const SignedComposition& c, const std::string& reason) {
    std::unique_lock lock(mutex_);
    failed_.emplace(c, reason);
}

std::size_t KnowledgeBase::size() const {
    std::shared_lock lock(mutex_);
    return verified_.size();
}

void KnowledgeBase::add_rule(RewriteRule rule) {
    std::unique_lock lock(mutex_);
    rules_.push_back(std::move(rule));
}

std::vector<RewriteRule> KnowledgeBase::rules(bool include_conjectural) const {
    std::shared_lock lock(mutex_);
    std::vector<RewriteRule> out;
    for (const auto& r : rules_)
        if (include_conjectural || !r.conjectural) out.push_back(r);
    return out;
}

void KnowledgeBase::seed_singles(int max_m, int max_d) {
    for (int m = 2; m <= max_m; ++m) {
        for (int d = 1; d <= max_d; ++d) {
            const SignedComposition target = singles(m, d);
            if (find(target)) continue;
            auto cert = std::make_shared<Certificate>();
            cert->target = target;
            cert->basis = Certificate::Basis::seed;
            cert->all_Dr_vanish = true;
            for (int r = 3; r < m * d; r += 2) {
                const TensorSum t = prop22_structure(m, d, r);
                if (t.empty()) continue;
                cert->all_Dr_vanish = false;
                Obligation ob;
                ob.r = r;
                for (const auto& [right, left] : t.by_right) {
                    ob.rights.push_back(right);
                    if (auto child = find(right)) cert->children.emplace(right, child);
                    for (const auto& kv : left) {
                        ob.lefts.push_back(kv.first);
                        if (auto child = find(kv.first)) cert->children.emplace(kv.first, child);
                    }
                }
                cert->obligations.push_back(std::move(ob));
            }
            insert(target, cert);
        }
    }
}

namespace {

struct Outcome {
    CertificatePtr cert;
    std::string reason;
    bool budget = false;  // failure caused by the depth limit only
};

std::string describe(const SignedComposition& c) { return format_composition(c); }

Outcome certify_impl(const SignedComposition& c, KnowledgeBase& kb, int depth) {
    if (auto p = kb.find(c)) return {p, "", false};
    if (c.all_positive()) {
        auto cert = std::make_shared<Certificate>();
        cert->target = c;
        cert->basis = Certificate::Basis::mzv;
        kb.insert(c, cert);
        return {cert, "", false};
    }
    if (auto f = kb.known_failure(c)) return {nullptr, *f, false};
    if (depth <= 0) return {nullptr, "recursion budget", true};

    auto fail = [&](const std::string& reason, bool budget) {
        if (!budget) kb.insert_failure(c, reason);
        return Outcome{nullptr, reason, budget};
    };

    // The criterion only covers weight >= 2; in weight one zeta(1bar) = -log 2 is not an MZV.
    if (c.weight() == 1) return fail("weight-one value " + describe(c) + " is a multiple of log 2", false);
    if (!D1_vanishes(c)) return fail("D_1 does not vanish on " + describe(c), false);

    auto cert = std::make_shared<Certificate>();
    cert->target = c;
    cert->basis = Certificate::Basis::recursive;
    cert->all_Dr_vanish = true;
    const int k = c.weight();
    for (int r = 3; r < k; r += 2) {
        const DrResult dr = Dr_detail(c, r);
        if (dr.simplified.empty()) continue;
        cert->all_Dr_vanish = false;
        Obligation ob;
        ob.r = r;
        for (const auto& kv : dr.simplified.by_right) {
            const Outcome o = certify_impl(kv.first, kb, depth - 1);
            if (!o.cert)
                return fail("D_" + std::to_string(r) + ": right factor " + describe(kv.first) + " not certified (" + o.reason + ")", o.budget);
            ob.rights.push_back(kv.first);
            cert->children.emplace(kv.first, o.cert);
        }

        auto try_lefts = [&](const TensorSum& form, std::vector<SignedComposition>& out, std::string& why, bool& budget) {
            std::set<SignedComposition> needed;
            for (const auto& [right, left] : form.by_right) {
                if (!dr.simplified.by_right.count(right)) continue;
                for (const auto& kv : left) needed.insert(kv.first);
            }
            std::map<SignedComposition, CertificatePtr> got;
            for (const auto& l : needed) {
                const Outcome o = certify_impl(l, kb, depth - 1);
                if (!o.cert) {
                    why = "left constituent " + describe(l) + " not certified (" + o.reason + ")";
                    budget = budget || o.budget;
                    return false;
                }
                got.emplace(l, o.cert);
            }
            out.assign(needed.begin(), needed.end());
            cert->children.insert(got.begin(), got.end());
            return true;
        };

        std::string why_words, why_expanded;
        bool budget = false;
        if (try_lefts(dr.word_form, ob.lefts, why_words, budget)) {
            ob.left_expanded = false;
        } else if (try_lefts(dr.simplified, ob.lefts, why_expanded, budget)) {
            ob.left_expanded = true;
        } else {
            return fail("D_" + std::to_string(r) + ": " + why_expanded, budget);
        }
        cert->obligations.push_back(std::move(ob));
    }
    kb.insert(c, cert);
    return {cert, "", false};
}

}  // namespace

CertifyResult certify_unramified(const SignedComposition& c, KnowledgeBase& kb, int depth_limit) {
    const Outcome o = certify_impl(c, kb, depth_limit);
    CertifyResult r;
    r.verified = static_cast<bool>(o.cert);
    r.certificate = o.cert;
    r.reason = o.reason;
    return r;
}

namespace {

std::string replay_impl(const Certificate& cert, std::set<SignedComposition>& done) {
    if (done.count(cert.target)) return "";
    const SignedComposition& c = cert.target;
    auto covered = [&](const SignedComposition& x) {
        if (x.all_positive()) return true;
        return cert.children.count(x) > 0;
    };
    if (cert.basis == Certificate::Basis::mzv) {
        if (!c.all_positive()) return describe(c) + ": MZV basis claimed for a non-MZV";
        done.insert(c);
        return "";
    }
    if (c.weight() < 2) return describe(c) + ": weight-one Euler sum claimed unramified";
    if (!D1_vanishes(c)) return describe(c) + ": D_1 does not vanish";
    bool vanish = true;
    for (int r = 3; r < c.weight(); r += 2) {
        const DrResult dr = Dr_detail(c, r);
        if (dr.simplified.empty()) continue;
        vanish = false;
        for (const auto& [right, left] : dr.simplified.by_right)
            if (!covered(right)) return describe(c) + ": D_" + std::to_string(r) + " right factor " + describe(right) + " uncovered";
        auto all_covered = [&](const TensorSum& form) {
            for (const auto& [right, left] : form.by_right) {
                if (!dr.simplified.by_right.count(right)) continue;
                for (const auto& kv : left)
                    if (!covered(kv.first)) return false;
            }
            return true;
        };
        if (!all_covered(dr.word_form) && !all_covered(dr.simplified))
            return describe(c) + ": D_" + std::to_string(r) + " left factors uncovered";
    }
    if (vanish != cert.all_Dr_vanish) return describe(c) + ": all_Dr_vanish flag is wrong";
    for (const auto& [key, child] : cert.children) {
        if (!child || !(child->target == key)) return describe(c) + ": child certificate mismatch for " + describe(key);
        if (auto e = replay_impl(*child, done); !e.empty()) return e;
    }
    done.insert(c);
    return "";
}

void format_impl(const Certificate& cert, int depth, int max_depth, std::ostringstream& os) {
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    os << indent << describe(cert.target) << " [";
    switch (cert.basis) {
        case Certificate::Basis::mzv: os << "MZV"; break;
        case Certificate::Basis::seed: os << "seed"; break;
        case Certificate::Basis::recursive: os << "recursive"; break;
    }
    if (cert.all_Dr_vanish && cert.basis != Certificate::Basis::mzv) os << ", all D_r vanish";
    os << "]\n";
    for (const auto& ob : cert.obligations) {
        os << indent << "  D_" << ob.r << ": right {";
        for (std::size_t i = 0; i < ob.rights.size(); ++i) os << (i ? ", " : "") << describe(ob.rights[i]);
        os << "} left" << (ob.left_expanded ? " (expanded)" : "") << " {";
        for (std::size_t i = 0; i < ob.lefts.size(); ++i) os << (i ? ", " : "") << describe(ob.lefts[i]);
        os << "}\n";
    }
    if (depth + 1 > max_depth) return;
    for (const auto& [key, child] : cert.children)
        if (child->basis != Certificate::Basis::mzv) format_impl(*child, depth + 1, max_depth, os);
}

}  // namespace

std::string replay_certificate(const Certificate& cert) {
    std::set<SignedComposition> done;
    return replay_impl(cert, done);
}

std::string format_certificate(const Certificate& cert, int max_depth) {
    std::ostringstream os;
    format_impl(cert, 0, max_depth, os);
    return os.str();
}

// ---- normalization for identity checks ----

namespace {

using Memo = std::map<SignedComposition, LinComb<SignedComposition>>;

bool all_Dr_vanish(const SignedComposition& c) {
    const int k = c.weight();
    if (!D1_vanishes(c)) return false;
    for (int r = 3; r < k; r += 2)
        if (!Dr_simplified(c, r).empty()) return false;
    return true;
}

LinComb<SignedComposition> normalize_impl(const SignedComposition& c, const std::vector<RewriteRule>& rules, const NormalizeOptions& opt,
                                          Memo& memo) {
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    LinComb<SignedComposition> out;
    bool done = false;
    for (const auto& rule : rules) {
        if (rule.lhs == c) {
            for (const auto& [t, q] : rule.rhs) out.add(normalize_impl(t, rules, opt, memo), q);
            done = true;
            break;
        }
    }
    const int k = c.weight();
    if (!done && k >= 2 && !(c.leading_zeros == 0 && c.depth() == 1 && c.entries[0].sign == 1) && all_Dr_vanish(c)) {
        // Every D_r vanishes, so c = q zeta(k) with q read off numerically.
        const MPReal v = eval_regularized(c, Regularization::shuffle, opt.digits);
        const MPReal z = eval_composition(comp({k}), opt.digits);
        std::optional<Rational> q;
        {
            PrecisionScope scope(opt.digits + kGuardDigits);
            q = rationalize(v.value / z.value, BigInt("1000000000000"), opt.digits - 5);
        }
        if (q) {
            out.add(comp({k}), *q);
            done = true;
        }
    }
    if (!done && !c.convergent()) {
        for (const auto& [t, q] : shuffle_regularize(c).constant_term()) out.add(normalize_impl(t, rules, opt, memo), q);
        done = true;
    }
    if (!done) out.add(c, 1);
    memo.emplace(c, out);
    return out;
}

// L_3 is spanned by zeta(3): products such as zeta(2) log 2 and log^3 2 vanish there,
// so a weight-3 left factor is q zeta(3) with q found by an integer relation.
LinComb<SignedComposition> normalize_left(const SignedComposition& c, const std::vector<RewriteRule>& rules, const NormalizeOptions& opt,
                                          Memo& memo) {
    const auto n = normalize_impl(c, rules, opt, memo);
    if (c.weight() != 3) return n;
    const SignedComposition z3 = comp({3});
    LinComb<SignedComposition> out;
    for (const auto& [t, q] : n) {
        if (t == z3) {
            out.add(t, q);
            continue;
        }
        RelationProblem p;
        p.digits = opt.digits;
        p.bound = BigInt(1000000);
        const Real log2 = eval_composition(comp({-1}), opt.digits).value;
        p.values.push_back({"x", eval_regularized(t, Regularization::shuffle, opt.digits).value});
        p.values.push_back({"zeta(3)", eval_composition(z3, opt.digits).value});
        {
            PrecisionScope scope(opt.digits + kGuardDigits);
            p.values.push_back({"zeta(2) log2", eval_composition(comp({2}), opt.digits).value * log2});
            p.values.push_back({"log2^3", log2 * log2 * log2});
        }
        const RelationResult rel = find_relation(p);
        if (rel.found && rel.coeffs[0] != 0) {
            out.add(z3, q * Rational(-rel.coeffs[1], rel.coeffs[0]));
        } else {
            out.add(t, q);
        }
    }
    return out;
}

using PairComb = LinComb<std::pair<SignedComposition, SignedComposition>>;

PairComb normalize_pairs(const PairComb& in, const std::vector<RewriteRule>& rules, const NormalizeOptions& opt, Memo& memo) {
    PairComb out;
    for (const auto& [pr, q] : in) {
        const auto l = normalize_left(pr.first, rules, opt, memo);
        const auto r = normalize_impl(pr.second, rules, opt, memo);
        for (const auto& [lc, lq] : l)
            for (const auto& [rc, rq] : r) out.add({lc, rc}, q * lq * rq);
    }
    return out;
}

std::string format_pairs(const PairComb& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [pr, q] : p) {
        if (!first) os << " ";
        os << (q < 0 ? "- " : (first ? "" : "+ ")) << to_string(abs(q)) << " " << pretty(pr.first) << " (x) " << pretty(pr.second);
        first = false;
    }
    return os.str();
}

}  // namespace

LinComb<SignedComposition> normalize_factor(const SignedComposition& c, const KnowledgeBase& kb, const NormalizeOptions& opt) {
    Memo memo;
    return normalize_impl(c, kb.rules(opt.conjectural), opt, memo);
}

IdentityCheck verify_Dr_identity(const Rational& lhs_scale, const SignedComposition& lhs, const LinComb<SignedComposition>& rhs, int r,
                                 const KnowledgeBase& kb, const NormalizeOptions& opt) {
    for (const auto& [c, q] : rhs)
        if (c.weight() != lhs.weight()) throw DomainError("verify_Dr_identity: weights differ");
    const auto rules = kb.rules(opt.conjectural);
    Memo memo;

    PairComb raw_lhs = Dr_simplified(lhs, r).pairs();
    raw_lhs *= lhs_scale;
    PairComb raw_rhs;
    for (const auto& [c, q] : rhs) raw_rhs.add(Dr_simplified(c, r).pairs(), q);

    IdentityCheck out;
    out.lhs = normalize_pairs(raw_lhs, rules, opt, memo);
    out.rhs = normalize_pairs(raw_rhs, rules, opt, memo);
    out.equal = out.lhs == out.rhs;
    if (!out.equal) out.diff = "lhs: " + format_pairs(out.lhs) + "\nrhs: " + format_pairs(out.rhs) + "\nlhs - rhs: " + format_pairs(out.lhs - out.rhs);
    return out;
}

}  // namespace mes
