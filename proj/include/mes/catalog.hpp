#pragma once

#include <string>
#include <vector>

#include "mes/motivic.hpp"
#include "mes/numerics.hpp"

namespace mes {

// scale * zeta_reg(lhs) = sum rhs
struct Identity {
    std::string name;
    bool conjectural = false;
    Rational scale = 1;
    Regularization reg = Regularization::none;
    SignedComposition lhs;
    LinComb<SignedComposition> rhs;
};

struct IdentityReport {
    Real lhs_value, rhs_value;
    Real abs_error;
    bool pass = false;
};

// pass iff |lhs - rhs| < 10^-(digits - 10).
IdentityReport verify_identity(const Identity& id, unsigned digits = kDefaultDigits);

std::vector<Identity> parse_catalog(const std::string& json_text);
std::vector<Identity> load_catalog(const std::string& path);
std::string catalog_to_json(const std::vector<Identity>& ids);
std::string default_catalog_path();

// Identities usable as motivic rewrites: unregularized or shuffle-regularized left sides.
std::vector<RewriteRule> rewrite_rules(const std::vector<Identity>& ids);

// A knowledge base holding the rewrites of the shipped catalog.
void load_default_rules(KnowledgeBase& kb);

}  // namespace mes
