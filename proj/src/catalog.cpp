#include "mes/catalog.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mes {

using nlohmann::ordered_json;

IdentityReport verify_identity(const Identity& id, unsigned digits) {
    IdentityReport rep;
    const MPReal lhs = eval_regularized(id.lhs, id.reg, digits);
    const MPReal rhs = eval_lincomb(id.rhs, digits);
    PrecisionScope scope(digits + kGuardDigits);
    rep.lhs_value = to_real(id.scale) * lhs.value;
    rep.rhs_value = rhs.value;
    rep.abs_error = abs(rep.lhs_value - rep.rhs_value);
    rep.pass = rep.abs_error < pow10(-static_cast<int>(digits - 10));
    return rep;
}

std::vector<Identity> parse_catalog(const std::string& json_text) {
    const auto doc = ordered_json::parse(json_text);
    if (!doc.is_array()) throw std::invalid_argument("identity catalog must be a JSON array");
    std::vector<Identity> out;
    for (const auto& item : doc) {
        Identity id;
        id.name = item.at("name").get<std::string>();
        const std::string status = item.at("status").get<std::string>();
        if (status != "proven" && status != "conjectural") throw std::invalid_argument("bad status for " + id.name + ": " + status);
        id.conjectural = status == "conjectural";
        id.scale = parse_rational(item.at("scale").get<std::string>());
        id.reg = parse_regularization(item.at("lhs").at("reg").get<std::string>());
        id.lhs = parse_composition(item.at("lhs").at("comp").get<std::string>());
        for (const auto& t : item.at("rhs")) {
            SignedComposition c = parse_composition(t.at("comp").get<std::string>());
            c.leading_zeros += t.value("a", 0);
            id.rhs.add(c, parse_rational(t.at("coeff").get<std::string>()));
        }
        out.push_back(std::move(id));
    }
    return out;
}

std::vector<Identity> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open identity catalog: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

std::string catalog_to_json(const std::vector<Identity>& ids) {
    ordered_json doc = ordered_json::array();
    for (const auto& id : ids) {
        ordered_json item;
        item["name"] = id.name;
        item["status"] = id.conjectural ? "conjectural" : "proven";
        item["scale"] = to_string(id.scale);
        item["lhs"] = {{"reg", to_string(id.reg)}, {"comp", format_composition(id.lhs)}};
        ordered_json rhs = ordered_json::array();
        for (const auto& [c, q] : id.rhs) {
            SignedComposition body(c.entries);
            rhs.push_back({{"coeff", to_string(q)}, {"a", c.leading_zeros}, {"comp", format_composition(body)}});
        }
        item["rhs"] = rhs;
        doc.push_back(item);
    }
    return doc.dump(2);
}

std::string default_catalog_path() {
    if (const char* env = std::getenv("MES_CATALOG")) return env;
    return std::string(MES_DATA_DIR) + "/identities.json";
}

std::vector<RewriteRule> rewrite_rules(const std::vector<Identity>& ids) {
    std::vector<RewriteRule> out;
    for (const auto& id : ids) {
        if (id.reg == Regularization::stuffle) continue;
        if (id.rhs.coeff(id.lhs) != 0) continue;
        RewriteRule rule;
        rule.name = id.name;
        rule.lhs = id.lhs;
        rule.rhs = id.rhs;
        rule.rhs *= Rational(1) / id.scale;
        rule.conjectural = id.conjectural;
        out.push_back(std::move(rule));
    }
    return out;
}

void load_default_rules(KnowledgeBase& kb) {
    for (auto& rule : rewrite_rules(load_catalog(default_catalog_path()))) kb.add_rule(std::move(rule));
}

}  // namespace mes
