#include "mes/json_io.hpp"

namespace mes {

using nlohmann::ordered_json;

ordered_json tensor_to_json(const TensorSum& t) {
    ordered_json j;
    j["r"] = t.r;
    ordered_json terms = ordered_json::array();
    for (const auto& term : tensor_terms(t)) {
        ordered_json left = ordered_json::array();
        for (const auto& [c, q] : term.left) left.push_back({{"coeff", to_string(q)}, {"comp", format_composition(c)}});
        terms.push_back({{"coeff", to_string(term.coeff)}, {"left", left}, {"right", format_composition(term.right)}});
    }
    j["terms"] = terms;
    return j;
}

TensorSum tensor_from_json(const ordered_json& j) {
    TensorSum t;
    t.r = j.at("r").get<int>();
    for (const auto& term : j.at("terms")) {
        const Rational coeff = parse_rational(term.at("coeff").get<std::string>());
        LinComb<SignedComposition> left;
        for (const auto& l : term.at("left")) left.add(parse_composition(l.at("comp").get<std::string>()), parse_rational(l.at("coeff").get<std::string>()));
        t.add(parse_composition(term.at("right").get<std::string>()), left, coeff);
    }
    return t;
}

ordered_json raw_cuts_to_json(const std::vector<RawCut>& cuts) {
    ordered_json out = ordered_json::array();
    for (const auto& c : cuts) out.push_back({{"p", c.p}, {"left", format_word(c.left)}, {"right", format_word(c.right)}});
    return out;
}

ordered_json certificate_to_json(const Certificate& cert) {
    ordered_json j;
    j["target"] = format_composition(cert.target);
    switch (cert.basis) {
        case Certificate::Basis::mzv: j["basis"] = "mzv"; break;
        case Certificate::Basis::seed: j["basis"] = "seed"; break;
        case Certificate::Basis::recursive: j["basis"] = "recursive"; break;
    }
    j["all_Dr_vanish"] = cert.all_Dr_vanish;
    ordered_json obs = ordered_json::array();
    for (const auto& ob : cert.obligations) {
        ordered_json rights = ordered_json::array(), lefts = ordered_json::array();
        for (const auto& c : ob.rights) rights.push_back(format_composition(c));
        for (const auto& c : ob.lefts) lefts.push_back(format_composition(c));
        obs.push_back({{"r", ob.r}, {"rights", rights}, {"lefts", lefts}, {"left_expanded", ob.left_expanded}});
    }
    j["obligations"] = obs;
    ordered_json children = ordered_json::array();
    for (const auto& [key, child] : cert.children)
        if (child->basis != Certificate::Basis::mzv) children.push_back(certificate_to_json(*child));
    j["children"] = children;
    return j;
}

}  // namespace mes
