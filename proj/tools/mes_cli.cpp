#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mes/catalog.hpp"
#include "mes/json_io.hpp"
#include "mes/motivic.hpp"
#include "mes/numerics.hpp"
#include "mes/relations.hpp"

using namespace mes;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failed = 1, parse = 2, domain = 3, precision = 4 };

struct RunConfig {
    unsigned digits = kDefaultDigits;
    std::string format = "text";
    int depth = 64;
    unsigned threads = 1;
    bool conjectural = false;
};

unsigned default_digits() {
    if (const char* env = std::getenv("MES_DIGITS")) {
        const int d = std::atoi(env);
        if (d >= 20) return static_cast<unsigned>(d);
        std::cerr << "ignoring MES_DIGITS=" << env << " (need an integer >= 20)\n";
    }
    return kDefaultDigits;
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("bad range '" + text + "', expected N or N..M", 0);
    }
}

SignedComposition with_zeros(SignedComposition c, int a) {
    if (a < 0) throw DomainError("--a must be >= 0");
    c.leading_zeros += a;
    return c;
}

int cmd_dr(const std::string& text, int a, int r, bool raw, const RunConfig& cfg) {
    const SignedComposition c = with_zeros(parse_composition(text), a);
    const std::vector<RawCut> cuts = coaction_Dr(rho(c), r);
    const TensorSum t = Dr_simplified(c, r);
    if (cfg.format == "json") {
        ordered_json j = tensor_to_json(t);
        if (raw) j["raw"] = raw_cuts_to_json(cuts);
        std::cout << j.dump(2) << "\n";
        return ok;
    }
    if (raw) {
        std::cout << "raw cuts of " << format_word(rho(c)) << " (" << cuts.size() << "):\n";
        for (const auto& cut : cuts) std::cout << "  p=" << cut.p << "  I(" << format_word(cut.left) << ") (x) I(" << format_word(cut.right) << ")\n";
    }
    std::cout << "D_" << r << " " << pretty(c) << " = " << format_tensor(t) << "\n";
    return ok;
}

struct CertifyJob {
    SignedComposition target;
    CertifyResult result;
};

int cmd_certify(const std::string& family_name, const std::string& text, const std::string& ell_range, const std::string& a_range, int m,
                const RunConfig& cfg) {
    std::vector<CertifyJob> jobs;
    const auto [a0, a1] = parse_range(a_range);
    if (!text.empty()) {
        const SignedComposition c = parse_composition(text);
        for (int a = a0; a <= a1; ++a) jobs.push_back({with_zeros(c, a), {}});
    } else {
        const auto [l0, l1] = parse_range(ell_range);
        for (int ell = l0; ell <= l1; ++ell)
            for (int a = a0; a <= a1; ++a)
                jobs.push_back({family_name == "singles" ? singles(m, ell, a) : family(family_name, ell, a), {}});
    }

    KnowledgeBase kb;
    kb.seed_singles(4, 3);
    if (cfg.conjectural) load_default_rules(kb);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) jobs[i].result = certify_unramified(jobs[i].target, kb, cfg.depth);
    };
    std::vector<std::thread> pool;
    const unsigned n = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(jobs.size())));
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    bool all = true;
    ordered_json out = ordered_json::array();
    for (const auto& job : jobs) {
        all = all && job.result.verified;
        if (cfg.format == "json") {
            ordered_json j{{"target", format_composition(job.target)}, {"status", job.result.verified ? "Verified" : "Unknown"}};
            if (job.result.verified) {
                j["certificate"] = certificate_to_json(*job.result.certificate);
            } else {
                j["reason"] = job.result.reason;
            }
            out.push_back(j);
        } else {
            std::cout << pretty(job.target) << ": " << (job.result.verified ? "Verified" : "Unknown (" + job.result.reason + ")") << "\n";
            if (job.result.verified) std::cout << format_certificate(*job.result.certificate);
        }
    }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return all ? ok : failed;
}

int cmd_eval(const std::string& text, int a, const std::string& reg, const RunConfig& cfg) {
    const SignedComposition c = with_zeros(parse_composition(text), a);
    const MPReal v = eval_regularized(c, parse_regularization(reg), cfg.digits);
    if (cfg.format == "json") {
        ordered_json j{{"comp", format_composition(c)}, {"reg", reg}, {"digits", cfg.digits}, {"value", v.str()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << v.str() << "\n";
    }
    return ok;
}

int cmd_relate(const std::vector<std::string>& targets, int weight, const std::vector<std::string>& with, const BigInt& bound,
               const RunConfig& cfg) {
    RelationProblem p;
    p.digits = cfg.digits;
    p.bound = bound;
    std::vector<SignedComposition> basis;
    if (with.empty()) {
        if (weight == 0) throw DomainError("relate needs --basis or --with");
        basis = mzv_basis(weight);
    } else {
        for (const auto& w : with) basis.push_back(parse_composition(w));
    }
    for (const auto& t : targets) {
        const SignedComposition c = parse_composition(t);
        p.values.push_back({targets.size() == 1 ? "x" : pretty(c), eval_composition(c, cfg.digits).value});
    }
    p.anchored = targets.size();
    for (const auto& b : basis) p.values.push_back({pretty(b), eval_composition(b, cfg.digits).value});
    std::cerr << "relate: " << p.values.size() << " values at " << cfg.digits << " digits, bound " << bound.get_str() << "\n";

    const RelationResult r = find_relation(p);
    if (cfg.format == "json") {
        ordered_json coeffs = ordered_json::array();
        for (const auto& v : r.coeffs) coeffs.push_back(v.get_str());
        ordered_json labels = ordered_json::array();
        for (const auto& v : p.values) labels.push_back(v.label);
        ordered_json j{{"found", r.found}, {"labels", labels}, {"coeffs", coeffs}, {"residual", to_decimal(r.residual, 6)},
                       {"threshold", to_decimal(r.threshold, 6)}};
        if (r.found) j["confidence"] = r.confidence;
        std::cout << j.dump(2) << "\n";
    } else if (r.found) {
        std::cout << format_relation(p, r.coeffs) << "   (residual " << to_decimal(r.residual, 6) << ", confidence " << r.confidence << " digits)\n";
    } else {
        std::cout << "none found\n";
        if (!r.coeffs.empty())
            std::cout << "best candidate: " << format_relation(p, r.coeffs) << "   (residual " << to_decimal(r.residual, 6) << " vs threshold "
                      << to_decimal(r.threshold, 6) << ")\n";
    }
    return ok;
}

int cmd_verify(const std::string& path, const RunConfig& cfg) {
    const std::vector<Identity> ids = load_catalog(path);
    bool proven_ok = true;
    ordered_json out = ordered_json::array();
    for (const auto& id : ids) {
        const IdentityReport rep = verify_identity(id, cfg.digits);
        if (!id.conjectural) proven_ok = proven_ok && rep.pass;
        const std::string status = id.conjectural ? "conjectural" : "proven";
        if (cfg.format == "json") {
            out.push_back({{"name", id.name}, {"status", status}, {"pass", rep.pass}, {"abs_error", to_decimal(rep.abs_error, 6)}});
        } else {
            std::cout << (rep.pass ? "PASS " : "FAIL ") << id.name << " [" << status << "] |lhs-rhs| = " << to_decimal(rep.abs_error, 3) << "\n";
        }
    }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return proven_ok ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motivic Euler sums: coaction, unramifiedness certificates, numerics and relations.\n"
                 "Compositions are written innermost-first, e.g. \"b2,3\" is the sum over 0<k1<k2 of (-1)^k1/(k1^2 k2^3)."};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.digits = default_digits();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* dr = app.add_subcommand("dr", "Simplified coaction derivation D_r");
    std::string dr_comp;
    int dr_a = 0, dr_r = 3;
    bool dr_raw = false;
    dr->add_option("--comp", dr_comp, "Composition")->required();
    dr->add_option("--a", dr_a, "Extra leading zeros");
    dr->add_option("--r", dr_r, "Odd r < weight")->required();
    dr->add_flag("--raw", dr_raw, "Also list the raw cuts");
    dr->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* cert = app.add_subcommand("certify", "Unramifiedness certificate");
    std::string cert_family, cert_comp, cert_ell = "1", cert_a = "0";
    int cert_m = 2;
    auto* fam_opt = cert->add_option("--family", cert_family, "Family name");
    std::vector<std::string> names = family_names();
    names.push_back("singles");
    fam_opt->check(CLI::IsMember(names));
    cert->add_option("--comp", cert_comp, "Composition")->excludes(fam_opt);
    cert->add_option("--ell", cert_ell, "Range N..M of l (or d for singles)");
    cert->add_option("--a", cert_a, "Range N..M of leading zeros");
    cert->add_option("--m", cert_m, "m for the singles family");
    cert->add_flag("--conjectural", cfg.conjectural, "Load conjectural rewrites as well");
    cert->add_option("--depth", cfg.depth, "Recursion depth limit")->check(CLI::PositiveNumber);
    cert->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    cert->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* ev = app.add_subcommand("eval", "Numerical value");
    std::string ev_comp, ev_reg = "none";
    int ev_a = 0;
    ev->add_option("--comp", ev_comp, "Composition")->required();
    ev->add_option("--a", ev_a, "Extra leading zeros");
    ev->add_option("--reg", ev_reg, "Regularization")->check(CLI::IsMember({"none", "shuffle", "stuffle"}));
    ev->add_option("--digits", cfg.digits, "Decimal digits")->check(CLI::Range(20u, 100000u));
    ev->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* rel = app.add_subcommand("relate", "Integer relation against an MZV spanning set");
    std::vector<std::string> rel_targets;
    int rel_basis = 0;
    std::string rel_bound = "1000000";
    rel->add_option("--target", rel_targets, "Target composition(s)")->required();
    std::vector<std::string> rel_with;
    rel->add_option("--basis", rel_basis, "Weight k: use the Hoffman {2,3} compositions of weight k")->check(CLI::Range(2, 12));
    rel->add_option("--with", rel_with, "Explicit spanning compositions instead of --basis");
    rel->add_option("--digits", cfg.digits, "Decimal digits")->check(CLI::Range(20u, 100000u));
    rel->add_option("--bound", rel_bound, "Coefficient bound");
    rel->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* ver = app.add_subcommand("verify", "Check every identity of a catalog numerically");
    std::string ver_path = default_catalog_path();
    ver->add_option("catalog", ver_path, "Catalog JSON file");
    ver->add_option("--digits", cfg.digits, "Decimal digits")->check(CLI::Range(20u, 100000u));
    ver->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : parse;
    }

    try {
        if (*dr) return cmd_dr(dr_comp, dr_a, dr_r, dr_raw, cfg);
        if (*cert) {
            if (cert_family.empty() && cert_comp.empty()) throw DomainError("certify needs --family or --comp");
            return cmd_certify(cert_family, cert_comp, cert_ell, cert_a, cert_m, cfg);
        }
        if (*ev) return cmd_eval(ev_comp, ev_a, ev_reg, cfg);
        if (*rel) {
            BigInt bound;
            if (bound.set_str(rel_bound, 10) != 0 || bound < 1) throw ParseError("bad --bound '" + rel_bound + "'", 0);
            return cmd_relate(rel_targets, rel_basis, rel_with, bound, cfg);
        }
        if (*ver) return cmd_verify(ver_path, cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return parse;
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return precision;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return domain;
    } catch (const std::out_of_range& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    }
    return ok;
}
