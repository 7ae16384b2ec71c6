#include <doctest.h>

#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" MES_CLI_PATH "' " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("dr") {
    const Run r = run("dr --comp b2,3 --r 3");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "(3 + 2*b3) (x) b2"));
    const Run j = run("dr --comp b2,3,b2 --r 5 --format json");
    REQUIRE(j.status == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc.at("r") == 5);
    CHECK(doc.at("terms").size() == 1);
    CHECK(doc.at("terms")[0].at("right") == "b2");
    CHECK(run("dr --comp 3 --r 5").status == 3);
    CHECK(run("dr --comp 3 --r 2").status == 3);
    CHECK(run("dr --comp 3,,2 --r 3").status == 2);
}

TEST_CASE("certify") {
    const Run ok = run("certify --comp b2,3");
    CHECK(ok.status == 0);
    CHECK(contains(ok.out, "Verified"));
    const Run unknown = run("certify --comp b2,3,b2,5");
    CHECK(unknown.status == 1);
    CHECK(contains(unknown.out, "Unknown"));
    const Run fam = run("certify --family bar23 --ell 1..2 --format json");
    REQUIRE(fam.status == 0);
    const auto doc = nlohmann::json::parse(fam.out);
    REQUIRE(doc.size() == 2);
    for (const auto& row : doc) CHECK(row.at("status") == "Verified");
    CHECK(run("certify --family nope --ell 1").status != 0);
}

TEST_CASE("eval") {
    const Run r = run("eval --comp b2,3 --digits 20");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "-0.18615775173851248461"));
    CHECK(run("eval --comp 1").status == 3);
    CHECK(run("eval --comp 0").status == 2);
    CHECK(run("eval --comp 1 --reg shuffle").status == 0);
}

TEST_CASE("digits from the environment") {
    const Run r = run("eval --comp 2", "MES_DIGITS=25");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "1.644934066848226436472415"));
    CHECK_FALSE(contains(r.out, "1.6449340668482264364724151666"));
    const Run bad = run("eval --comp 2", "MES_DIGITS=15");
    CHECK(bad.status == 0);
    CHECK(contains(bad.out, "ignoring MES_DIGITS"));
}

TEST_CASE("relate") {
    const Run r = run("relate --target b2,3 --basis 5");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "80*x + 6*zeta(2,3) + 19*zeta(3,2) = 0"));
    const Run w = run("relate --target b2,3 --with 3,2 --with 5");
    CHECK(w.status == 0);
    CHECK(contains(w.out, "32*x + 4*zeta(3,2) + 3*zeta(5) = 0"));
    CHECK(run("relate --target b2,3 --basis 5 --digits 20 --bound 100000000000").status == 4);
    CHECK(run("relate --target b2,3 --basis 5 --bound 1e30").status == 2);
}

TEST_CASE("verify") {
    const Run r = run("verify --digits 40");
    CHECK(r.status == 0);
    CHECK_FALSE(contains(r.out, "FAIL"));
    CHECK(run("verify /nonexistent/catalog.json").status != 0);
}

TEST_CASE("usage errors") {
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("dr --r 3").status == 2);
}
