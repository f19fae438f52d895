#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(TORSIONLAB_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int raw = pclose(pipe);
    REQUIRE(WIFEXITED(raw));
    return {WEXITSTATUS(raw), out};
}

// value of a "key: value" line in text output, empty when absent
std::string text_value(const std::string& out, const std::string& key) {
    std::string marker = key + ": ";
    size_t pos = 0;
    while (pos < out.size()) {
        size_t eol = out.find('\n', pos);
        if (eol == std::string::npos) eol = out.size();
        if (out.compare(pos, marker.size(), marker) == 0)
            return out.substr(pos + marker.size(), eol - pos - marker.size());
        pos = eol + 1;
    }
    return "";
}

json load_schema(const std::string& name) {
    std::ifstream in(std::string(TORSIONLAB_SCHEMAS) + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "integer") return value.is_number_integer();
    if (t == "number") return value.is_number();
    if (t == "boolean") return value.is_boolean();
    if (t == "null") return value.is_null();
    return false;
}

// structural validation: type/enum/required/properties/items
void validate(const json& value, const json& schema, const std::string& where) {
    INFO("schema node: " << where);
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string())
            ok = type_matches(value, t.get<std::string>());
        else
            for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
        CHECK(ok);
        if (!ok) return;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& alt : schema["enum"]) found = found || alt == value;
        CHECK(found);
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"]) {
                INFO("required key: " << key);
                REQUIRE(value.contains(key.get<std::string>()));
            }
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key)) validate(value.at(key), sub, where + "." + key);
    }
    if (value.is_array() && schema.contains("items"))
        for (size_t i = 0; i < value.size(); ++i)
            validate(value[i], schema["items"], where + "[" + std::to_string(i) + "]");
}

void zero_seconds(json& node) {
    if (node.is_object()) {
        if (node.contains("seconds")) node["seconds"] = 0;
        for (auto& [key, sub] : node.items()) {
            (void)key;
            zero_seconds(sub);
        }
    } else if (node.is_array()) {
        for (auto& sub : node) zero_seconds(sub);
    }
}

} // namespace

TEST_CASE("rk prints the class and the agreement line") {
    RunResult r = run_cli("rk --prime 3 --k 1");
    CHECK(r.status == 0);
    CHECK(r.out.find("pipelines agree") != std::string::npos);
    CHECK(r.out.find("xi^9*eta") != std::string::npos);
}

TEST_CASE("mackey JSON matches the published schema and pinned summary") {
    RunResult r = run_cli("mackey --n 6 --p 3 --format json");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    validate(j, load_schema("mackey.schema.json"), "mackey");
    CHECK(j["orbits"].size() == 4);
    CHECK(j["summary"]["surviving"] == 2);
    CHECK(j["summary"]["scalar"] == 2);
    CHECK(j["summary"]["invertible"] == true);
    CHECK(j.contains("seed"));
}

TEST_CASE("verdict JSON and text carry the same content") {
    RunResult jr = run_cli("verdict --n 6 --p 3 --I 0,1 --format json");
    REQUIRE(jr.status == 0);
    json j = json::parse(jr.out);
    validate(j, load_schema("verdict.schema.json"), "verdict");
    CHECK(j["status"] == "Zero");
    CHECK(j["citation"] == "Thm 1.2");
    CHECK(j["scalar"] == 2);
    CHECK(j["I"] == json::array({0, 1}));

    RunResult tr = run_cli("verdict --n 6 --p 3 --I 0,1");
    REQUIRE(tr.status == 0);
    CHECK(text_value(tr.out, "status") == j["status"]);
    CHECK(text_value(tr.out, "citation") == j["citation"]);
    CHECK(text_value(tr.out, "scalar") == std::to_string(j["scalar"].get<int>()));
    CHECK(text_value(tr.out, "n") == std::to_string(j["n"].get<int>()));
    CHECK(text_value(tr.out, "I") == "(0,1)");
}

TEST_CASE("unknown verdicts stay exit 0 with empty citation") {
    RunResult r = run_cli("verdict --n 9 --p 3 --I 0,1 --format json");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "Unknown");
    CHECK(j["citation"] == "");
    CHECK(j["scalar"].is_null());
    RunResult t = run_cli("verdict --n 9 --p 3 --I 0,1");
    CHECK(text_value(t.out, "citation") == "none");
}

TEST_CASE("usage errors exit 2, never 1") {
    CHECK(run_cli("verdict --n 6 --p 3").status == 2);            // missing --I
    CHECK(run_cli("rk --prime 4 --k 0").status == 2);             // composite prime
    CHECK(run_cli("rk --prime 3").status == 2);                   // missing --k
    CHECK(run_cli("bogus").status == 2);                          // unknown subcommand
    CHECK(run_cli("apply 'B P1' 'nosuch' --prime 3").status == 2);
    CHECK(run_cli("verdict --n 6 --p 3 --I 1,0").status == 2);    // not increasing
    CHECK(run_cli("mackey --n 7 --p 3").status == 2);             // p does not divide n
    CHECK(run_cli("kz3 --prime 3 --maxdeg -2").status == 2);
    CHECK(run_cli("--help").status == 0);
}

TEST_CASE("verification failures exit 1 with a witness") {
    RunResult r = run_cli("invariants --prime 3 --expr 'xi*eta' --mode generators");
    CHECK(r.status == 1);
    CHECK(r.out.find("witness: (1,1;0,1)") != std::string::npos);

    RunResult j = run_cli("invariants --prime 3 --expr 'xi*eta' --mode generators --format json");
    CHECK(j.status == 1);
    json report = json::parse(j.out);
    validate(report, load_schema("invariants.schema.json"), "invariants");
    CHECK(report["invariant"] == false);
    CHECK(report["witness"] == "(1,1;0,1)");
}

TEST_CASE("default invariants report verifies q, r, and the dimension table") {
    RunResult r = run_cli("invariants --prime 3 --format json");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    validate(j, load_schema("invariants.schema.json"), "invariants");
    CHECK(j["q_invariant"] == true);
    CHECK(j["r_invariant"] == true);
    CHECK(j["ok"] == true);
    CHECK(j["dimensions"].size() == 12);
}

TEST_CASE("apply and normalize, pinned outputs") {
    RunResult a = run_cli("apply 'B P1' 'xi*b - a*eta' --prime 3 --format json");
    REQUIRE(a.status == 0);
    json ja = json::parse(a.out);
    validate(ja, load_schema("apply.schema.json"), "apply");
    CHECK(ja["result"] == "xi^3*eta + 2*xi*eta^3");

    RunResult n = run_cli("normalize 'P1 P1' --prime 3 --format json");
    REQUIRE(n.status == 0);
    json jn = json::parse(n.out);
    validate(jn, load_schema("normalize.schema.json"), "normalize");
    CHECK(jn["admissible"] == false);
    REQUIRE(jn["terms"].size() == 1);
    CHECK(jn["terms"][0]["word"] == "P2");
    CHECK(jn["terms"][0]["coeff"] == 2);
    CHECK(run_cli("normalize 'P1 P1' --prime 3").out.find("normal form: 2 * P2") !=
          std::string::npos);
}

TEST_CASE("verify-y reports the word and the verdict") {
    RunResult r = run_cli("verify-y --prime 3 --k 1 --format json");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    validate(j, load_schema("verify-y.schema.json"), "verify-y");
    CHECK(j["ok"] == true);
    CHECK(j["word"] == "B P3 P1");
    CHECK(j["got"] == j["want"]);
}

TEST_CASE("kz3 listing matches the pinned low-degree basis") {
    RunResult r = run_cli("kz3 --prime 3 --maxdeg 8 --format json");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    validate(j, load_schema("kz3.schema.json"), "kz3");
    REQUIRE(j["count"] == 4);
    CHECK(j["entries"][0]["label"] == "1");
    CHECK(j["entries"][1]["label"] == "x1");
    CHECK(j["entries"][2]["label"] == "x3,0");
    CHECK(j["entries"][3]["label"] == "y3,(0)");
    CHECK(j["entries"][3]["degree"] == 8);
}

TEST_CASE("cosets with certificates") {
    RunResult r = run_cli("cosets --W 3,3 --prime 3 --certify --format json");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    validate(j, load_schema("cosets.schema.json"), "cosets");
    REQUIRE(j["count"] == 4);
    for (const auto& orbit : j["orbits"]) {
        REQUIRE(orbit["order_enumerated"].is_number_integer());
        CHECK(orbit["order"] == orbit["order_enumerated"]);
    }
    CHECK(j["ok"] == true);
}

TEST_CASE("verify-all is a superset of the gate and is idempotent") {
    RunResult first = run_cli("verify-all --seed 7 --format json");
    REQUIRE(first.status == 0);
    json a = json::parse(first.out);
    validate(a, load_schema("verify-all.schema.json"), "verify-all");
    CHECK(a["ok"] == true);
    CHECK(a["seed"] == 7);
    CHECK(a["total"].get<size_t>() > 10);

    // every numbered criterion appears exactly once
    std::array<int, 11> seen{};
    for (const auto& check : a["checks"]) {
        int c = check["criterion"].get<int>();
        REQUIRE(c >= 0);
        REQUIRE(c <= 10);
        ++seen[static_cast<size_t>(c)];
        CHECK(check["passed"] == true);
    }
    for (int c = 1; c <= 10; ++c) CHECK(seen[static_cast<size_t>(c)] == 1);

    RunResult second = run_cli("verify-all --seed 7 --format json");
    REQUIRE(second.status == 0);
    json b = json::parse(second.out);
    zero_seconds(a);
    zero_seconds(b);
    CHECK(a == b);
}
