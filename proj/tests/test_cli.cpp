#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support.hpp"

namespace {

using json = nlohmann::json;

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const auto out = dir / ("desdiag_out_" + std::to_string(++counter) + ".txt");
    const auto err = dir / ("desdiag_err_" + std::to_string(counter) + ".txt");
    const std::string cmd = std::string(DESDIAG_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    CmdResult result;
    result.exit_code = WEXITSTATUS(raw);
    result.out = slurp(out);
    result.err = slurp(err);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return result;
}

std::string fixture(const std::string& name) {
    return std::string(DESDIAG_FIXTURE_DIR) + "/" + name;
}

json parse_report(const CmdResult& result) {
    CAPTURE(result.out);
    CAPTURE(result.err);
    REQUIRE(!result.out.empty());
    return json::parse(result.out);
}

}  // namespace

TEST_CASE("check: not diagnosable with two observable events, witness reported") {
    const CmdResult res = run_cli("--json check " + fixture("fig5.json") + " --obs s1,s2");
    CHECK(res.exit_code == 1);
    const json report = parse_report(res);
    CHECK(report["command"] == "check");
    CHECK(report["diagnosable"] == false);
    CHECK(report["witness"]["first"] == "q1");
    CHECK(report["witness"]["second"] == "q2");
}

TEST_CASE("check: diagnosable with three observable events") {
    const CmdResult res = run_cli("--json check " + fixture("fig5.json") + " --obs s1,s2,s3");
    CHECK(res.exit_code == 0);
    const json report = parse_report(res);
    CHECK(report["diagnosable"] == true);
    CHECK(report["witness"].is_null());
}

TEST_CASE("check: numeric --obs indices select the same events") {
    const CmdResult by_index = run_cli("--json check " + fixture("fig5.json") + " --obs 1,2");
    CHECK(by_index.exit_code == 1);
    CHECK(parse_report(by_index)["observable"] == json::array({"s1", "s2"}));
}

TEST_CASE("check: works without a costs field and defaults to all events") {
    const CmdResult res = run_cli("--json check " + fixture("fig5.json"));
    CHECK(res.exit_code == 0);  // all four events are observable
    CHECK(parse_report(res)["observable"].size() == 4);
}

TEST_CASE("check: reject remainder policy turns a partial partition into exit 2") {
    const CmdResult res =
        run_cli("--json check " + fixture("fig5.json") + " --remainder reject");
    CHECK(res.exit_code == 2);
    const json report = parse_report(res);
    CHECK(report.contains("error"));
    CHECK(std::string(report["error"]).find("q2") != std::string::npos);
}

TEST_CASE("searches on the family fixtures reproduce the known results") {
    const std::string fam = " --oracle family:" + fixture("family_sec5.json");

    const json greedy = parse_report(run_cli("--json greedy" + fam));
    CHECK(greedy["chosen_indices"] == json::array({3, 5, 8, 9, 10}));
    CHECK(greedy["total_cost"] == "40");
    CHECK(greedy["minimal"] == true);

    const json optimal = parse_report(run_cli("--json optimal" + fam));
    CHECK(optimal["chosen_indices"] == json::array({3, 5, 7, 10}));
    CHECK(optimal["total_cost"] == "38");
    CHECK(optimal["method"] == "exact-minl-prune");

    const json nes = parse_report(run_cli("--json nes" + fam));
    CHECK(nes["nes_indices"] == json::array({3, 5, 10}));
    CHECK(nes["nes_cost"] == "31");
}

TEST_CASE("every optimal prune mode returns the same set and cost") {
    const std::string fam = " --oracle family:" + fixture("family_lost.json");
    json reports[3];
    int i = 0;
    for (const char* prune : {"none", "minl", "nes"}) {
        const CmdResult res = run_cli("--json optimal" + fam + " --prune " + prune);
        CHECK(res.exit_code == 0);
        reports[i++] = parse_report(res);
    }
    for (const json& report : reports) {
        CHECK(report["chosen_indices"] == json::array({2, 5}));
        CHECK(report["total_cost"] == "11");
    }
}

TEST_CASE("model-backed search commands work from a model document") {
    const json optimal =
        parse_report(run_cli("--json optimal " + fixture("prop1.json") + " --prune none"));
    CHECK(optimal["chosen"] == json::array({"alpha"}));
    CHECK(optimal["total_cost"] == "1");

    const json nes = parse_report(run_cli("--json nes " + fixture("fig5.json")));
    CHECK(nes["oracle"] == "model");  // fig5 has no costs; nes does not need them
    CHECK(nes["nes"] == json::array({"s1", "s2"}));
}

TEST_CASE("greedy on a model without costs is an input error") {
    const CmdResult res = run_cli("--json greedy " + fixture("fig5.json"));
    CHECK(res.exit_code == 2);
    CHECK(parse_report(res).contains("error"));
}

TEST_CASE("a model file plus a family oracle is an input error") {
    const CmdResult res = run_cli("--json greedy " + fixture("fig5.json") +
                                  " --oracle family:" + fixture("family_lost.json"));
    CHECK(res.exit_code == 2);
}

TEST_CASE("malformed input and unknown flags exit 2") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto bad = dir / "desdiag_bad.json";
    std::ofstream(bad) << "{\"events\": [";
    CHECK(run_cli("--json check " + bad.string()).exit_code == 2);
    std::filesystem::remove(bad);

    CHECK(run_cli("--json check " + fixture("fig5.json") + " --frobnicate").exit_code == 2);
    CHECK(run_cli("--json check /no/such/file.json").exit_code == 2);
    CHECK(run_cli("--json check " + fixture("fig5.json") + " --obs zeta").exit_code == 2);
}

TEST_CASE("machine output is deterministic apart from wall time") {
    const std::string cmd = "--json optimal --oracle family:" + fixture("family_sec5.json");
    json a = parse_report(run_cli(cmd));
    json b = parse_report(run_cli(cmd));
    a.erase("wall_ms");
    b.erase("wall_ms");
    CHECK(a == b);
}

TEST_CASE("gen writes byte-identical files for the same seed") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto f1 = dir / "desdiag_gen_1.json";
    const auto f2 = dir / "desdiag_gen_2.json";
    const std::string flags = "gen --states 5 --events 4 --seed 42 --out ";
    CHECK(run_cli(flags + f1.string()).exit_code == 0);
    CHECK(run_cli(flags + f2.string()).exit_code == 0);
    const std::string a = slurp(f1), b = slurp(f2);
    CHECK(!a.empty());
    CHECK(a == b);

    // and the output parses as a model document
    CHECK_NOTHROW(desdiag::io::parse_model(a));

    // a different seed changes the bytes
    const auto f3 = dir / "desdiag_gen_3.json";
    CHECK(run_cli("gen --states 5 --events 4 --seed 43 --out " + f3.string()).exit_code == 0);
    CHECK(slurp(f3) != a);
    for (const auto& f : {f1, f2, f3}) std::filesystem::remove(f);
}

TEST_CASE("bench emits one CSV row per size and nonnegative cost gaps") {
    const CmdResult res = run_cli("bench --sizes 8,12,16 --events 6 --trials 3 --seed 1");
    CHECK(res.exit_code == 0);
    std::istringstream lines(res.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "m,n,mean_check_ms,cost_gap,oracle_calls");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        // cost_gap is the fourth comma-separated field
        std::istringstream fields(line);
        std::string field;
        for (int i = 0; i < 4; ++i) REQUIRE(std::getline(fields, field, ','));
        CHECK(std::stod(field) >= 0.0);
    }
    CHECK(rows == 3);

    const CmdResult as_json = run_cli("--json bench --sizes 8,12 --events 5 --trials 2");
    const json report = parse_report(as_json);
    CHECK(report["rows"].size() == 2);
}

TEST_CASE("human-readable output mentions the essentials") {
    const CmdResult res = run_cli("check " + fixture("fig5.json") + " --obs s1,s2");
    CHECK(res.exit_code == 1);
    CHECK(res.out.find("diagnosable: no") != std::string::npos);
    CHECK(res.out.find("q1") != std::string::npos);
}
