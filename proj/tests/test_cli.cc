// Copyright 2026 The definetti Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "definetti/cli.h"

using namespace definetti;
using Json = nlohmann::json;

namespace {

struct Invocation {
    int code = 0;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "definetti");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

}  // namespace

TEST_CASE("distance CSV") {
    auto r = invoke({"distance", "--n", "4..10", "--k", "1..3", "--p", "1..10"});
    CHECK(r.code == kExitPass);
    auto rows = lines(r.out);
    REQUIRE(!rows.empty());
    CHECK(rows[0].rfind("n,k,p,x,distance_lo,distance_hi,bound,pass,", 0) == 0);
    // 7 n-values x 3 k-values x 10 p-values; k > n-3 rows are skipped.
    CHECK(rows.size() == 1 + 7 * 3 * 10);
    std::size_t skipped = 0;
    for (std::size_t i = 1; i < rows.size(); i++) {
        skipped += rows[i].find(",skipped,") != std::string::npos;
        CHECK(rows[i].find(",fail,") == std::string::npos);
    }
    CHECK(skipped == 30);  // (4,2), (4,3), (5,3) times 10 values of p
    CHECK(r.err.find("0 failed") != std::string::npos);
}

TEST_CASE("distance JSON carries rationals and floats") {
    auto r = invoke({"distance", "--n", "5", "--k", "1", "--p", "1", "--format", "json"});
    REQUIRE(r.code == kExitPass);
    auto doc = Json::parse(r.out);
    CHECK(doc["schema_version"] == kSchemaVersion);
    CHECK(doc["command"] == "distance");
    CHECK(doc["summary"]["all_pass"] == true);
    auto rec = doc["records"][0];
    CHECK(rec["x_exact"] == "1/5");
    CHECK(rec["x"] == 0.2);
    CHECK(rec["distance_exact"] == "11/90");
    CHECK(rec["bound_exact"] == "19/3");
    CHECK(rec["slack"].get<double>() > 0.0);
    CHECK(rec["status"] == "pass");
}

TEST_CASE("failing records set the exit status") {
    auto r = invoke({"distance", "--n", "20", "--k", "1", "--p", "20", "--x", "20"});
    CHECK(r.code == kExitFail);
    auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].find(",false,") != std::string::npos);
    CHECK(rows[1].find(",fail,") != std::string::npos);
}

TEST_CASE("proof-chain JSON") {
    auto r = invoke({"proof-chain", "--n", "50", "--k", "5", "--p", "50", "--format", "json"});
    REQUIRE(r.code == kExitPass);
    auto doc = Json::parse(r.out);
    auto rec = doc["records"][0];
    for (const char *flag : {"relation_js_ok", "convex_j_ok", "shifted_ok", "final_ok", "pass"}) {
        CHECK(rec[flag] == true);
    }
    CHECK(rec["per_l_records"].size() == 51);
    CHECK(rec["max_log_h"].get<double>() <= rec["bound_log_h"].get<double>());
}

TEST_CASE("proof-chain default k values") {
    auto r = invoke({"proof-chain", "--n", "20", "--p", "3"});
    CHECK(r.code == kExitPass);
    CHECK(lines(r.out).size() == 1 + 4);
}

TEST_CASE("fock-verify") {
    auto r = invoke({"fock-verify", "--n", "3", "--p", "3", "--seeds", "100", "--format", "json"});
    REQUIRE(r.code == kExitPass);
    auto rec = Json::parse(r.out)["records"][0];
    CHECK(rec["invariance_max_deviation"].get<double>() < 1e-9);
    CHECK(rec["unitarity_max_defect"].get<double>() < 1e-9);
    CHECK(rec["reduction_exact"] == true);
    CHECK(rec["noninvariant_count"].get<int>() >= 95);

    auto limited = invoke({"fock-verify", "--n", "3", "--p", "3", "--seeds", "2", "--limit-sector-size", "5"});
    CHECK(limited.code == kExitPass);
    CHECK(lines(limited.out)[1].find(",skipped,") != std::string::npos);
    auto perm = invoke({"fock-verify", "--n", "2", "--p", "1..3", "--seeds", "2", "--limit-permanent-dim", "2"});
    CHECK(perm.code == kExitPass);
    CHECK(perm.err.find("2 passed, 0 failed, 1 skipped") != std::string::npos);
}

TEST_CASE("sphere and bound-table") {
    auto s = invoke({"sphere", "--n", "30", "--k", "1", "--samples", "20000", "--seed", "3"});
    CHECK(s.code == kExitPass);
    auto b = invoke({"bound-table", "--n", "20", "--k", "2", "--format", "json"});
    REQUIRE(b.code == kExitPass);
    auto rec = Json::parse(b.out)["records"][0];
    CHECK(rec["theorem_bound_exact"] == "16/17");
    CHECK(rec["classical_bound_exact"] == "2/3");
}

TEST_CASE("output is deterministic and independent of threads") {
    std::vector<std::string> base{"distance", "--n", "5..9", "--k", "1..2", "--p", "0..12", "--format", "json"};
    auto one = base;
    one.insert(one.end(), {"--threads", "1"});
    auto four = base;
    four.insert(four.end(), {"--threads", "4"});
    CHECK(invoke(one).out == invoke(four).out);
    std::vector<std::string> fock{"fock-verify", "--n", "2..3", "--p", "0..3", "--seeds", "7", "--seed", "99"};
    CHECK(invoke(fock).out == invoke(fock).out);
    std::vector<std::string> sphere{"sphere", "--n", "12", "--k", "1", "--samples", "5000", "--seed", "4"};
    CHECK(invoke(sphere).out == invoke(sphere).out);
}

TEST_CASE("usage and I/O errors") {
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"nonsense"}).code == kExitUsage);
    CHECK(invoke({"distance", "--n", "5", "--p", "1"}).code == kExitUsage);
    CHECK(invoke({"distance", "--n", "9..5", "--k", "1", "--p", "1"}).code == kExitUsage);
    CHECK(invoke({"distance", "--n", "5", "--k", "1", "--p", "1", "--tail-eps", "2"}).code == kExitUsage);
    CHECK(invoke({"distance", "--n", "5", "--k", "1", "--p", "1", "--x", "1/0"}).code == kExitUsage);
    CHECK(invoke({"distance", "--n", "5", "--k", "1", "--p", "1", "--format", "xml"}).code == kExitUsage);
    CHECK(invoke({"sphere", "--n", "30", "--k", "1", "--samples", "10"}).code == kExitUsage);
    CHECK(invoke({"fock-verify", "--n", "2", "--p", "1", "--limit-sector-size", "0"}).code == kExitUsage);
    CHECK(invoke({"distance", "--help"}).code == kExitPass);
    auto io = invoke({"bound-table", "--n", "6", "--k", "1", "--out", "/nonexistent-dir/out.csv"});
    CHECK(io.code == kExitIo);
}

TEST_CASE("writes to --out") {
    auto path = std::filesystem::temp_directory_path() / "definetti_cli_test.csv";
    auto r = invoke({"bound-table", "--n", "6..7", "--k", "1", "--out", path.string()});
    REQUIRE(r.code == kExitPass);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(lines(text.str()).size() == 3);
    std::filesystem::remove(path);
}

TEST_CASE("run() validates its config") {
    RunConfig config;
    config.command = Command::kDistance;
    config.n = Range{5, 5};
    config.k = Range{1, 1};
    config.p = Range{1, 2};
    auto result = run(config);
    CHECK(result.records == 2);
    CHECK(result.passed == 2);
    CHECK(result.exit_code == kExitPass);
    config.tail_eps = 0.0;
    CHECK_THROWS_AS(run(config), UsageError);
    config.tail_eps = 1e-12;
    config.chain_tolerance = -1.0;
    CHECK_THROWS_AS(run(config), UsageError);
    config.chain_tolerance = 1e-12;
    config.p.reset();
    CHECK_THROWS_AS(run(config), UsageError);
    CHECK(std::string(command_name(Command::kFockVerify)) == "fock-verify");
    CHECK(csv_columns(Command::kDistance).size() > 8);
}
