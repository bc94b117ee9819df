#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mharm/cli.hpp"

using namespace mharm;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json first_json_line(const std::string& s) {
    return nlohmann::json::parse(s.substr(0, s.find('\n')));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compute z") {
    auto r = run({"compute", "z", "--n", "15", "--prime", "5", "--exp", "1"});
    CHECK(r.code == 0);
    auto j = first_json_line(r.out);
    CHECK(j["value"] == 4);
    CHECK(j["modulus_p"] == 5);
    CHECK(j["rational"] == z_exact(15).str());

    auto naive = run({"compute", "z", "--n", "15", "--prime", "5", "--naive"});
    CHECK(first_json_line(naive.out)["value"] == 4);

    auto empty = run({"compute", "z", "--n", "2", "--prime", "3", "--exp", "1"});
    CHECK(empty.code == 0);
    CHECK(first_json_line(empty.out)["value"] == 0);
}

TEST_CASE("compute bernoulli") {
    auto r = run({"compute", "bernoulli", "--k", "4"});
    CHECK(r.code == 0);
    CHECK(first_json_line(r.out)["rational"] == "-1/30");

    auto m = run({"compute", "bernoulli", "--k", "2", "--mod", "--prime", "5"});
    CHECK(first_json_line(m.out)["value"] == 1);
}

TEST_CASE("compute kernels match the library") {
    auto k = run({"compute", "kfold", "--n", "5", "--k", "3", "--coprime-to", "5", "--prime", "5"});
    CHECK(first_json_line(k.out)["value"] == 3);

    auto s = run({"compute", "s", "--m", "2", "--limit", "5", "--prime", "5"});
    CHECK(first_json_line(s.out)["value"] == 4);

    auto t = run({"compute", "t", "--m", "2", "--limit", "5", "--prime", "5"});
    CHECK(first_json_line(t.out)["value"] == 1);

    auto p = run({"compute", "power_sum", "--mult", "1", "--l", "1", "--s", "1",
                  "--prime", "5", "--exp", "2"});
    CHECK(first_json_line(p.out)["value"] == 0);

    auto f = run({"compute", "floor_sum", "--m", "2", "--n", "1", "--k", "3", "--prime", "5"});
    CHECK(first_json_line(f.out)["value"] == 2);
}

TEST_CASE("usage errors exit 2, kernel errors exit 3") {
    CHECK(run({"compute", "z"}).code == 2);                        // missing --n
    CHECK(run({"compute", "z", "--n", "15", "--bogus"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    // the triple (7,7,1) of 15 has an index divisible by 7, so mod 7 fails
    auto r = run({"compute", "z", "--n", "15", "--prime", "7"});
    CHECK(r.code == 3);
    CHECK(r.err.find("kernel error") != std::string::npos);
}

TEST_CASE("help exits 0") {
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify family selection and exit codes") {
    auto bad = run({"verify", "--families", ""});
    CHECK(bad.code == 2);

    auto unknown = run({"verify", "--families", "nope"});
    CHECK(unknown.code == 2);

    auto ok = run({"verify", "--families", "zhao_1_1", "--prime-bound", "13"});
    CHECK(ok.code == 0);
    // 5 records + summary
    int lines = 0;
    for (char c : ok.out) lines += (c == '\n');
    CHECK(lines == 6);
}

TEST_CASE("verify reports documented mismatches without failing") {
    auto r = run({"verify", "--families", "lemma2.4", "--prime-bound", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("paper_mismatch_documented") != std::string::npos);
    CHECK(r.out.find("\"check_id\":\"lemma2.4.k0\"") != std::string::npos);
    CHECK(r.out.find("\"status\":\"fail\"") == std::string::npos);
    // summary is the last line and counts the mismatches
    auto tail = r.out.rfind("{\"check_id\":\"_summary\"");
    REQUIRE(tail != std::string::npos);
    auto summary = nlohmann::json::parse(r.out.substr(tail, r.out.find('\n', tail) - tail));
    CHECK(summary["params"]["fail"] == 0);
    CHECK(summary["params"]["paper_mismatch_documented"].get<long long>() > 0);
}

TEST_CASE("verify exit 1 on honest check failures") {
    // three-prime theorem instances disagree with the printed closed form
    auto r = run({"verify", "--families", "thm1", "--prime-bound", "7"});
    CHECK(r.code == 1);
    CHECK(r.out.find("\"status\":\"fail\"") != std::string::npos);

    // two-prime instances alone pass
    auto ok = run({"verify", "--families", "thm1", "--prime-bound", "5"});
    CHECK(ok.code == 0);
}

TEST_CASE("verify determinism with --no-timing") {
    std::vector<std::string> args = {"verify", "--families", "lemma2.2,note2.12",
                                     "--prime-bound", "7", "--no-timing"};
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("elapsed_ms") == std::string::npos);
}

TEST_CASE("verify csv format") {
    auto r = run({"verify", "--families", "zhao_1_1", "--prime-bound", "7", "--format", "csv",
                  "--no-timing"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("check_id,params,modulus_p,modulus_r,lhs,rhs,status,elapsed_ms\n", 0) == 0);
    CHECK(r.out.find("zhao_1_1,p=3,3,1,1,1,pass,") != std::string::npos);

    auto bad = run({"verify", "--format", "yaml"});
    CHECK(bad.code == 2);
}

TEST_CASE("verify --config file supplies flags") {
    const char* path = "mharm_test_config.ini";
    {
        std::ofstream f(path);
        f << "families=zhao_1_1\nprime-bound=7\nno-timing=true\n";
    }
    auto r = run({"verify", "--config", path});
    std::remove(path);
    CHECK(r.code == 0);
    auto direct = run({"verify", "--families", "zhao_1_1", "--prime-bound", "7", "--no-timing"});
    CHECK(r.out == direct.out);
}

TEST_CASE("record field order is fixed") {
    CheckResult r;
    r.check_id = "demo";
    r.params = {{"p", 5}, {"n", 3}};
    r.modulus_p = 5;
    r.modulus_r = 2;
    r.lhs = 7;
    r.rhs = 7;
    r.status = CheckStatus::pass;
    r.elapsed_ms = 1.2345;
    CHECK(result_to_json(r, false).dump() ==
          R"({"check_id":"demo","params":{"n":3,"p":5},"modulus_p":5,"modulus_r":2,"lhs":7,"rhs":7,"status":"pass"})");
    CHECK(result_to_json(r, true).dump() ==
          R"({"check_id":"demo","params":{"n":3,"p":5},"modulus_p":5,"modulus_r":2,"lhs":7,"rhs":7,"status":"pass","elapsed_ms":1.235})");
    CHECK(result_to_csv(r, false) == "demo,n=3;p=5,5,2,7,7,pass,");
    CHECK(result_to_csv(r, true) == "demo,n=3;p=5,5,2,7,7,pass,1.235");
}

TEST_CASE("exit codes follow the contract across synthetic configs") {
    // 0: all selected checks pass (mismatches and skips do not fail)
    for (auto args : std::vector<std::vector<std::string>>{
             {"verify", "--families", "zhao_1_1", "--prime-bound", "31"},
             {"verify", "--families", "wangcai_1_3,lemma2.2", "--prime-bound", "5"},
             {"verify", "--families", "lemma2.4", "--prime-bound", "5"},
             {"verify", "--families", "wang_1_4", "--prime-bound", "5"},  // all skipped
             {"verify", "--families", "corollary2", "--prime-bound", "7", "--format", "csv"}})
        CHECK(run(args).code == 0);
    // 1: at least one fail record
    for (auto args : std::vector<std::vector<std::string>>{
             {"verify", "--families", "thm1", "--prime-bound", "7"},
             {"verify", "--families", "wang_1_4", "--prime-bound", "7"}})
        CHECK(run(args).code == 1);
    // 2: configuration errors of any shape
    for (auto args : std::vector<std::vector<std::string>>{
             {"verify", "--families", ""},
             {"verify", "--families", "zhao_1_1,bogus"},
             {"verify", "--format", "xml"},
             {"verify", "--prime-bound", "seven"},
             {"verify", "--families", "zhao_1_1", "--exponent-bound", "0"},
             {"verify", "--config", "/nonexistent/path.ini"}})
        CHECK(run(args).code == 2);
}

TEST_CASE("bench contract") {
    auto r = run({"bench", "--n", "15", "--prime", "5", "--reps", "1"});
    CHECK(r.code == 0);
    auto j = first_json_line(r.out);
    CHECK(j["n"] == 15);
    CHECK(j["value"] == 4);
    CHECK(j.contains("naive_ms"));
    CHECK(j.contains("fast_ms"));

    CHECK(run({"bench", "--n", "16", "--prime", "5"}).code == 2);   // 5 does not divide 16
    CHECK(run({"bench", "--n", "30", "--prime", "5"}).code == 2);   // even n
    CHECK(run({"bench", "--n", "15", "--prime", "5", "--reps", "0"}).code == 2);

    auto multi = run({"bench", "--n", "15,45", "--prime", "5", "--reps", "1"});
    CHECK(multi.code == 0);
    int lines = 0;
    for (char c : multi.out) lines += (c == '\n');
    CHECK(lines == 2);
}

}  // TEST_SUITE
