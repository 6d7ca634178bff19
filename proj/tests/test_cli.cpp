#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixture_inputs.hpp"
#include "mqkit/cli.hpp"

using namespace mq;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "mqkit");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string tmp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("mqkit_test_" + name)).string();
}

}  // namespace

TEST_CASE("il command") {
    auto r = run({"il", "--delta-p", "4"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out == "IL=0.5\nR_LP=2\nR_H=2.5\n");
    r = run({"il", "--delta-p", "4", "--v3", "--p", "1", "--pa", "0.25"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out.rfind("IL=1\nlambda=2\n", 0) == 0);
    CHECK(run({"il", "--delta-p", "4", "--percentage"}).out.rfind("IL=-0.2\n", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({"frobnicate"}).code == cli::exit_usage);
    CHECK(run({"il"}).code == cli::exit_usage);
    CHECK(run({}).code == cli::exit_usage);
    CHECK(run({"il", "--delta-p", "-1"}).code == cli::exit_domain);
    CHECK(run({"il", "--delta-p", "5", "--v3", "--p", "1", "--pa", "0.25"}).code == cli::exit_domain);
    CHECK(run({"arb-scan", "--quotes", "/nonexistent.csv", "--out", tmp("x.csv")}).code == cli::exit_format);
    CHECK(run({"eq-fit", "--panel", test::fixture("equilibrium.csv"), "--window-days", "7", "--out", tmp("x.csv")})
              .code == cli::exit_usage);
    CHECK(run({"--help"}).code == cli::exit_ok);
}

TEST_CASE("ingest errors are reported and skipped") {
    const std::string path = tmp("bad_gas.csv");
    std::ofstream(path) << "ts_hour,gas_price,native_usd\n460000,5e-08,2000\n460001,x,2000\n";
    const auto r = run({"tc-table", "--pools-v2", test::fixture("pools_v2.csv"), "--gas", path, "--out",
                        tmp("bad_out.csv")});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.err.find("bad_gas.csv:3:") != std::string::npos);
}

TEST_CASE("route command") {
    const auto r = run({"route", "--pools-v3", test::fixture("pools_v3.json"), "--pools-v2",
                        test::fixture("pools_v2.csv"), "--size", "100000", "--gas-usd", "10"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out.find("venue=uniswap_v3_5bps") != std::string::npos);
    const auto huge = run({"route", "--pools-v3", test::fixture("pools_v3.json"), "--size", "1e15", "--gas-usd", "1"});
    CHECK(huge.code == cli::exit_domain);
}

TEST_CASE("commands are deterministic") {
    const std::vector<std::vector<std::string>> commands{
        {"tc-table", "--pools-v2", test::fixture("pools_v2.csv"), "--pools-v3", test::fixture("pools_v3.json"),
         "--lob", "binance=" + test::fixture("lob_binance.csv"), "--lob", "kraken=" + test::fixture("lob_kraken.csv"),
         "--gas", test::fixture("gas.csv"), "--wfees", test::fixture("wfees.csv"), "--out", "@", "--summary", "@s"},
        {"arb-scan", "--quotes", test::fixture("quotes.csv"), "--out", "@"},
        {"eq-fit", "--panel", test::fixture("equilibrium.csv"), "--out", "@"},
    };
    for (const auto& cmd : commands) {
        std::vector<std::string> outputs;
        for (int rep = 0; rep < 2; ++rep) {
            auto args = cmd;
            std::vector<std::string> files;
            for (auto& a : args) {
                if (a == "@" || a == "@s") {
                    a = tmp(cmd[0] + a.substr(1) + std::to_string(rep) + ".csv");
                    files.push_back(a);
                }
            }
            const auto r = run(args);
            REQUIRE(r.code == cli::exit_ok);
            std::string all = r.out;
            for (const auto& f : files) all += slurp(f);
            outputs.push_back(all);
        }
        CHECK(outputs[0] == outputs[1]);
        CHECK_FALSE(outputs[0].empty());
    }
}
