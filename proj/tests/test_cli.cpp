#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "plcnet/cli.hpp"
#include "plcnet/results_csv.hpp"

using namespace plcnet;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("plcnet_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("sweep-single emits header and rows") {
    const auto r = run({"sweep-single", "--protocols", "epmac", "--n", "50", "--ratios", "1.0", "--trials", "1",
                        "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == csv::kHeader);
    CHECK(ls[1].rfind("epmac,50,1,0,", 0) == 0);
}

TEST_CASE("sweep output is byte identical across runs and worker counts") {
    const std::vector<std::string> args{"sweep-single", "--n", "30", "60", "--ratios", "0.5", "1.5",
                                        "--trials", "3", "--seed", "9"};
    const auto a = run(args);
    const auto b = run(args);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--jobs", "3"});
    const auto c = run(threaded);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(lines(a.out).size() == 1 + 3 * 2 * 2 * 3);
}

TEST_CASE("protocol lists accept commas") {
    const auto r = run({"sweep-single", "--protocols", "pmac,ieee1901", "--n", "10", "--ratios", "1", "--trials", "2"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).size() == 5);
}

TEST_CASE("sweep-multi rows and layer cap") {
    const auto r = run({"sweep-multi", "--n", "200", "--ratios", "1.0", "--trials", "5", "--seed", "1"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto rows = csv::read_rows(in);
    CHECK(rows.size() == 15);
    for (const auto& row : rows) CHECK(row.layers <= 6);

    const auto random = run({"sweep-multi", "--n", "100", "--ratio-random", "0.5", "2", "--trials", "6"});
    REQUIRE(random.code == 0);
    std::istringstream in2(random.out);
    for (const auto& row : csv::read_rows(in2)) {
        CHECK(row.ratio >= 0.5);
        CHECK(row.ratio <= 2.0);
    }
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"sweep-single", "--bogus"}).code == cli::kUsage);
    CHECK(run({"sweep-single", "--protocols", "aloha"}).code == cli::kUsage);
    CHECK(run({"sweep-single", "--trials", "0"}).code == cli::kUsage);
    CHECK(run({"sweep-single", "--n", "5", "--n-range", "1", "5", "1"}).code == cli::kUsage);
    CHECK(run({"sweep-single", "--csma-p", "1.5"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"summarize", "/nonexistent/file.csv"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("non-termination exits with 3") {
    const auto r = run({"sweep-single", "--n", "50", "--ratios", "0.5", "--trials", "1", "--max-nc", "1"});
    CHECK(r.code == cli::kSimulation);
    CHECK(r.err.find("networking cycles") != std::string::npos);
}

TEST_CASE("summarize") {
    const auto one = temp_file("one.csv", std::string(csv::kHeader) + "\nepmac,10,1,0,12345,2,20,30,1\n");
    auto r = run({"summarize", one.string()});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[1] == "epmac,10,all,1,12345.0,12345.0,12345.0,12345.0,12345.0,12345.0");

    const auto sweep = run({"sweep-single", "--n", "50", "150", "--trials", "5"});
    REQUIRE(sweep.code == 0);
    const auto file = temp_file("sweep.csv", sweep.out);
    r = run({"summarize", file.string(), "--best-ratio"});
    REQUIRE(r.code == 0);
    ls = lines(r.out);
    CHECK(ls.size() == 1 + 3 * 2);

    r = run({"summarize", file.string(), "--by-ratio"});
    ls = lines(r.out);
    CHECK(ls.size() == 1 + 3 * 2 * 7);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::vector<double> v;
        std::istringstream in(ls[i]);
        std::string field;
        for (int f = 0; std::getline(in, field, ','); ++f) {
            if (f >= 4) v.push_back(std::stod(field));
        }
        REQUIRE(v.size() == 6);  // mean, min, q1, median, q3, max
        CHECK(v[1] <= v[2]);
        CHECK(v[2] <= v[3]);
        CHECK(v[3] <= v[4]);
        CHECK(v[4] <= v[5]);
    }

    const auto bad = temp_file("bad.csv", "not,a,header\n");
    CHECK(run({"summarize", bad.string()}).code == cli::kUsage);
}

TEST_CASE("best ratio picks the lowest mean") {
    std::vector<engine::ResultRow> rows{
        {Protocol::PMAC, 10, 0.5, 0, 300, 1, 1, 1, 1}, {Protocol::PMAC, 10, 1.0, 0, 100, 1, 1, 1, 1},
        {Protocol::PMAC, 10, 2.0, 0, 200, 1, 1, 1, 1}, {Protocol::PMAC, 20, 1.0, 0, 900, 1, 1, 1, 1},
    };
    const auto g = cli::summarize_rows(rows, false, true);
    REQUIRE(g.size() == 2);
    CHECK(*g[0].ratio == 1.0);
    CHECK(g[0].stats.mean == 100);
    CHECK(g[1].n_node == 20);
}

TEST_CASE("config file supplies defaults and flags win") {
    const auto cfg = temp_file("run.cfg",
                               "# sweep defaults\n"
                               "protocols = pmac\n"
                               "n = 12 24\n"
                               "ratios = 1.0\n"
                               "trials = 2\n"
                               "seed = 5\n");
    auto r = run({"sweep-single", "--config", cfg.string()});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 1 + 2 * 2);

    r = run({"sweep-single", "--config", cfg.string(), "--trials", "3"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 1 + 2 * 3);

    const auto unknown = temp_file("bad.cfg", "warp = 9\n");
    CHECK(run({"sweep-single", "--config", unknown.string()}).code == cli::kUsage);

    const auto parsed = cli::parse_config("a = 1\n  --b=two words # note\n\n");
    CHECK(parsed.at("a") == "1");
    CHECK(parsed.at("b") == "two words");
}

TEST_CASE("timing table report") {
    const auto r = run({"timing"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("12555.84") != std::string::npos);
    CHECK(r.out.find("24512.40") != std::string::npos);
    CHECK(r.out.find("preamble_slot_us = 400") != std::string::npos);
    CHECK(r.out.find("9102") != std::string::npos);
}

TEST_CASE("complexity table") {
    const auto r = run({"complexity", "--m-max", "10", "--k-max", "3"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    CHECK(ls.size() == 1 + 9 * 3);
    CHECK(std::find(ls.begin(), ls.end(), "2,2,34,16,yes,3.0000,1.0000,5") != ls.end());
    CHECK(std::find(ls.begin(), ls.end(), "2,1,6,4,yes,1.0000,-2.0000,2") != ls.end());
    CHECK(std::find(ls.begin(), ls.end(), "10,3,10050,1752,yes,7.4757,7.4667,8") != ls.end());
}

TEST_CASE("tree dump") {
    const auto r = run({"tree", "--n", "30", "--seed", "4"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 30);
}
