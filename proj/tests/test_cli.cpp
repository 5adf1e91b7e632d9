#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = MMAX_CLI_PATH;
const std::string kCatalog = std::string(MMAX_DATA_DIR) + "/groningen.csv";
const std::string kPaperArgs =
    " --bbox 53.1,6.5,53.5,7.0 --date-range 1986-12-01:2016-12-31 --t-min 1.5";

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("mmax_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int count_data_rows(const fs::path& csv) {
    std::ifstream in(csv);
    std::string line;
    int rows = -1;  // skip header
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    return rows;
}

}  // namespace

TEST_CASE("cli: catalog summarizes the paper sample deterministically") {
    fs::path d1 = fresh_dir("cat1"), d2 = fresh_dir("cat2");
    std::string base = "catalog --input " + kCatalog + kPaperArgs + " --seed 7";
    REQUIRE(run(base + " --out-dir " + d1.string()) == 0);
    REQUIRE(run(base + " --out-dir " + d2.string()) == 0);

    std::string summary = slurp(d1 / "summary.json");
    CHECK(summary.find("\"n\": 250") != std::string::npos);
    CHECK(fs::exists(d1 / "run_manifest.txt"));
    // identical sample file across runs with the same seed
    CHECK(slurp(d1 / "sample.csv") == slurp(d2 / "sample.csv"));

    fs::path d3 = fresh_dir("cat3");
    REQUIRE(run("catalog --input " + kCatalog + kPaperArgs + " --seed 8 --out-dir " +
                d3.string()) == 0);
    CHECK(slurp(d1 / "sample.csv") != slurp(d3 / "sample.csv"));
}

TEST_CASE("cli: missing input file fails with nonzero exit") {
    CHECK(run("catalog --input /nonexistent/file.csv --out-dir " +
              fresh_dir("missing").string()) != 0);
}

TEST_CASE("cli: estimate honours the estimator filter") {
    fs::path d = fresh_dir("est_rw");
    REQUIRE(run("estimate --input " + kCatalog + kPaperArgs +
                " --estimators rw --out-dir " + d.string()) == 0);
    CHECK(count_data_rows(d / "estimates.csv") == 1);
    std::string csv = slurp(d / "estimates.csv");
    CHECK(csv.find("rw,") != std::string::npos);
}

TEST_CASE("cli: estimate at k=125 emits the headline estimates") {
    fs::path d = fresh_dir("est125");
    REQUIRE(run("estimate --input " + kCatalog + kPaperArgs + " --k 125 --out-dir " +
                d.string()) == 0);
    std::string summary = slurp(d / "summary.json");
    for (const char* key : {"\"npg\"", "\"npos\"", "\"rw\"", "\"rwc\"", "\"ks\"",
                            "\"beta\""}) {
        CHECK(summary.find(key) != std::string::npos);
    }
    CHECK(count_data_rows(d / "estimates.csv") >= 9);
}

TEST_CASE("cli: bounds emits the inf token when Pisarenko diverges") {
    fs::path d = fresh_dir("bnd");
    REQUIRE(run("bounds --input " + kCatalog + kPaperArgs +
                " --alpha 0.05 --out-dir " + d.string()) == 0);
    std::string csv = slurp(d / "bounds.csv");
    CHECK(csv.find("inf") != std::string::npos);
    std::string summary = slurp(d / "summary.json");
    CHECK(summary.find("\"pisarenko_bound\": \"inf\"") != std::string::npos);
}

TEST_CASE("cli: bounds rejects alpha outside (0,1)") {
    fs::path d = fresh_dir("badalpha");
    CHECK(run("bounds --input " + kCatalog + kPaperArgs + " --alpha 1.5 --out-dir " +
              d.string()) != 0);
    CHECK(run("bounds --input " + kCatalog + kPaperArgs + " --alpha 0 --out-dir " +
              d.string()) != 0);
}

TEST_CASE("cli: diagnose output is stable under input row permutation") {
    // shuffle the data rows of the catalog file
    fs::path work = fresh_dir("perm");
    fs::path permuted = work / "permuted.csv";
    {
        std::ifstream in(kCatalog);
        std::string header, line;
        std::getline(in, header);
        std::vector<std::string> rows;
        while (std::getline(in, line)) {
            if (!line.empty()) rows.push_back(line);
        }
        std::reverse(rows.begin(), rows.end());
        std::ofstream out(permuted);
        out << header << "\n";
        for (const auto& r : rows) out << r << "\n";
    }
    fs::path d1 = work / "orig", d2 = work / "perm";
    REQUIRE(run("diagnose --input " + kCatalog + kPaperArgs + " --seed 3 --out-dir " +
                d1.string()) == 0);
    REQUIRE(run("diagnose --input " + permuted.string() + kPaperArgs +
                " --seed 3 --out-dir " + d2.string()) == 0);
    for (const char* f : {"qq_exponential.csv", "qq_pareto.csv", "mean_excess.csv",
                          "truncation_tests.csv"}) {
        CHECK(slurp(d1 / f) == slurp(d2 / f));
    }
}

TEST_CASE("cli: diagnose truncation tests flag the Groningen tail") {
    fs::path d = fresh_dir("diag");
    REQUIRE(run("diagnose --input " + kCatalog + kPaperArgs + " --out-dir " +
                d.string()) == 0);
    std::ifstream in(d / "truncation_tests.csv");
    std::string line;
    std::getline(in, line);  // header: kind,k,statistic,p_value,reject
    int checked = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string kind, kstr, stat, p;
        std::getline(ss, kind, ',');
        std::getline(ss, kstr, ',');
        std::getline(ss, stat, ',');
        std::getline(ss, p, ',');
        int k = std::stoi(kstr);
        if (kind == "pareto" && k >= 75 && k <= 200) {
            CHECK(std::stod(p) < 0.10);
            ++checked;
        }
    }
    CHECK(checked == 126);
}

TEST_CASE("cli: simulate is deterministic and emits the three metric files") {
    fs::path d1 = fresh_dir("sim1"), d2 = fresh_dir("sim2");
    std::string base =
        "simulate --replicates 25 --sample-size 100 --k 50 --T 3.75 --seed 42";
    REQUIRE(run(base + " --out-dir " + d1.string()) == 0);
    REQUIRE(run(base + " --out-dir " + d2.string()) == 0);
    for (const char* f : {"relative_mean.csv", "relative_mse.csv", "coverage.csv"}) {
        CHECK(fs::exists(d1 / f));
        CHECK(slurp(d1 / f) == slurp(d2 / f));
    }
}

TEST_CASE("cli: simulate single replicate is valid") {
    fs::path d = fresh_dir("sim_one");
    REQUIRE(run("simulate --replicates 1 --sample-size 50 --k 25 --T 3.75 "
                "--seed 9 --out-dir " + d.string()) == 0);
    CHECK(count_data_rows(d / "relative_mean.csv") >= 1);
}
