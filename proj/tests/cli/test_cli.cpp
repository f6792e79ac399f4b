// End-to-end tests of the command line tool. The binary path comes from the
// HETEROUR_CLI environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
    const char* p = std::getenv("HETEROUR_CLI");
    REQUIRE_MESSAGE(p != nullptr, "HETEROUR_CLI must point at the binary");
    return p;
}

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "heterour_cli_tests";
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    const auto dir = work_dir();
    const auto out_file = dir / "stdout.txt";
    const auto err_file = dir / "stderr.txt";
    const std::string cmd = cli_path() + " " + args + " >" + out_file.string() + " 2>" +
                            err_file.string();
    const int status = std::system(cmd.c_str());

    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream out(out_file);
    r.out.assign(std::istreambuf_iterator<char>(out), std::istreambuf_iterator<char>());
    std::ifstream err(err_file);
    r.err.assign(std::istreambuf_iterator<char>(err), std::istreambuf_iterator<char>());
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("simulate is deterministic and sized correctly") {
    const auto dir = work_dir();
    const auto a = dir / "sim_a.csv";
    const auto b = dir / "sim_b.csv";
    const std::string flags =
        "simulate --c 0 --vol constant --innov normal --T 100 --seed 1 --out ";
    CHECK(run(flags + a.string()).exit_code == 0);
    CHECK(run(flags + b.string()).exit_code == 0);
    const std::string text_a = slurp(a);
    CHECK(text_a == slurp(b));

    int lines = 0;
    for (char c : text_a) {
        lines += c == '\n' ? 1 : 0;
    }
    CHECK(lines == 101);  // header + T rows

    // presets are shorthand for the error-recursion coefficients
    const auto p1 = dir / "preset.csv";
    const auto p2 = dir / "theta.csv";
    CHECK(run("simulate --preset paper-ma1 --T 50 --seed 2 --out " + p1.string())
              .exit_code == 0);
    CHECK(run("simulate --theta 0.5 --phi 0 --T 50 --seed 2 --out " + p2.string())
              .exit_code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(run("simulate --preset bogus --T 50 --out " + p1.string()).exit_code == 2);
}

TEST_CASE("simulate rejects tiny samples with exit 2") {
    const auto out = (work_dir() / "sim_tiny.csv").string();
    const auto r = run("simulate --T 10 --out " + out);
    CHECK(r.exit_code == 2);
    CHECK(nlohmann::json::parse(r.err).contains("error"));
}

TEST_CASE("test subcommand emits the result schema") {
    const auto dir = work_dir();
    const auto csv = dir / "null_series.csv";
    REQUIRE(run("simulate --c 0 --vol one_shift --sigma1 5 --T 100 --seed 3 --out " +
                csv.string())
                .exit_code == 0);

    const auto r = run("test --input " + csv.string() +
                       " --stat all --B 49 --block 1 --seed 11");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["B"] == 49);
    CHECK(doc["b_used"] == 1);
    CHECK(doc["statistic"].contains("lt"));
    CHECK(doc["statistic"].contains("tt"));
    CHECK(doc["statistic"].contains("mz"));
    CHECK(doc["p_value"]["lt"].get<double>() >= 0.0);
    CHECK(doc["p_value"]["lt"].get<double>() <= 1.0);
    CHECK(doc["decision_at"].contains("0.05"));
}

TEST_CASE("demeaned test defaults to c_bar 7") {
    const auto dir = work_dir();
    const auto csv = dir / "mean_series.csv";
    REQUIRE(run("simulate --c 5 --T 100 --seed 9 --out " + csv.string()).exit_code == 0);
    const auto r = run("test --input " + csv.string() +
                       " --deterministic mean --stat lt --B 19 --block 1");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["deterministic"] == "mean");
    CHECK(doc["c_bar"] == 7.0);
}

TEST_CASE("malformed csv exits 2, short series exits 3") {
    const auto dir = work_dir();
    const auto bad = dir / "bad.csv";
    std::ofstream(bad) << "value\n1.0\ntwo\n";
    CHECK(run("test --input " + bad.string()).exit_code == 2);

    const auto missing = dir / "missing.csv";
    CHECK(run("test --input " + missing.string()).exit_code == 2);

    const auto tiny = dir / "tiny.csv";
    std::ofstream(tiny) << "value\n1\n2\n3\n4\n5\n";
    CHECK(run("test --input " + tiny.string() + " --B 19 --block 1").exit_code == 3);

    CHECK(run("test").exit_code == 2);                 // missing required flag
    CHECK(run("test --input x --stat zz").exit_code == 2);
}

TEST_CASE("volatility export and svg") {
    const auto dir = work_dir();
    const auto csv = dir / "vol_series.csv";
    REQUIRE(run("simulate --vol two_shifts --sigma1 4 --T 120 --seed 5 --out " +
                csv.string())
                .exit_code == 0);

    const auto sigma_csv = dir / "sigma.csv";
    const auto svg = dir / "sigma.svg";
    const auto r = run("volatility --input " + csv.string() + " --out " +
                       sigma_csv.string() + " --svg " + svg.string());
    CHECK(r.exit_code == 0);
    const std::string sigma_text = slurp(sigma_csv);
    CHECK(sigma_text.rfind("t,sigma_hat", 0) == 0);
    CHECK(slurp(svg).find("<polyline") != std::string::npos);

    // the test subcommand exports the same artifacts
    const auto sigma2 = dir / "sigma_from_test.csv";
    CHECK(run("test --input " + csv.string() + " --stat lt --B 19 --block 1 " +
              "--emit-volatility " + sigma2.string())
              .exit_code == 0);
    CHECK(slurp(sigma2) == sigma_text);
}

TEST_CASE("mc grid runs, caches, and resumes") {
    const auto dir = work_dir();
    const auto spec = dir / "exp.json";
    std::ofstream(spec) << R"({
        "n_reps": 4,
        "seed": 12,
        "alpha": 0.05,
        "grid": {"vol_case": ["one_shift"], "sigma1": [5.0], "innovation": ["normal"],
                 "T": [50], "c": [0.0, 10.0]},
        "test": {"stat": "lt", "B": 19, "block": 1}
    })";

    const auto out = dir / "rates.csv";
    const auto cache = dir / "mc_cache";
    std::filesystem::remove_all(cache);

    const auto first = run("mc " + spec.string() + " --out " + out.string() +
                           " --cache-dir " + cache.string());
    CHECK(first.exit_code == 0);
    CHECK(first.err.find("computed") != std::string::npos);

    const std::string csv_text = slurp(out);
    std::istringstream lines(csv_text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "vol_case,sigma1,innovation,T,c,stat,rate");
    int data_rows = 0;
    while (std::getline(lines, line)) {
        data_rows += line.empty() ? 0 : 1;
    }
    CHECK(data_rows == 2);  // 2 cells x 1 statistic

    const auto second = run("mc " + spec.string() + " --out " + out.string() +
                            " --cache-dir " + cache.string());
    CHECK(second.exit_code == 0);
    CHECK(second.err.find("computed") == std::string::npos);
    CHECK(second.err.find("cached") != std::string::npos);
    CHECK(slurp(out) == csv_text);
}

TEST_CASE("mc with an empty grid writes only the header") {
    const auto dir = work_dir();
    const auto spec = dir / "empty.json";
    std::ofstream(spec) << R"({"n_reps": 2, "grid": {}})";
    const auto out = dir / "empty.csv";
    CHECK(run("mc " + spec.string() + " --out " + out.string()).exit_code == 0);
    CHECK(slurp(out) == "vol_case,sigma1,innovation,T,c,stat,rate\n");
}
