#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#ifndef PRIMESPLINE_CLI_PATH
#error "PRIMESPLINE_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto out_path = fs::temp_directory_path() / ("psp_cli_" + std::to_string(counter++));
    const std::string cmd = std::string(PRIMESPLINE_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(out_path);
    return RunResult{WEXITSTATUS(status), ss.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval prints a bare value") {
    const auto r = run_cli("eval --fn p --x 25 --limit 10000");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "97\n");
}

TEST_CASE("triplet census emits exactly five data rows") {
    const auto r = run_cli("triplets --count 1000 --csv --limit 10000");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "i,p_im1,p_i,p_ip1,d,violates");
    CHECK(split_csv(rows[1])[1] == "2969");
    CHECK(split_csv(rows[5])[3] == "7789");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto fields = split_csv(rows[k]);
        REQUIRE(fields.size() == 6);
        CHECK(std::stod(fields[4]) >= 0.0);
        CHECK(fields[5] == "1");
    }
}

TEST_CASE("sieve output and file writing") {
    const auto r = run_cli("sieve --limit 10");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2 3 5 7\n");

    const auto path = fs::temp_directory_path() / "psp_sieve_out.txt";
    const auto r2 = run_cli("sieve --limit 100 --out " + path.string());
    CHECK(r2.exit_code == 0);
    std::ifstream in(path);
    std::vector<long long> primes;
    long long v;
    while (in >> v) primes.push_back(v);
    CHECK(primes.size() == 25);
    CHECK(primes.back() == 97);
    fs::remove(path);
}

TEST_CASE("exit codes") {
    CHECK(run_cli("sieve --limit 1").exit_code == 1);                      // domain error
    CHECK(run_cli("--bogus-flag sieve --limit 10").exit_code == 2);        // usage error
    CHECK(run_cli("eval --fn pinv --x 10 --spline cubic --limit 1000").exit_code == 1);
    CHECK(run_cli("eval --fn nope --x 1").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("grid output parses back as CSV") {
    const auto r = run_cli("eval --fn p --grid 2:10:0.5 --csv --limit 1000");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 18);   // header + 17 grid points
    CHECK(rows[0] == "x,p");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto fields = split_csv(rows[k]);
        REQUIRE(fields.size() == 2);
        (void)std::stod(fields[0]);
        (void)std::stod(fields[1]);
    }
    CHECK(split_csv(rows[5])[0] == "4");
    CHECK(split_csv(rows[5])[1] == "7");
}

TEST_CASE("table1 rows match known coefficients") {
    const auto r = run_cli("table1 --from 2 --to 2 --csv --limit 100");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1] == "2,3,0,1,1,1,2,-7,9,-23");
}

TEST_CASE("compare columns") {
    const auto r = run_cli("compare --from 10 --to 20 --step 5 --limit 1000");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "x,pi,pinv,li,R");
    const auto f = split_csv(rows[1]);
    CHECK(f[0] == "10");
    CHECK(f[1] == "4");
    CHECK(std::stod(f[2]) == doctest::Approx(4.0 + 2.0 / 3.0));
}

TEST_CASE("variance emits a zero-anchored window") {
    const auto r = run_cli("variance --kind A --x0 154.78 --eps 13.42 --step 0.01 --limit 20000");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() > 1000);
    CHECK(rows[0] == "x,A");
    CHECK(std::stod(split_csv(rows[1])[1]) == 0.0);
}

TEST_CASE("newton trace is a CSV of iterates") {
    const auto r = run_cli("eval --fn pinv --x 97 --backend newton --trace --limit 10000");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    CHECK(rows[0] == "k,y,residual,eps");
    REQUIRE(rows.size() >= 3);
    const auto last = split_csv(rows.back());
    CHECK(std::stod(last[1]) == doctest::Approx(25.0).epsilon(1e-8));
}

TEST_CASE("solve runs the twin preset end to end") {
    const auto cfg_path = fs::temp_directory_path() / "psp_twin.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"preset":"quasi_pythagorean_twin","penalty":"primes","seed":1,)"
            << R"("restarts":40,"max_extractions":20,"prime_limit":2000})";
    }
    const auto r = run_cli("solve --config " + cfg_path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FOUND SOLUTIONS (5 extractions") != std::string::npos);
    for (const char* tuple : {"(5, 5, 7)", "(11, 7, 13)", "(29, 11, 31)", "(41, 13, 43)",
                              "(71, 17, 73)"})
        CHECK(r.out.find(tuple) != std::string::npos);

    SUBCASE("json emission") {
        const auto rj = run_cli("solve --config " + cfg_path.string() + " --json");
        CHECK(rj.exit_code == 0);
        CHECK(rj.out.find("\"rounded\"") != std::string::npos);
        CHECK(rj.out.find("\"seed\": 1") != std::string::npos);
    }
    SUBCASE("malformed config exits 2") {
        const auto bad_path = fs::temp_directory_path() / "psp_bad.json";
        std::ofstream(bad_path) << "{oops";
        CHECK(run_cli("solve --config " + bad_path.string()).exit_code == 2);
        fs::remove(bad_path);
    }
    fs::remove(cfg_path);
}

TEST_CASE("solve accepts a domain override on a preset") {
    const auto cfg_path = fs::temp_directory_path() / "psp_twin_small.json";
    {
        std::ofstream cfg(cfg_path);
        // shrink the box so only (5,5,7) and (11,7,13) survive
        cfg << R"({"preset":"quasi_pythagorean_twin","penalty":"primes","seed":2,)"
            << R"("domain":{"lo":[2,2,2],"hi":[20,20,20]},"prime_limit":2000})";
    }
    const auto r = run_cli("solve --config " + cfg_path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FOUND SOLUTIONS (2 extractions") != std::string::npos);
    CHECK(r.out.find("(5, 5, 7)") != std::string::npos);
    CHECK(r.out.find("(11, 7, 13)") != std::string::npos);
    fs::remove(cfg_path);
}

TEST_CASE("figures land in the output directory") {
    const auto dir = fs::temp_directory_path() / "psp_figs";
    const auto r = run_cli("figures --which 7 --out " + dir.string() + " --limit 20000");
    CHECK(r.exit_code == 0);
    std::ifstream in(dir / "fig7.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,A");
    std::size_t count = 0;
    std::string line;
    while (std::getline(in, line)) ++count;
    CHECK(count > 13000);
    fs::remove_all(dir);
}

TEST_CASE("primes file source via environment variable") {
    const auto path = fs::temp_directory_path() / "psp_env_primes.txt";
    std::ofstream(path) << "2 3 5 7 11 13 17 19 23 29\n";
    const std::string cmd = "PRIMESPLINE_PRIMES=" + path.string() + " " +
                            std::string(PRIMESPLINE_CLI_PATH) + " eval --fn p --x 9";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[64] = {0};
    REQUIRE(fgets(buf, sizeof buf, pipe) != nullptr);
    pclose(pipe);
    CHECK(std::string(buf) == "23\n");
    fs::remove(path);
}

}  // TEST_SUITE
