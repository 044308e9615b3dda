// End-to-end tests against the built CLI binary (path injected by CMake).

#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "mcpt/models.hpp"
#include "mcpt/perturbation.hpp"

#ifndef MCPT_CLI_PATH
#error "MCPT_CLI_PATH must be defined by the build"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/mcpt_cli_test_out.txt";
    const std::string err_path = "/tmp/mcpt_cli_test_err.txt";
    const std::string cmd =
        std::string(MCPT_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

const char* write_two_level() {
    static const char* path = "/tmp/mcpt_cli_two_level.json";
    std::ofstream f(path);
    f << R"({"dim": 2, "h0": [[0,0],[0,0],[0,0],[2,0]], "v": [[0,0],[1,0],[1,0],[0,0]]})";
    return path;
}

}  // namespace

TEST_CASE("perturb on the two-level file emits the exact series") {
    const std::string args =
        std::string("perturb --problem ") + write_two_level() + " --order 4 --format json";
    const RunResult r = run_cli(args);
    REQUIRE(r.exit_code == 0);

    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["command"] == "perturb");
    CHECK(doc["dim"] == 2);
    const auto& orders = doc["orders"];
    REQUIRE(orders.size() == 5);
    const double expected[5] = {0.0, 0.0, -0.5, 0.0, 0.125};
    for (int k = 0; k <= 4; ++k) {
        CHECK(std::abs(orders[k]["energy"][0].get<double>() - expected[k]) <= 1e-10);
        CHECK(std::abs(orders[k]["energy"][1].get<double>()) <= 1e-12);
    }
    // round-trip: psi vectors parse back to the exact doubles
    CHECK(std::abs(orders[1]["psi"][1][0].get<double>() - (-0.5)) <= 1e-14);
}

TEST_CASE("json output round-trips the in-memory series exactly") {
    // The CLI runs the same deterministic pipeline, so parsed numbers must
    // equal the library's doubles bit for bit.
    const RunResult r = run_cli(
        "perturb --model random --n 5 --seed 31 --order 3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);

    const auto pair = mcpt::models::random_dense(5, 31);
    const auto problem = mcpt::PerturbationProblem::build(
        pair.h0, pair.v, mcpt::EigenSelector::by_index(0));
    const auto series = mcpt::corrections(problem, 3);
    for (int k = 1; k <= 3; ++k) {
        const auto& row = doc["orders"][k];
        const auto& ord = series.orders[std::size_t(k - 1)];
        CHECK(row["energy"][0].get<double>() == ord.energy.real());
        CHECK(row["energy"][1].get<double>() == ord.energy.imag());
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(row["psi"][i][0].get<double>() == ord.vector[i].real());
            CHECK(row["psi"][i][1].get<double>() == ord.vector[i].imag());
        }
    }
}

TEST_CASE("energy selector picks the nearest level") {
    const std::string args = std::string("perturb --problem ") + write_two_level() +
                             " --order 1 --select energy:1.9 --format json";
    const RunResult r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["orders"][0]["energy"][0].get<double>() == 2.0);

    const RunResult bad = run_cli("perturb --model random --n 4 --seed 2 --select nonsense");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("identical invocations are byte-identical") {
    const std::string args =
        std::string("perturb --model random --n 6 --seed 11 --order 3 --format json");
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("csv output shape") {
    const std::string args =
        std::string("perturb --problem ") + write_two_level() + " --order 2 --format csv";
    const RunResult r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "k,energy_re,energy_im,psi_norm,overlap_re,overlap_im");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        CHECK(line.find(';') == std::string::npos);
    }
    CHECK(rows == 3);
}

TEST_CASE("degenerate input exits with code 2 and a machine-parsable record") {
    const char* path = "/tmp/mcpt_cli_degenerate.json";
    {
        std::ofstream f(path);
        f << R"({"dim": 2, "h0": [[1,0],[0,0],[0,0],[1,0]], "v": [[0,0],[1,0],[1,0],[0,0]]})";
    }
    const RunResult r = run_cli(std::string("perturb --problem ") + path + " --order 2");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("mcpt-error code=2 kind=DegenerateLevel") != std::string::npos);
}

TEST_CASE("oscillator first order through the CLI") {
    const RunResult r =
        run_cli("perturb --model oscillator-quartic --n 200 --order 1 --format csv");
    REQUIRE(r.exit_code == 0);
    // last row holds E^(1)
    const auto pos = r.out.rfind("\n1,");
    REQUIRE(pos != std::string::npos);
    const double e1 = std::stod(r.out.substr(pos + 3));
    CHECK(std::abs(e1 - 0.75) <= 1e-6);
}

TEST_CASE("verify subcommand") {
    SUBCASE("random system passes") {
        const RunResult r = run_cli("verify --model random --n 6 --seed 42 --trials 100");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("PASS") != std::string::npos);
    }

    SUBCASE("one-dimensional edge case runs") {
        const RunResult r = run_cli("verify --model random --n 1 --seed 5 --trials 20");
        CHECK(r.exit_code == 0);
    }

    SUBCASE("corrupted hermitian input exits 1 with a report") {
        const char* path = "/tmp/mcpt_cli_corrupt.json";
        {
            std::ofstream f(path);
            f << R"({"dim": 2, "h0": [[0,0],[1,0],[1,0.001],[2,0]], "v": [[0,0],[0,0],[0,0],[0,0]]})";
        }
        const RunResult r = run_cli(std::string("verify --problem ") + path);
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("hermiticity") != std::string::npos);
    }
}

TEST_CASE("diagrams subcommand") {
    SUBCASE("order 3 lists four trees with the factor-2 weights") {
        const RunResult r = run_cli("diagrams --order 3 --format json");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["count"] == 4);
        int twos = 0;
        for (const auto& d : doc["diagrams"])
            if (std::abs(d["coefficient"].get<long long>()) == 2) ++twos;
        CHECK(twos == 2);
    }

    SUBCASE("sum residual against a problem") {
        const std::string args = std::string("diagrams --order 2 --problem ") +
                                 write_two_level() + " --format json";
        const RunResult r = run_cli(args);
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["sum_residual"].get<double>() <= 1e-11);
    }

    SUBCASE("dot output starts a digraph") {
        const RunResult r = run_cli("diagrams --order 2 --format dot");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.rfind("digraph", 0) == 0);
        CHECK(r.out.find("->") != std::string::npos);
    }

    SUBCASE("order out of range exits 1") {
        const RunResult r = run_cli("diagrams --order 9");
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("oracle subcommand") {
    SUBCASE("random 8x8 passes with defaults") {
        const RunResult r = run_cli("oracle --model random --n 8 --seed 7 --order 4");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("PASS") != std::string::npos);
    }

    SUBCASE("near-degenerate pair exits 4") {
        const char* path = "/tmp/mcpt_cli_neardeg.json";
        {
            std::ofstream f(path);
            f << R"({"dim": 3,
                     "h0": [[0,0],[0,0],[0,0],[0,0],[1e-6,0],[0,0],[0,0],[0,0],[2,0]],
                     "v": [[0,0],[1,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})";
        }
        const RunResult r =
            run_cli(std::string("oracle --problem ") + path + " --order 2 --kernel-tol 1e-9");
        CHECK(r.exit_code == 4);
        CHECK(r.err.find("kind=TrackingFailure") != std::string::npos);
    }

    SUBCASE("zero perturbation passes trivially") {
        const char* path = "/tmp/mcpt_cli_zero_v.json";
        {
            std::ofstream f(path);
            f << R"({"dim": 2, "h0": [[0,0],[0,0],[0,0],[2,0]], "v": [[0,0],[0,0],[0,0],[0,0]]})";
        }
        const RunResult r = run_cli(std::string("oracle --problem ") + path + " --order 3");
        CHECK(r.exit_code == 0);
    }
}

TEST_CASE("output lands in --out instead of stdout") {
    const std::string out_file = "/tmp/mcpt_cli_out_target.json";
    const std::string args = std::string("perturb --problem ") + write_two_level() +
                             " --order 1 --format json --out " + out_file;
    const RunResult r = run_cli(args);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    const auto doc = nlohmann::json::parse(slurp(out_file));
    CHECK(doc["command"] == "perturb");
    std::remove(out_file.c_str());
}
