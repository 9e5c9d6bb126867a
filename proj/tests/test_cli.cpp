#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccnet/io.hpp"
#include "ccnet/lattice.hpp"
#include "cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ccnet");
    std::ostringstream out, err;
    const int code = ccnet::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("cocycle commands reject r outside (0,1)") {
        const Run a = invoke({"lyapunov", "--r", "0"});
        CHECK(a.code == ccnet::cli::kExitDomain);
        CHECK(a.err.find("r:") != std::string::npos);
        CHECK(invoke({"xi-scaling", "--r", "1"}).code == ccnet::cli::kExitDomain);
        CHECK(invoke({"det-check", "--r", "0"}).code == ccnet::cli::kExitDomain);
    }

    TEST_CASE("usage errors name the field") {
        CHECK(invoke({}).code == ccnet::cli::kExitUsage);
        CHECK(invoke({"lyapunov", "--format", "xml"}).code == ccnet::cli::kExitUsage);
        const Run m = invoke({"lyapunov", "--M", "0"});
        CHECK(m.code == ccnet::cli::kExitUsage);
        CHECK(m.err.find("M:") != std::string::npos);
        const Run r = invoke({"bands", "--r", "1.5"});
        CHECK(r.code == ccnet::cli::kExitUsage);
        CHECK(r.err.find("r:") != std::string::npos);
        CHECK(invoke({"lyapunov", "--z-mod", "1", "2", "--z-arg", "0", "0.5", "1"}).code == ccnet::cli::kExitUsage);
        CHECK(invoke({"dump", "--what", "nothing"}).code == ccnet::cli::kExitUsage);
        CHECK(invoke({"--help"}).code == 0);
    }

    TEST_CASE("lyapunov CSV has the mean row, 2M exponents and is deterministic") {
        const std::vector<std::string> args{"lyapunov", "--r", "0.6", "--M", "2", "--steps", "20000", "--seed", "3"};
        const Run a = invoke(args), b = invoke(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        std::istringstream in(a.out);
        const auto recs = ccnet::read_csv(in);
        REQUIRE(recs.size() == 1);
        REQUIRE(recs[0].rows.size() == 5);
        CHECK(recs[0].rows[0].k == 0);
        CHECK(std::abs(recs[0].rows[0].value - 0.5 * std::log(1.0 / 0.48)) <= 0.02);
        CHECK(recs[0].status == "ok");
        CHECK(recs[0].xi_M.has_value());
    }

    TEST_CASE("seed lists, z pairs and JSON output") {
        const Run a = invoke({"lyapunov", "--r", "0.6", "--M", "1", "--steps", "20000", "--seed", "2", "1", "--z-mod", "1",
                              "--z-arg", "0", "0.2", "--format", "json"});
        REQUIRE(a.code == 0);
        std::istringstream in(a.out);
        const auto recs = ccnet::read_json_lines(in);
        REQUIRE(recs.size() == 4);
        CHECK(recs[0].z_arg_over_pi == 0.0);
        CHECK(recs[0].seed == 1);
        CHECK(recs[1].seed == 2);
        CHECK(recs[2].z_arg_over_pi == 0.2);
        CHECK(recs[0].extras.contains("mean_law_target"));
    }

    TEST_CASE("config file supplies values and flags win") {
        const auto path = temp_file("ccnet_cli_test.ini");
        {
            std::ofstream f(path);
            f << "r = 0.6\nM = 1\nsteps = 3000\nseed = 5\n";
        }
        const Run a = invoke({"lyapunov", "--config", path.string()});
        REQUIRE(a.code == 0);
        std::istringstream in(a.out);
        auto recs = ccnet::read_csv(in);
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].M == 1);
        CHECK(recs[0].n_steps == 3000);
        CHECK(recs[0].seed == 5);
        const Run b = invoke({"lyapunov", "--config", path.string(), "--M", "2"});
        std::istringstream in2(b.out);
        recs = ccnet::read_csv(in2);
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].M == 2);
        std::filesystem::remove(path);
    }

    TEST_CASE("worker count from the environment does not change results") {
        const std::vector<std::string> args{"lyapunov", "--r", "0.6", "0.8", "--M", "1", "--steps", "3000", "--seed-count", "3"};
        setenv("CCNET_WORKERS", "1", 1);
        const Run one = invoke(args);
        setenv("CCNET_WORKERS", "4", 1);
        const Run four = invoke(args);
        unsetenv("CCNET_WORKERS");
        REQUIRE(one.code == 0);
        CHECK(one.out == four.out);
    }

    TEST_CASE("output file, dump and table outputs") {
        const auto out = temp_file("ccnet_cli_bands.csv");
        const auto table = temp_file("ccnet_cli_bands_table.csv");
        const Run a = invoke({"bands", "--r", "0.6", "--M", "0", "--grid", "16", "--out", out.string(), "--table", table.string()});
        REQUIRE(a.code == 0);
        CHECK(a.out.empty());
        std::ifstream f(out);
        const auto recs = ccnet::read_csv(f);
        REQUIRE(recs.size() == 1);
        CHECK(std::abs(recs[0].rows[0].value - std::asin(0.96)) <= 1e-9);
        std::ifstream t(table);
        std::string header;
        std::getline(t, header);
        CHECK(header == "r,M,x,y,theta_1,theta_2");
        std::filesystem::remove(out);
        std::filesystem::remove(table);

        const Run d = invoke({"dump", "--what", "operator", "--r", "0.6", "--M", "2", "--L", "1"});
        REQUIRE(d.code == 0);
        std::istringstream din(d.out);
        const auto triplets = ccnet::read_triplets(din);
        CHECK(triplets.size() == 2u * 2u * 2u * 5u - 2u * 2u);
        const Run p = invoke({"dump", "--what", "phases", "--M", "1", "--L", "1"});
        CHECK(p.out.rfind("j,k,arg", 0) == 0);
    }

    TEST_CASE("det-check, dos and decay commands report ok") {
        const Run det = invoke({"det-check", "--r", "0.6", "--M", "2", "--L", "2", "--nz", "5", "--seed", "1", "2"});
        CHECK(det.code == 0);
        std::istringstream in(det.out);
        const auto recs = ccnet::read_csv(in);
        REQUIRE(recs.size() == 2);
        for (const auto& r : recs) {
            CHECK(r.status == "ok");
            for (const auto& row : r.rows) CHECK(row.value <= 1e-8);
        }
        const Run dos = invoke({"dos", "--M", "2", "--L", "6", "--seed-count", "3", "--K", "4"});
        CHECK(dos.code == 0);
        const Run decay = invoke({"decay", "--r", "0", "--M", "2", "--L", "6"});
        CHECK(decay.code == 0);
        CHECK(decay.out.find("compact-support") != std::string::npos);
    }

    TEST_CASE("verify quick mode passes") {
        const Run v = invoke({"verify", "--quick"});
        CHECK(v.code == 0);
        CHECK(v.out.find("FAIL") == std::string::npos);
        CHECK(v.out.find("all checks passed") != std::string::npos);
    }
}
