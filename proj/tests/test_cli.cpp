// End-to-end tests of the chlab binary: subcommands, exit codes, file
// formats and run-to-run determinism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

std::string temp_path(const std::string& name) {
    return std::string("chlab_cli_test_") + name;
}

CliResult run_cli(const std::string& args) {
    const std::string out_file = temp_path("stdout.txt");
    const std::string cmd = std::string(CHLAB_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    res.output = ss.str();
    std::remove(out_file.c_str());
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: models list and model describe") {
    const CliResult list = run_cli("models list");
    CHECK(list.exit_code == 0);
    for (const char* name : {"su2", "nil", "sl2", "family", "torus"})
        CHECK(list.output.find(name) != std::string::npos);

    const CliResult describe = run_cli("model describe sl2");
    CHECK(describe.exit_code == 0);
    CHECK(describe.output.find("[R,e1] = lambda e2") != std::string::npos);
    CHECK(describe.output.find("[e1,e2] = -2 R") != std::string::npos);

    const CliResult torus = run_cli("model describe torus");
    CHECK(torus.exit_code == 0);
    CHECK(torus.output.find("sin(m x3) dx1 + cos(m x3) dx2") != std::string::npos);

    const CliResult js = run_cli("models list --json");
    CHECK(js.exit_code == 0);
    const auto parsed = nlohmann::json::parse(js.output);
    CHECK(parsed.is_array());
    CHECK(parsed.size() == 5);

    CHECK(run_cli("model describe nosuch").exit_code == 1);
}

TEST_CASE("cli: check reports and exit codes") {
    SUBCASE("critical sl2 passes with energy 8") {
        const std::string out = temp_path("check_sl2.json");
        const CliResult res = run_cli("check --model sl2:lambda=1 --out " + out);
        CHECK(res.exit_code == 0);
        const auto j = nlohmann::json::parse(slurp(out));
        CHECK(j["energy"].get<double>() == doctest::Approx(8.0).epsilon(1e-12));
        CHECK(j["critical"].get<bool>());
        CHECK(j["curvature"]["k_reeb_stable"].get<double>() == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(j["invariants_ok"].get<bool>());
        std::remove(out.c_str());
    }
    SUBCASE("nil has zero energy") {
        const std::string out = temp_path("check_nil.json");
        const CliResult res = run_cli("check --model nil --out " + out);
        CHECK(res.exit_code == 0);
        const auto j = nlohmann::json::parse(slurp(out));
        CHECK(j["energy"].get<double>() <= 1e-13);
        CHECK(j["critical"].get<bool>());
        std::remove(out.c_str());
    }
    SUBCASE("torus flat metric is compatible but not critical") {
        const std::string out = temp_path("check_torus.json");
        const CliResult res = run_cli("check --model torus:m=1 --n 32 --out " + out);
        CHECK(res.exit_code == 0);
        const auto j = nlohmann::json::parse(slurp(out));
        CHECK(j["lambda_sq_min"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(j["lambda_sq_max"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(j["tanno_residual_l2"].get<double>() > 1.0);
        CHECK_FALSE(j["critical"].get<bool>());
        CHECK(j["invariants_ok"].get<bool>());
        std::remove(out.c_str());
    }
    SUBCASE("usage errors exit 1") {
        CHECK(run_cli("check --model bogus").exit_code == 1);
        CHECK(run_cli("check --model family:a=1").exit_code == 1);  // missing b
        CHECK(run_cli("check --model torus:m=0").exit_code == 1);
        CHECK(run_cli("check --model torus:m=1 --n 20").exit_code == 1);
        CHECK(run_cli("check --model torus:m=1 --fd-order 3").exit_code == 1);
        CHECK(run_cli("check --config /no/such/file.cfg").exit_code == 1);
        CHECK(run_cli("nosuchcommand").exit_code == 1);
    }
    SUBCASE("unreachable tolerance makes invariants fail with exit 2") {
        const CliResult res = run_cli("check --model torus:m=1 --n 16 --fd-order exact "
                                      "--tol 1e-300 --out " + temp_path("ignored.json"));
        CHECK(res.exit_code == 2);
        std::remove(temp_path("ignored.json").c_str());
    }
}

TEST_CASE("cli: optimize writes trace and summary") {
    const std::string trace = temp_path("opt_trace.csv");
    const std::string out = temp_path("opt_summary.json");

    SUBCASE("sl2 descent summary") {
        const CliResult res = run_cli("optimize --model sl2:lambda=1 --init-r 0.3 --init-u 0.2 "
                                      "--trace " + trace + " --out " + out);
        CHECK(res.exit_code == 0);
        const auto j = nlohmann::json::parse(slurp(out));
        CHECK(j["final_energy"].get<double>() == doctest::Approx(8.0).epsilon(1e-9));
        CHECK(j["converged"].get<bool>());
        CHECK(j["constraint_drift"].get<double>() == 0.0);

        std::ifstream in(trace);
        std::string header;
        std::getline(in, header);
        CHECK(header == "iter,energy,grad_norm,residual,step");
    }
    SUBCASE("critical initialization terminates at iteration zero") {
        const CliResult res = run_cli("optimize --model sl2:lambda=1 --trace " + trace +
                                      " --out " + out);
        CHECK(res.exit_code == 0);
        const auto j = nlohmann::json::parse(slurp(out));
        CHECK(j["iterations"].get<int>() == 0);
        CHECK(j["converged"].get<bool>());
    }
    SUBCASE("stall exits 3 and still writes the partial trace") {
        const CliResult res = run_cli("optimize --model sl2:lambda=1 --init-r 0.3 --shrink 0.99 "
                                      "--trace " + trace + " --out " + out);
        CHECK(res.exit_code == 3);
        const auto j = nlohmann::json::parse(slurp(out));
        CHECK(j["stalled"].get<bool>());
        CHECK(slurp(trace).find("iter,energy") == 0);
    }
    SUBCASE("torus run is deterministic for a fixed seed") {
        const std::string trace2 = temp_path("opt_trace2.csv");
        const std::string out2 = temp_path("opt_summary2.json");
        const std::string flags = "optimize --model torus:m=1 --n 8 --max-iter 12 --seed 42 "
                                  "--perturb 0.05 ";
        CHECK(run_cli(flags + "--trace " + trace + " --out " + out).exit_code == 0);
        CHECK(run_cli(flags + "--trace " + trace2 + " --out " + out2).exit_code == 0);
        CHECK(slurp(trace) == slurp(trace2));
        auto j1 = nlohmann::json::parse(slurp(out));
        auto j2 = nlohmann::json::parse(slurp(out2));
        j1.erase("wall_time_s");
        j2.erase("wall_time_s");
        CHECK(j1 == j2);
        // thread count must not change the numbers
        const std::string out3 = temp_path("opt_summary3.json");
        CHECK(run_cli("--threads 1 " + flags + "--trace " + trace2 + " --out " + out3).exit_code ==
              0);
        auto j3 = nlohmann::json::parse(slurp(out3));
        j3.erase("wall_time_s");
        CHECK(j1 == j3);
        std::remove(trace2.c_str());
        std::remove(out2.c_str());
        std::remove(out3.c_str());
    }
    std::remove(trace.c_str());
    std::remove(out.c_str());
}

TEST_CASE("cli: report summarizes traces") {
    const std::string trace = temp_path("rep_trace.csv");
    const std::string out = temp_path("rep_summary.json");
    REQUIRE(run_cli("optimize --model sl2:lambda=1 --init-r 0.3 --trace " + trace +
                    " --out /dev/null").exit_code == 0);
    const CliResult res = run_cli("report " + trace + " --out " + out);
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["monotone"].get<bool>());
    CHECK(j["final_energy"].get<double>() == doctest::Approx(8.0).epsilon(1e-9));

    // malformed input
    std::ofstream bad(trace);
    bad << "nonsense\n";
    bad.close();
    CHECK(run_cli("report " + trace).exit_code == 1);
    CHECK(run_cli("report no_such_file.csv").exit_code == 1);
    std::remove(trace.c_str());
    std::remove(out.c_str());
}

TEST_CASE("cli: config file provides defaults, flags override") {
    const std::string cfg = temp_path("config.cfg");
    const std::string out = temp_path("cfg_out.json");
    std::ofstream f(cfg);
    f << "model = nil\n";
    f << "out = " << out << "\n";
    f.close();

    CHECK(run_cli("check --config " + cfg).exit_code == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["model"].get<std::string>() == "nil");

    CHECK(run_cli("check --config " + cfg + " --model sl2:lambda=2").exit_code == 0);
    j = nlohmann::json::parse(slurp(out));
    CHECK(j["model"].get<std::string>() == "sl2:lambda=2");
    CHECK(j["energy"].get<double>() == doctest::Approx(32.0).epsilon(1e-12));

    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("cli: CHLAB_THREADS environment mirrors --threads") {
    const std::string out = temp_path("env_out.json");
    const std::string cmd = std::string("CHLAB_THREADS=2 ") + CHLAB_CLI_PATH +
                            " check --model sl2:lambda=1 --out " + out + " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["energy"].get<double>() == doctest::Approx(8.0).epsilon(1e-12));
    std::remove(out.c_str());
}
