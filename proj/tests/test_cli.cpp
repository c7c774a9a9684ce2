#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace stdfs = std::filesystem;

struct CliRun {
    int exit_code = -1;
    std::string output;
};

stdfs::path scratch_dir() {
    const auto dir = stdfs::temp_directory_path() / "fatshatter_cli_tests";
    stdfs::create_directories(dir);
    return dir;
}

void write_file(const stdfs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const stdfs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliRun run_cli(const std::string& args, const std::string& label) {
    const auto out_path = scratch_dir() / (label + ".out");
    const std::string command = std::string(FATSHATTER_CLI_PATH) + " " + args + " > " +
                                out_path.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    run.output = read_file(out_path);
    return run;
}

const char* kSimulateConfig = R"({
  "class": {"generator": "threshold", "grid": [0.2, 0.4, 0.6, 0.8], "thresholds": [0.0, 0.3, 0.5, 0.7, 1.0]},
  "epsilon": 0.25,
  "delta": 0.1,
  "m_values": [4, 8],
  "trials": 200,
  "seed": 17
})";

}  // namespace

TEST_CASE("simulate produces the documented CSV schema deterministically") {
    const auto config = scratch_dir() / "simulate.json";
    write_file(config, kSimulateConfig);

    const auto first = run_cli("simulate --config " + config.string(), "sim1");
    REQUIRE(first.exit_code == 0);
    CHECK(first.output.rfind("class_id,m,epsilon,trials,estimate,half_width,seed,mode\n", 0) ==
          0);
    CHECK(first.output.find("\"threshold-g4-t5\",4,0.25,200,") != std::string::npos);

    const auto second = run_cli("simulate --config " + config.string(), "sim2");
    CHECK(second.output == first.output);

    const auto threaded = run_cli("simulate --config " + config.string() + " --threads 8",
                                  "sim3");
    CHECK(threaded.output == first.output);

    const auto full = run_cli("simulate --config " + config.string() + " --full", "sim4");
    REQUIRE(full.exit_code == 0);
    CHECK(full.output.find("theorem_m") != std::string::npos);

    // A different seed changes the estimates but not the shape.
    const auto reseeded =
        run_cli("simulate --config " + config.string() + " --seed 99", "sim5");
    REQUIRE(reseeded.exit_code == 0);
    CHECK(reseeded.output != first.output);
}

TEST_CASE("dim, pack, chain, bound, and compare run end to end") {
    const auto config = scratch_dir() / "general.json";
    write_file(config, R"({
      "class": {"generator": "full_binary", "n": 3},
      "epsilon": 0.5,
      "delta": 0.05,
      "m": 3,
      "gamma_values": [0.1, 0.5],
      "epsilon_sweep": [0.5, 0.25, 0.125],
      "fat": 2,
      "seed": 7
    })");

    const auto dim = run_cli("dim --config " + config.string(), "dim");
    REQUIRE(dim.exit_code == 0);
    CHECK(dim.output.rfind("class_id,gamma,fat,vc\n", 0) == 0);
    CHECK(dim.output.find("\"full_binary-n3\",0.1,3,3") != std::string::npos);
    CHECK(dim.output.find("\"full_binary-n3\",0.5,3,3") != std::string::npos);

    const auto pack = run_cli("pack --config " + config.string(), "pack");
    REQUIRE(pack.exit_code == 0);
    CHECK(pack.output.find("separation_ok") != std::string::npos);
    CHECK(pack.output.find("true,true") != std::string::npos);

    const auto chain = run_cli("chain --config " + config.string() + " --dump-json " +
                                   (scratch_dir() / "chain.json").string(),
                               "chain");
    REQUIRE(chain.exit_code == 0);
    CHECK(chain.output.find("decomposition_ok") != std::string::npos);
    CHECK(read_file(scratch_dir() / "chain.json").find("net_points") != std::string::npos);

    const auto bound = run_cli("bound --config " + config.string(), "bound");
    REQUIRE(bound.exit_code == 0);
    CHECK(bound.output.rfind("class_id,epsilon,delta,c_tilde,C_tilde,kappa,theorem_m,", 0) ==
          0);

    const auto compare = run_cli("compare --config " + config.string(), "compare");
    REQUIRE(compare.exit_code == 0);
    CHECK(compare.output.rfind("epsilon,theorem_m,legacy_m,ratio\n", 0) == 0);
    CHECK(std::count(compare.output.begin(), compare.output.end(), '\n') == 4);
}

TEST_CASE("bound accepts an explicit kappa without a class") {
    const auto config = scratch_dir() / "kappa.json";
    write_file(config, R"({"epsilon": 1.0, "delta": 0.36787944117144233,
                           "range_width": 1.0, "kappa": 0})");
    const auto bound = run_cli("bound --config " + config.string(), "bound_kappa");
    REQUIRE(bound.exit_code == 0);
    CHECK(bound.output.find(",5368,") != std::string::npos);
}

TEST_CASE("exit codes distinguish config, size-limit, and parse failures") {
    CHECK(run_cli("simulate --config /nonexistent.json", "missing").exit_code == 2);

    const auto bad_delta = scratch_dir() / "bad_delta.json";
    write_file(bad_delta, R"({"class": {"generator": "full_binary", "n": 2},
                              "delta": 0.0, "m_values": [2]})");
    CHECK(run_cli("simulate --config " + bad_delta.string(), "bad_delta").exit_code == 2);

    const auto bad_syntax = scratch_dir() / "bad_syntax.json";
    write_file(bad_syntax, "{not json");
    CHECK(run_cli("dim --config " + bad_syntax.string(), "bad_syntax").exit_code == 2);

    // Exact enumeration far beyond the cap.
    const auto huge = scratch_dir() / "huge.json";
    write_file(huge, R"({"class": {"generator": "full_binary", "n": 12},
                         "epsilon": 0.25, "m_values": [64], "trials": 1, "seed": 1})");
    CHECK(run_cli("simulate --config " + huge.string() + " --exact", "huge").exit_code == 3);

    CHECK(run_cli("frobnicate", "unknown").exit_code == 2);
    CHECK(run_cli("dim", "noconfig").exit_code == 2);
}
