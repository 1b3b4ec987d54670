#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Drives the installed binary end to end: exit codes, deterministic CSV
// bytes and the documented error surfaces.

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args, bool raw = false) {
    const std::string command =
        (raw ? args : std::string(LINDBLAD_LAB_BIN) + " " + args) + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "lindblad_lab_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

const char* kDephasingConfig = R"({
  "dim": 2,
  "lindblad": [{"op": "sigma_z"}],
  "initial": {"matrix": [[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]},
  "grid": {"t_start": 0, "t_end": 1, "dt": 0.001, "sample_stride": 100},
  "bounds": ["hilbert", "liouville", "dephasing_floor"],
  "steady_state": "dephased_diagonal"
})";

} // namespace

TEST_CASE("figures fig2 writes the pinned column set deterministically") {
    const fs::path dir = temp_dir() / "fig2";
    fs::remove_all(dir);

    const RunResult first = run_cli("figures fig2 --out " + dir.string());
    CHECK(first.exit_code == 0);
    const std::string bytes = slurp(dir / "fig2_entropy.csv");
    CHECK(bytes.find("t,S_exact,neg_log_purity,entropy_floor_eq14,"
                     "liouville_envelope,hilbert_envelope") != std::string::npos);
    CHECK(bytes.rfind("#", 0) == 0); // comment line first

    const RunResult second = run_cli("figures fig2 --out " + dir.string());
    CHECK(second.exit_code == 0);
    CHECK(slurp(dir / "fig2_entropy.csv") == bytes);
}

TEST_CASE("figures fig1 writes trajectories and bounds") {
    const fs::path dir = temp_dir() / "fig1";
    fs::remove_all(dir);
    const RunResult r = run_cli("figures fig1 --seed 7 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "fig1_trajectories.csv"));
    CHECK(fs::exists(dir / "fig1_bounds.csv"));
    const std::string bounds = slurp(dir / "fig1_bounds.csv");
    CHECK(bounds.find("dephasing_floor_eq12") != std::string::npos);
    CHECK(bounds.find("seed=7") != std::string::npos);

    const RunResult bad = run_cli("figures fig9 --out " + dir.string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("UnknownScenario") != std::string::npos);
}

TEST_CASE("simulate runs and rejects a too-coarse step") {
    const fs::path dir = temp_dir() / "simulate";
    fs::create_directories(dir);
    write(dir / "ok.json", kDephasingConfig);

    const fs::path out = dir / "traj.csv";
    const RunResult ok = run_cli("simulate " + (dir / "ok.json").string() + " --out " + out.string());
    CHECK(ok.exit_code == 0);
    const std::string bytes = slurp(out);
    CHECK(bytes.find("state_index,t,purity,purity_deviation,renyi2,vn_entropy") !=
          std::string::npos);

    // identical bytes on a re-run
    const RunResult again = run_cli("simulate " + (dir / "ok.json").string() + " --out " + out.string());
    CHECK(again.exit_code == 0);
    CHECK(slurp(out) == bytes);

    std::string coarse = kDephasingConfig;
    const auto pos = coarse.find("0.001");
    coarse.replace(pos, 5, "0.499");
    // raise the channel amplitude so RK4 is genuinely unstable at this dt
    const auto op_pos = coarse.find("{\"op\": \"sigma_z\"}");
    coarse.replace(op_pos, 17, "{\"op\": \"sigma_z\", \"scale\": 4.0}");
    write(dir / "coarse.json", coarse);
    const RunResult rejected = run_cli("simulate " + (dir / "coarse.json").string());
    CHECK(rejected.exit_code == 1);
    CHECK(rejected.output.find("StepRejected") != std::string::npos);

    write(dir / "broken.json", "{\"dim\": 2,");
    const RunResult parse_fail = run_cli("simulate " + (dir / "broken.json").string());
    CHECK(parse_fail.exit_code == 1);
    CHECK(parse_fail.output.find("ParseError") != std::string::npos);
}

TEST_CASE("bounds subcommand emits the envelope columns") {
    const fs::path dir = temp_dir() / "bounds";
    fs::create_directories(dir);
    write(dir / "cfg.json", kDephasingConfig);
    const fs::path out = dir / "bounds.csv";
    const RunResult r = run_cli("bounds " + (dir / "cfg.json").string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    const std::string bytes = slurp(out);
    CHECK(bytes.find("dephasing_floor") != std::string::npos);
    CHECK(bytes.find("config_fnv1a=") != std::string::npos);
}

TEST_CASE("compose reports the scaling factors") {
    const fs::path dir = temp_dir() / "compose";
    fs::create_directories(dir);
    write(dir / "cfg.json", kDephasingConfig);
    const fs::path out = dir / "compose.csv";
    const RunResult r = run_cli("compose " + (dir / "cfg.json").string() +
                                " --copies 2 --out " + out.string());
    CHECK(r.exit_code == 0);
    const std::string bytes = slurp(out);
    CHECK(bytes.find("copies,dim,hilbert_rate") != std::string::npos);
    CHECK(bytes.find("2,4,32,") != std::string::npos);
}

TEST_CASE("worker cap does not change the output bytes") {
    const fs::path dir = temp_dir() / "threads";
    fs::remove_all(dir);
    fs::create_directories(dir);
    write(dir / "cfg.json", R"({
      "dim": 2,
      "hamiltonian": [{"op": "sigma_x"}],
      "lindblad": [{"op": "sigma_z"}],
      "initial": {"sampler": "haar_pure", "seed": 3, "count": 8},
      "grid": {"t_start": 0, "t_end": 0.5, "dt": 0.001, "sample_stride": 100}
    })");
    const std::string base_cmd =
        "simulate " + (dir / "cfg.json").string() + " --out " + (dir / "t.csv").string();

    const RunResult serial = run_cli("LINDBLAD_LAB_THREADS=1 " LINDBLAD_LAB_BIN " " + base_cmd,
                                     /*raw=*/true);
    CHECK(serial.exit_code == 0);
    const std::string serial_bytes = slurp(dir / "t.csv");

    const RunResult parallel = run_cli("LINDBLAD_LAB_THREADS=4 " LINDBLAD_LAB_BIN " " + base_cmd,
                                       /*raw=*/true);
    CHECK(parallel.exit_code == 0);
    CHECK(slurp(dir / "t.csv") == serial_bytes);
}

TEST_CASE("verify --quick passes and reports per-check lines") {
    const RunResult r = run_cli("verify --quick");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[PASS]") != std::string::npos);
    CHECK(r.output.find("[FAIL]") == std::string::npos);
    CHECK(r.output.find("checks passed") != std::string::npos);
}
