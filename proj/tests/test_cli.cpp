#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <piqfc/report.hpp>

namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* env = std::getenv("PIQFC_BIN");
    REQUIRE_MESSAGE(env != nullptr, "PIQFC_BIN must point at the piqfc executable");
    return env;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " > cli_tmp/stdout.txt 2> cli_tmp/stderr.txt";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

const char* kSingleConfig = R"([source]
type = werner
p = 0.9
theta_deg = 10

[run]
plan = Minimal16
mean_pairs_per_setting = 2000
seed = 31337
bootstrap_resamples = 10
)";

struct TmpDir {
    TmpDir() {
        fs::remove_all("cli_tmp");
        fs::create_directory("cli_tmp");
    }
};

TmpDir& tmpdir() {
    static TmpDir dir;
    return dir;
}

} // namespace

TEST_CASE("simulate is deterministic and prints totals") {
    tmpdir();
    spit("cli_tmp/single.cfg", kSingleConfig);
    CHECK(run("simulate --config cli_tmp/single.cfg --out cli_tmp/rec1.txt") == 0);
    CHECK(slurp("cli_tmp/stdout.txt").find("total_counts") != std::string::npos);
    CHECK(run("simulate --config cli_tmp/single.cfg --out cli_tmp/rec2.txt") == 0);
    CHECK(slurp("cli_tmp/rec1.txt") == slurp("cli_tmp/rec2.txt"));

    // seed override changes the draw
    CHECK(run("simulate --config cli_tmp/single.cfg --seed 7 --out cli_tmp/rec3.txt") == 0);
    CHECK(slurp("cli_tmp/rec1.txt") != slurp("cli_tmp/rec3.txt"));
}

TEST_CASE("config validation failures exit with code 2") {
    tmpdir();
    spit("cli_tmp/bad_norm.cfg",
         "[source]\ntype = atom_photon\nalpha_re = 1\nbeta_re = 1\n"
         "[run]\nmean_pairs_per_setting = 10\nseed = 1\n");
    CHECK(run("simulate --config cli_tmp/bad_norm.cfg --out cli_tmp/x.txt") == 2);
    CHECK(slurp("cli_tmp/stderr.txt").find("alpha") != std::string::npos);

    CHECK(run("simulate --config cli_tmp/nonexistent.cfg --out cli_tmp/x.txt") == 2);
    CHECK(run("pipeline --config cli_tmp/nonexistent.cfg --out cli_tmp/x.json") == 2);
}

TEST_CASE("analyze produces a valid report and flags errors") {
    tmpdir();
    spit("cli_tmp/single.cfg", kSingleConfig);
    REQUIRE(run("simulate --config cli_tmp/single.cfg --out cli_tmp/rec.txt") == 0);
    CHECK(run("analyze --records cli_tmp/rec.txt --config cli_tmp/single.cfg "
              "--out cli_tmp/report.json") == 0);
    const auto doc = piqfc::read_report(slurp("cli_tmp/report.json"));
    CHECK(doc["arms"][0]["metrics"]["max_fidelity"].get<double>() > 0.8);

    // all-zero records over a complete plan: computation failure, exit 3
    std::string zeros;
    const double angles[4][2] = {{0, 0}, {0, 45}, {45, 22.5}, {45, 0}}; // H V D R
    for (const auto& s : angles)
        for (const auto& as : angles) {
            zeros += std::to_string(s[0]) + " " + std::to_string(s[1]) + " " +
                     std::to_string(as[0]) + " " + std::to_string(as[1]) + " 0 1\n";
        }
    spit("cli_tmp/zeros.txt", zeros);
    CHECK(run("analyze --records cli_tmp/zeros.txt --config cli_tmp/single.cfg "
              "--out cli_tmp/zr.json") == 3);
    CHECK(slurp("cli_tmp/stderr.txt").find("AllZeroCounts") != std::string::npos);
}

TEST_CASE("fit-efficiency fits calibration data and honors --target") {
    tmpdir();
    std::string data = "# pump power calibration\n";
    for (double p = 0.02; p < 0.31; p += 0.02) {
        const double eta = 0.34 * std::pow(std::sin(std::sqrt(8.4 * p)), 2);
        data += std::to_string(p) + " " + std::to_string(eta) + "\n";
    }
    spit("cli_tmp/eff.txt", data);

    CHECK(run("fit-efficiency --data cli_tmp/eff.txt --target 0.34 --out cli_tmp/fit.json") == 0);
    const auto fit = nlohmann::json::parse(slurp("cli_tmp/fit.json"));
    CHECK(fit["eta_max"].get<double>() == doctest::Approx(0.34).epsilon(1e-3));
    CHECK(fit["g_per_W"].get<double>() == doctest::Approx(8.4).epsilon(1e-3));
    CHECK(fit["target_power_W"].get<double>() == doctest::Approx(0.2937).epsilon(1e-2));

    CHECK(run("fit-efficiency --data cli_tmp/eff.txt --target 0.5") == 3);
    CHECK(slurp("cli_tmp/stderr.txt").find("UnreachableTarget") != std::string::npos);

    spit("cli_tmp/short.txt", "0.1 0.2\n0.2 0.3\n");
    CHECK(run("fit-efficiency --data cli_tmp/short.txt") == 2);
}

TEST_CASE("pipeline is byte-deterministic") {
    tmpdir();
    spit("cli_tmp/single.cfg", kSingleConfig);
    CHECK(run("pipeline --config cli_tmp/single.cfg --out cli_tmp/p1.json") == 0);
    CHECK(run("pipeline --config cli_tmp/single.cfg --out cli_tmp/p2.json") == 0);
    CHECK(slurp("cli_tmp/p1.json") == slurp("cli_tmp/p2.json"));
}

TEST_CASE("checked-in scenario reproduces its golden report") {
    tmpdir();
    const char* src = std::getenv("PIQFC_SOURCE_DIR");
    REQUIRE(src != nullptr);
    const fs::path cfg = fs::path(src) / "configs" / "reference_scenario.cfg";
    const fs::path golden = fs::path(src) / "configs" / "golden" / "reference_scenario.report.json";
    REQUIRE(fs::exists(cfg));
    REQUIRE_MESSAGE(fs::exists(golden),
                    "golden file missing; run the regenerate-golden target");

    CHECK(run("pipeline --config " + cfg.string() + " --out cli_tmp/golden_run.json") == 0);
    CHECK(slurp("cli_tmp/golden_run.json") == slurp(golden));
}
