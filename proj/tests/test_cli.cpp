#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "cli_runner.hpp"

using namespace testing;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

// Data rows of a CSV file (comment header and column line removed).
std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
    std::istringstream in(read_text(path));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("usage and config errors", "[cli]") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("report").exit_code == 1);
    CHECK(run_cli("-c /nonexistent.conf report").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK_THAT(run_cli("--version").out, ContainsSubstring("squidqnd"));

    const auto dir = scratch_dir("cli_cfg");
    const auto no_b = example_with(dir, "", "B");
    const auto r = run_cli("-c " + quote(no_b) + " -o " + quote((dir / "out").string()) + " report");
    CHECK(r.exit_code == 2);
    CHECK_THAT(r.err, ContainsSubstring("missing required key 'B'"));
    CHECK_FALSE(fs::exists(dir / "out" / "report.json"));

    const auto plain = example_with(dir, "");
    CHECK(run_cli("-c " + quote(plain) + " -o " + quote(dir.string()) + " sweep").exit_code == 2);
    fs::remove_all(dir);
}

TEST_CASE("report artifacts", "[cli]") {
    const auto dir = scratch_dir("cli_report");
    const std::string cfg = quote(source_path("configs/example_device.conf"));
    const auto loud = run_cli("-c " + cfg + " -o " + quote((dir / "a").string()) + " report");
    const auto quiet = run_cli("-q -c " + cfg + " -o " + quote((dir / "b").string()) + " report");
    REQUIRE(loud.exit_code == 0);
    REQUIRE(quiet.exit_code == 0);
    CHECK_THAT(loud.out, ContainsSubstring("zeta_max = "));
    CHECK(quiet.out.empty());
    CHECK(quiet.err.empty());
    for (const char* name : {"report.json", "report.csv"}) {
        INFO(name);
        REQUIRE(fs::exists(dir / "a" / name));
        CHECK(read_text(dir / "a" / name) == read_text(dir / "b" / name));
    }
    const std::string json = read_text(dir / "a" / "report.json");
    CHECK(json.find(dir.string()) == std::string::npos);
    CHECK_THAT(json, ContainsSubstring("\"zeta_max\""));
    fs::remove_all(dir);
}

TEST_CASE("sweep output does not depend on the thread count", "[cli]") {
    const auto dir = scratch_dir("cli_sweep");
    const std::string cfg = quote(source_path("tests/data/sweep_B.conf"));
    REQUIRE(run_cli("-q -j 1 -c " + cfg + " -o " + quote((dir / "a").string()) + " sweep").exit_code == 0);
    REQUIRE(run_cli("-q -j 4 -c " + cfg + " -o " + quote((dir / "b").string()) + " sweep").exit_code == 0);
    CHECK(read_text(dir / "a" / "sweep.csv") == read_text(dir / "b" / "sweep.csv"));
    CHECK(read_text(dir / "a" / "sweep.json") == read_text(dir / "b" / "sweep.json"));
    const auto rows = csv_rows(dir / "a" / "sweep.csv");
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) > std::stod(rows[i - 1][1]));
    fs::remove_all(dir);
}

TEST_CASE("spectrum artifacts", "[cli]") {
    const auto dir = scratch_dir("cli_spectrum");
    const std::string cfg = quote(source_path("configs/example_device.conf"));
    REQUIRE(run_cli("-q -c " + cfg + " -o " + quote(dir.string()) + " spectrum").exit_code == 0);
    const auto eig = csv_rows(dir / "eigenvalues.csv");
    REQUIRE(eig.size() == 21);
    const auto spec = csv_rows(dir / "spectrum.csv");
    REQUIRE(spec.size() > 100);
    CHECK(spec.front().size() == 2 + 4);
    // The ladder is symmetric in phi0 about the symmetric point.
    for (std::size_t i = 0; i < eig.size(); ++i)
        CHECK(std::stod(eig[i][1]) == Catch::Approx(std::stod(eig[eig.size() - 1 - i][1])).epsilon(1e-8));
    fs::remove_all(dir);
}

TEST_CASE("dispersive response without field", "[cli]") {
    const auto dir = scratch_dir("cli_dispersive");
    const auto cfg = example_with(dir, "dynamics.detuning_points = 41\n", "B");
    std::ofstream(cfg, std::ios::app) << "B = 0 T\n";
    const auto r = run_cli("-q -c " + quote(cfg) + " -o " + quote(dir.string()) + " dispersive");
    REQUIRE(r.exit_code == 0);
    const auto rows = csv_rows(dir / "dispersive.csv");
    REQUIRE(rows.size() == 41 * 3);
    std::map<std::string, std::vector<std::string>> by_detuning;
    for (const auto& row : rows) {
        auto& ref = by_detuning[row[0]];
        if (ref.empty()) {
            ref = row;
            continue;
        }
        CHECK(row[2] == ref[2]);
        CHECK(row[3] == ref[3]);
        CHECK(row[4] == ref[4]);
    }
    fs::remove_all(dir);
}

TEST_CASE("trajectory artifacts", "[cli]") {
    const auto dir = scratch_dir("cli_trajectory");
    const auto cfg = example_with(dir, "trajectory.duration = 1e-10 s\n");
    const auto r = run_cli("-c " + quote(cfg) + " -o " + quote(dir.string()) + " trajectory");
    REQUIRE(r.exit_code == 0);
    CHECK_THAT(r.out, ContainsSubstring("excitation_energy_J"));
    const auto rows = csv_rows(dir / "trajectory.csv");
    REQUIRE(rows.size() > 10);
    const double e0 = std::stod(rows.front()[4]);
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, std::abs(std::stod(row[4]) - e0));
    // Loop flux kicked by 1e-3 Phi0: excitation about 1e-26 J.
    CHECK(worst < 1e-32);
    fs::remove_all(dir);
}

TEST_CASE("validation on an unconverged grid fails", "[cli]") {
    const auto dir = scratch_dir("cli_validate");
    const auto cfg = example_with(dir, "solver.n_points = 61\nsolver.half_width = 3\n");
    const auto r = run_cli("-q -c " + quote(cfg) + " -o " + quote(dir.string()) + " validate");
    CHECK(r.exit_code == 4);
    CHECK_THAT(r.out, ContainsSubstring("FAIL  harmonic limit"));
    CHECK_THAT(r.out, ContainsSubstring("BoundaryLeak"));
    CHECK(fs::exists(dir / "validation.txt"));
    fs::remove_all(dir);
}
