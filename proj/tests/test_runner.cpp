#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "omflux/io.hpp"
#include "omflux/runner.hpp"

using namespace omflux;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_ideal() {
    ExperimentConfig c = preset("fig2a");
    c.rows = c.cols = 6;
    c.flux.sweep = SweepSpec{0.0, 3.0, 4};
    c.omega_grid.steps = 80;
    return c;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("omflux_test_" + tag)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("command names parse") {
    CHECK(parse_command("butterfly") == Command::Butterfly);
    CHECK(parse_command("validate") == Command::Validate);
    CHECK_THROWS_AS(parse_command("bogus"), ConfigError);
}

TEST_CASE("probe resolution") {
    const LatticeGraph g = build_conversion_lattice_landau(8, 8, 0.2, 0.13, 0.0);
    SUBCASE("explicit site id wins") {
        ProbeSpec p;
        p.site = 5;
        CHECK(resolve_probe_site(g, p) == 5);
        p.site = 10000;
        CHECK_THROWS_AS(resolve_probe_site(g, p), ConfigError);
    }
    SUBCASE("center placement picks a central optical site") {
        ProbeSpec p;
        const Site& s = g.sites[resolve_probe_site(g, p)];
        CHECK(s.kind != SiteKind::Mechanical);
        CHECK(std::abs(s.row - 4.0) <= 1.0);
    }
    SUBCASE("edge placement picks a near-edge optical site") {
        ProbeSpec p;
        p.placement = "edge";
        const Site& s = g.sites[resolve_probe_site(g, p)];
        CHECK(s.row == doctest::Approx(1.0));
    }
}

TEST_CASE("butterfly run writes outputs with matching checksums") {
    TempDir tmp("butterfly");
    ExperimentConfig c = small_ideal();
    c.out_dir = tmp.path.string();
    const RunManifest m = run(c, Command::Butterfly);
    for (const char* f : {"butterfly.csv", "butterfly.pgm", "sites.csv", "links.csv",
                          "fluxes.csv"}) {
        CAPTURE(f);
        REQUIRE(fs::exists(tmp.path / f));
        REQUIRE(m.checksums.count(f) == 1);
        std::uint64_t h = fnv1a_file(tmp.path / f);
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        CHECK(m.checksums.at(f) == buf);
    }
    CHECK(fs::exists(tmp.path / "manifest.json"));
    // header + 4 fluxes x 80 omegas
    const std::string csv = slurp(tmp.path / "butterfly.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 80);
}

TEST_CASE("runs are deterministic across thread counts") {
    TempDir t1("det1"), t2("det2");
    ExperimentConfig c = small_ideal();
    c.out_dir = t1.path.string();
    c.threads = 1;
    run(c, Command::Butterfly);
    c.out_dir = t2.path.string();
    c.threads = 4;
    run(c, Command::Butterfly);
    for (const char* f : {"butterfly.csv", "butterfly.pgm"})
        CHECK(slurp(t1.path / f) == slurp(t2.path / f));
}

TEST_CASE("config hash ignores threads and output directory") {
    TempDir t1("hash1"), t2("hash2");
    ExperimentConfig c = small_ideal();
    c.out_dir = t1.path.string();
    c.threads = 1;
    const RunManifest m1 = run(c, Command::Butterfly);
    c.out_dir = t2.path.string();
    c.threads = 8;
    const RunManifest m2 = run(c, Command::Butterfly);
    CHECK(m1.config_hash == m2.config_hash);
}

TEST_CASE("scheme and command must agree") {
    TempDir tmp("mismatch");
    ExperimentConfig c = preset("fig3a");
    c.out_dir = tmp.path.string();
    CHECK_THROWS_AS(run(c, Command::ABScanCmd), ConfigError);
    CHECK_THROWS_AS(run(c, Command::Ladder), ConfigError);
}

TEST_CASE("abscan produces the normalized scan") {
    TempDir tmp("abscan");
    ExperimentConfig c = preset("fig3d");
    c.flux.sweep = SweepSpec{0.0, 2.0 * 3.14159265358979, 16};
    c.out_dir = tmp.path.string();
    run(c, Command::ABScanCmd);
    const std::string csv = slurp(tmp.path / "abscan.csv");
    CHECK(csv.rfind("flux,t_abs2_normalized", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("transport emits the response map and analysis metrics") {
    TempDir tmp("transport");
    ExperimentConfig c = preset("fig3a");
    c.rows = c.cols = 8;  // desk-size variant
    c.out_dir = tmp.path.string();
    run(c, Command::Transport);
    CHECK(fs::exists(tmp.path / "response.csv"));
    CHECK(fs::exists(tmp.path / "response.pgm"));
    CHECK(fs::exists(tmp.path / "response.pgm.json"));
    const std::string analysis = slurp(tmp.path / "analysis.csv");
    CHECK(analysis.find("ring_radius") != std::string::npos);
}
