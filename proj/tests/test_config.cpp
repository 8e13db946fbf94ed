#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <string>

#include "omflux/config.hpp"

using namespace omflux;

TEST_CASE("presets") {
    SUBCASE("fig2 is the 12x12 modulated-link butterfly point") {
        const ExperimentConfig c = preset("fig2");
        CHECK(c.scheme == Scheme::ModulatedLink);
        CHECK(c.rows == 12);
        CHECK(c.cols == 12);
        CHECK(c.J == doctest::Approx(0.3));
        CHECK(c.g0beta == doctest::Approx(0.3));
        CHECK(c.kappa == doctest::Approx(0.01));
        CHECK(c.staircase_step == doctest::Approx(0.5));
    }
    SUBCASE("fig3a is the 22x22 conversion transport point") {
        const ExperimentConfig c = preset("fig3a");
        CHECK(c.scheme == Scheme::Conversion);
        CHECK(c.rows == 22);
        CHECK(c.cols == 22);
        CHECK(c.delta == doctest::Approx(0.3));
        CHECK(c.g == doctest::Approx(0.2));
        CHECK(c.kappa == doctest::Approx(0.01));
        CHECK(c.Gamma == doctest::Approx(0.001));
        CHECK(c.flux.value == doctest::Approx(2.0 * std::numbers::pi / 8));
        CHECK(c.J == doctest::Approx(0.13));
        CHECK(c.probe.detuning == doctest::Approx(1.278));
    }
    SUBCASE("every bundled preset parses") {
        for (const std::string& name : preset_names()) CHECK_NOTHROW(preset(name));
    }
    SUBCASE("unknown preset throws") { CHECK_THROWS_AS(preset("fig9"), ConfigError); }
}

TEST_CASE("empty document lists every required key") {
    try {
        parse_config("{}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string all;
        for (const std::string& m : e.messages()) all += m + "\n";
        CHECK(all.find("scheme") != std::string::npos);
        CHECK(all.find("rows") != std::string::npos);
        CHECK(all.find("cols") != std::string::npos);
        CHECK(all.find("kappa") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected") {
    const std::string doc = R"({
        "scheme": "ideal_hofstadter", "rows": 4, "cols": 4,
        "couplings": {"J": 0.1}, "rates": {"kappa": 0.01},
        "typo_key": 1
    })";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    const std::string nested = R"({
        "scheme": "ideal_hofstadter", "rows": 4, "cols": 4,
        "couplings": {"J": 0.1, "bogus": 2}, "rates": {"kappa": 0.01}
    })";
    CHECK_THROWS_AS(parse_config(nested), ConfigError);
}

TEST_CASE("conversion schemes demand a mechanical decay rate") {
    const std::string doc = R"({
        "scheme": "conversion", "rows": 4, "cols": 4,
        "couplings": {"g": 0.2, "J": 0.13}, "rates": {"kappa": 0.01}
    })";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("flux sweep expansion") {
    ExperimentConfig c;
    SUBCASE("no sweep yields the single value") {
        c.flux.value = 0.4;
        const std::vector<double> v = c.flux_values();
        REQUIRE(v.size() == 1);
        CHECK(v[0] == doctest::Approx(0.4));
    }
    SUBCASE("sweep is inclusive and evenly spaced") {
        c.flux.sweep = SweepSpec{0.0, 1.0, 5};
        const std::vector<double> v = c.flux_values();
        REQUIRE(v.size() == 5);
        CHECK(v[0] == doctest::Approx(0.0));
        CHECK(v[2] == doctest::Approx(0.5));
        CHECK(v[4] == doctest::Approx(1.0));
    }
}

TEST_CASE("config round trip through the canonical dump") {
    const ExperimentConfig a = preset("fig3a");
    const ExperimentConfig b = parse_config(config_json(a));
    CHECK(config_json(b) == config_json(a));
    CHECK(b.rows == a.rows);
    CHECK(b.probe.detuning == doctest::Approx(a.probe.detuning));
}

TEST_CASE("validation aggregates every violation") {
    const std::string doc = R"({
        "scheme": "nonsense", "rows": -1, "cols": 0, "rates": {"kappa": -0.5}
    })";
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.messages().size() >= 3);
    }
}
