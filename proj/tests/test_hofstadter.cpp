#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "omflux/analysis.hpp"
#include "omflux/hofstadter.hpp"

using namespace omflux;
constexpr double pi = std::numbers::pi;

namespace {

HofstadterModel grid_model(int n, double j, double flux, double kappa = 0.01) {
    return {n, j, landau_gauge_phases(n, n, flux), {}, kappa, false};
}

}  // namespace

TEST_CASE("single site: onsite energy only") {
    HofstadterModel m{1, 0.3, {}, {1.7}, 0.01};
    const Eigen::MatrixXcd H = build_hofstadter_hamiltonian(m);
    REQUIRE(H.rows() == 1);
    CHECK(H(0, 0).real() == doctest::Approx(1.7));
}

TEST_CASE("4-site ring eigenvalues") {
    const double J = 0.25;
    SUBCASE("total flux pi gives doubly degenerate +/- sqrt(2) J") {
        const Spectrum s = spectrum(build_hofstadter_hamiltonian(grid_model(2, J, pi)));
        REQUIRE(s.eigenvalues.size() == 4);
        CHECK(s.eigenvalues(0) == doctest::Approx(-std::sqrt(2.0) * J));
        CHECK(s.eigenvalues(1) == doctest::Approx(-std::sqrt(2.0) * J));
        CHECK(s.eigenvalues(2) == doctest::Approx(std::sqrt(2.0) * J));
        CHECK(s.eigenvalues(3) == doctest::Approx(std::sqrt(2.0) * J));
    }
    SUBCASE("zero flux gives {-2J, 0, 0, +2J}") {
        const Spectrum s = spectrum(build_hofstadter_hamiltonian(grid_model(2, J, 0.0)));
        CHECK(s.eigenvalues(0) == doctest::Approx(-2.0 * J));
        CHECK(s.eigenvalues(1) == doctest::Approx(0.0));
        CHECK(s.eigenvalues(2) == doctest::Approx(0.0));
        CHECK(s.eigenvalues(3) == doctest::Approx(2.0 * J));
    }
}

TEST_CASE("spectrum of simple matrices") {
    SUBCASE("scaled identity") {
        const Spectrum s = spectrum(Eigen::MatrixXcd::Identity(3, 3) * 0.7);
        for (int k = 0; k < 3; ++k) CHECK(s.eigenvalues(k) == doctest::Approx(0.7));
    }
    SUBCASE("symmetric dimer") {
        Eigen::MatrixXcd H(2, 2);
        H << 0.0, -0.4, -0.4, 0.0;
        const Spectrum s = spectrum(H);
        CHECK(s.eigenvalues(0) == doctest::Approx(-0.4));
        CHECK(s.eigenvalues(1) == doctest::Approx(0.4));
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                CHECK(s.site_weights(j, k) == doctest::Approx(0.5));
    }
    SUBCASE("non-Hermitian input throws") {
        Eigen::MatrixXcd H(2, 2);
        H << 0.0, 0.5, -0.5, 0.0;
        CHECK_THROWS(spectrum(H));
    }
}

TEST_CASE("Hofstadter bands: q clusters at flux 2pi p/q on the torus") {
    // On a torus large enough that k-space discretization gaps are small, the
    // q - 1 band gaps stand out from every intra-band gap by a wide margin.
    auto has_q_bands = [](int n, int p, int q) {
        HofstadterModel m{n, 1.0, landau_gauge_phases_torus(n, p, q), {}, 0.01, true};
        const Spectrum s = spectrum(build_hofstadter_hamiltonian(m));
        std::vector<double> gaps;
        for (int k = 1; k < s.eigenvalues.size(); ++k)
            gaps.push_back(s.eigenvalues(k) - s.eigenvalues(k - 1));
        std::sort(gaps.rbegin(), gaps.rend());
        return gaps[q - 2] > 3.0 * gaps[q - 1];
    };
    CHECK(has_q_bands(30, 1, 3));
    CHECK(has_q_bands(30, 1, 5));
}

TEST_CASE("LDOS") {
    SUBCASE("single Lorentzian peaks at 4/kappa") {
        HofstadterModel m{1, 0.0, {}, {1.0}, 0.02};
        const Spectrum s = spectrum(build_hofstadter_hamiltonian(m));
        Eigen::VectorXd grid(1);
        grid << 1.0;
        const LDOSCurve c = ldos(s, 0, grid, m.kappa);
        CHECK(c.rho(0) == doctest::Approx(4.0 / m.kappa));
    }
    SUBCASE("sum rule within 1% on the default grid") {
        const Spectrum s = spectrum(build_hofstadter_hamiltonian(grid_model(10, 0.108, 2 * pi / 5)));
        const LDOSCurve c = ldos(s, central_site(10), default_omega_grid(s, 0.01), 0.01);
        const SumRuleCheck sr = ldos_sum_rule_check(c);
        CHECK(sr.deviation < 0.01);
        CHECK(sr.coverage_ok);
    }
    SUBCASE("under-covered grid flags > 5%") {
        const Spectrum s = spectrum(build_hofstadter_hamiltonian(grid_model(2, 0.3, 0.0, 0.01)));
        // +/- 2 kappa around the top eigenvalue only
        const Eigen::VectorXd grid = linspace(2 * 0.3 - 0.02, 2 * 0.3 + 0.02, 200);
        const SumRuleCheck sr = ldos_sum_rule_check(ldos(s, 0, grid, 0.01));
        CHECK(sr.deviation > 0.05);
        CHECK(!sr.coverage_ok);
    }
}

TEST_CASE("butterfly support bound |omega| <= 4 j_eff plus broadening") {
    const double j = 0.108, kappa = 0.01;
    for (double flux : {0.0, pi / 3, 2 * pi / 5, pi}) {
        const Spectrum s = spectrum(build_hofstadter_hamiltonian(grid_model(10, j, flux, kappa)));
        CHECK(s.eigenvalues.minCoeff() >= -4.0 * j - 1e-9);
        CHECK(s.eigenvalues.maxCoeff() <= 4.0 * j + 1e-9);
    }
}

TEST_CASE("LDOS is gauge invariant") {
    const int n = 6;
    const double flux = 0.77;
    const HofstadterModel base = grid_model(n, 0.3, flux);
    const Spectrum s0 = spectrum(build_hofstadter_hamiltonian(base));
    std::vector<double> xi(n * n);
    for (int i = 0; i < n * n; ++i) xi[i] = std::cos(2.3 * i);
    HofstadterModel gauged = base;
    gauged.phases = apply_gauge_transform(base.phases, xi);
    const Spectrum s1 = spectrum(build_hofstadter_hamiltonian(gauged));
    const Eigen::VectorXd grid = linspace(-1.3, 1.3, 300);
    for (int site : {0, central_site(n), n * n - 1}) {
        const LDOSCurve a = ldos(s0, site, grid, 0.01);
        const LDOSCurve b = ldos(s1, site, grid, 0.01);
        CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("flux periodicity of the spectrum") {
    const Spectrum a = spectrum(build_hofstadter_hamiltonian(grid_model(5, 0.2, 0.4)));
    const Spectrum b = spectrum(build_hofstadter_hamiltonian(grid_model(5, 0.2, 0.4 + 2 * pi)));
    CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("particle-hole symmetry of the bipartite lattice") {
    const Spectrum s = spectrum(build_hofstadter_hamiltonian(grid_model(6, 0.3, 1.1)));
    const int n = static_cast<int>(s.eigenvalues.size());
    for (int k = 0; k < n; ++k)
        CHECK(s.eigenvalues(k) == doctest::Approx(-s.eigenvalues(n - 1 - k)).epsilon(1e-10));
}

TEST_CASE("central_site of an even grid") {
    CHECK(central_site(10) == 55);
    CHECK(central_site(2) == 3);
}
