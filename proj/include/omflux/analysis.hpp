// analysis.hpp — Semiclassical Landau-level relations, transport metrics
// (cyclotron ring radius, edge chirality), sum-rule checks, and the
// experimental design estimates.

#pragma once

#include <limits>
#include <vector>

#include "omflux/hofstadter.hpp"
#include "omflux/response.hpp"

namespace omflux {

struct LandauParameters {
    double effective_mass{};       // hbar / (2 J a^2)
    double cyclotron_frequency{};  // 2 phi J
    double orbit_radius{};         // a sqrt((2n+1) / phi)
    int level_index{};
};

// phi is the flux per plaquette in radians.
LandauParameters landau_parameters(double J, double phi, int n);

struct ChiralityMetric {
    double forward_intensity{};
    double backward_intensity{};
    double ratio{};  // +inf sentinel when the backward arc carries nothing
};

ChiralityMetric edge_chirality_metric(const ResponseMap& map,
                                      const std::vector<int>& forward_arc,
                                      const std::vector<int>& backward_arc);

// Optical sites on the Chebyshev ring of the given radius around the probe,
// split into 90-degree sectors facing -col (forward, the chiral direction
// for positive flux at a near-edge probe) and +col (backward).
struct EdgeArcs {
    std::vector<int> forward;
    std::vector<int> backward;
};
EdgeArcs edge_arcs(const LatticeGraph& graph, int probe, int radius);

// n_th * Gamma / kappa: thermal-phonon leakage into the photon subsystem.
double thermal_photon_occupancy(double n_th, double Gamma, double kappa);

// beta = 2 g0 n_c / Gamma
double drive_amplitude(double g0, double n_c, double Gamma);

struct SumRuleCheck {
    double deviation{};      // |integral - 2 pi| / 2 pi
    double tail_estimate{};  // estimated spectral weight beyond the grid
    bool coverage_ok{};
};
SumRuleCheck ldos_sum_rule_check(const LDOSCurve& curve);

// Radial intensity histogram around the probe over optical sites (probe
// excluded); returns the center of the bin holding the most intensity.
double extract_ring_radius(const ResponseMap& map, const LatticeGraph& graph,
                           double bin_width = 0.25, double min_radius = 0.75);

struct CosFit {
    double offset{};     // A   in A + B cos(phi + phi0)
    double amplitude{};  // B
    double phase{};      // phi0
    double residual{};   // rms misfit / rms signal
};

// Least-squares fit of values(phi) to A + B cos(phi + phi0).
CosFit fit_cosine(const std::vector<double>& phis, const std::vector<double>& values);

constexpr double kInfiniteRatio = std::numeric_limits<double>::infinity();

}  // namespace omflux
