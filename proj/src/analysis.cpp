#include "omflux/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace omflux {

LandauParameters landau_parameters(double J, double phi, int n) {
    if (phi <= 0.0) throw std::domain_error("landau_parameters: phi must be > 0");
    if (n < 0) throw std::domain_error("landau_parameters: level index must be >= 0");
    LandauParameters out;
    out.effective_mass = 1.0 / (2.0 * J);
    out.cyclotron_frequency = 2.0 * phi * J;
    out.orbit_radius = std::sqrt((2.0 * n + 1.0) / phi);
    out.level_index = n;
    return out;
}

ChiralityMetric edge_chirality_metric(const ResponseMap& map,
                                      const std::vector<int>& forward_arc,
                                      const std::vector<int>& backward_arc) {
    ChiralityMetric out;
    for (int s : forward_arc) out.forward_intensity += std::norm(map.amplitudes(s));
    for (int s : backward_arc) out.backward_intensity += std::norm(map.amplitudes(s));
    out.ratio = out.backward_intensity > 0.0 ? out.forward_intensity / out.backward_intensity
                                             : kInfiniteRatio;
    return out;
}

EdgeArcs edge_arcs(const LatticeGraph& graph, int probe, int radius) {
    EdgeArcs out;
    const Site& p = graph.sites[probe];
    for (const Site& s : graph.sites) {
        if (s.kind == SiteKind::Mechanical || s.kind == SiteKind::Interface) continue;
        const double dr = s.row - p.row;
        const double dc = s.col - p.col;
        const int cheb = static_cast<int>(std::lround(std::max(std::abs(dr), std::abs(dc))));
        if (cheb != radius) continue;
        // 90-degree sectors along the col axis; for positive flux the chiral
        // edge channel at the near edge runs toward -col (forward).
        if (std::abs(dc) >= std::abs(dr)) {
            if (dc < 0) out.forward.push_back(s.id);
            else if (dc > 0) out.backward.push_back(s.id);
        }
    }
    return out;
}

double thermal_photon_occupancy(double n_th, double Gamma, double kappa) {
    if (Gamma <= 0.0 || kappa <= 0.0)
        throw std::domain_error("thermal_photon_occupancy: rates must be > 0");
    return n_th * Gamma / kappa;
}

double drive_amplitude(double g0, double n_c, double Gamma) {
    if (Gamma <= 0.0) throw std::domain_error("drive_amplitude: Gamma must be > 0");
    return 2.0 * g0 * n_c / Gamma;
}

SumRuleCheck ldos_sum_rule_check(const LDOSCurve& curve) {
    const auto n = curve.omega.size();
    if (n < 2) throw std::invalid_argument("ldos_sum_rule_check: need at least two points");
    double integral = 0.0;
    for (Eigen::Index k = 0; k + 1 < n; ++k)
        integral += 0.5 * (curve.rho(k) + curve.rho(k + 1)) *
                    (curve.omega(k + 1) - curve.omega(k));
    SumRuleCheck out;
    const double two_pi = 2.0 * std::numbers::pi;
    out.deviation = std::abs(integral - two_pi) / two_pi;
    // Per-side Cauchy-Schwarz bound on the Lorentzian tails: with unit total
    // site weight, sum_k kappa w_k / d_k <= sqrt(kappa * sum_k kappa w_k / d_k^2)
    // = sqrt(kappa * rho(end)).
    out.tail_estimate = std::sqrt(std::max(0.0, curve.kappa * curve.rho(0))) +
                        std::sqrt(std::max(0.0, curve.kappa * curve.rho(n - 1)));
    out.coverage_ok = out.tail_estimate <= 0.01 * two_pi;
    return out;
}

double extract_ring_radius(const ResponseMap& map, const LatticeGraph& graph,
                           double bin_width, double min_radius) {
    const Site& p = graph.sites[map.probe];
    double max_r = 0.0;
    for (const Site& s : graph.sites)
        max_r = std::max(max_r, std::hypot(s.row - p.row, s.col - p.col));
    const int bins = static_cast<int>(std::ceil(max_r / bin_width)) + 1;
    std::vector<double> weight(bins, 0.0);
    std::vector<int> count(bins, 0);
    for (const Site& s : graph.sites) {
        if (s.kind == SiteKind::Mechanical || s.kind == SiteKind::Interface) continue;
        if (s.id == map.probe) continue;
        const double r = std::hypot(s.row - p.row, s.col - p.col);
        const int b = static_cast<int>(r / bin_width);
        weight[b] += std::norm(map.amplitudes(s.id));
        ++count[b];
    }
    double best_r = 0.0, best_weight = -1.0;
    for (int b = 0; b < bins; ++b) {
        const double center = (b + 0.5) * bin_width;
        if (center < min_radius || count[b] == 0) continue;
        if (weight[b] > best_weight) {
            best_weight = weight[b];
            best_r = center;
        }
    }
    if (best_weight < 0.0) throw std::runtime_error("extract_ring_radius: no usable bins");
    return best_r;
}

CosFit fit_cosine(const std::vector<double>& phis, const std::vector<double>& values) {
    if (phis.size() != values.size() || phis.size() < 3)
        throw std::invalid_argument("fit_cosine: need >= 3 matching samples");
    const auto n = static_cast<Eigen::Index>(phis.size());
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        X(k, 0) = 1.0;
        X(k, 1) = std::cos(phis[k]);
        X(k, 2) = std::sin(phis[k]);
        y(k) = values[k];
    }
    const Eigen::Vector3d c = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    CosFit out;
    out.offset = c(0);
    out.amplitude = std::hypot(c(1), c(2));
    out.phase = std::atan2(-c(2), c(1));  // B cos(phi + phi0) = c1 cos - (-c2) ...
    const double rms_signal = std::sqrt(y.squaredNorm() / n);
    out.residual = rms_signal > 0.0
                       ? std::sqrt((y - X * c).squaredNorm() / n) / rms_signal
                       : 0.0;
    return out;
}

}  // namespace omflux
