#include "omflux/response.hpp"

#include <cmath>
#include <stdexcept>

namespace omflux {

namespace {

bool is_optical(SiteKind k) { return k != SiteKind::Mechanical; }

double site_decay(const ConversionModel& model, int site) {
    return is_optical(model.graph.sites[site].kind) ? model.kappa : model.Gamma;
}

Eigen::VectorXcd resolvent_column(const ConversionModel& model, double delta_p, int probe) {
    const Eigen::MatrixXcd D = build_dynamical_matrix(model);
    Eigen::MatrixXcd A = -D;
    A.diagonal().array() += delta_p;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(D.rows());
    rhs(probe) = 1.0;
    const Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(rhs);
    if (!x.allFinite()) throw std::runtime_error("response: singular resolvent");
    return x;
}

}  // namespace

ConversionModel make_conversion_model(LatticeGraph graph, double delta, double kappa,
                                      double Gamma, double Omega0) {
    ConversionModel m;
    m.graph = std::move(graph);
    m.delta = delta;
    m.Omega0 = Omega0;
    m.Omega = Omega0 + delta;
    m.kappa = kappa;
    m.Gamma = Gamma;
    return m;
}

Eigen::MatrixXcd build_dynamical_matrix(const ConversionModel& model) {
    if (model.kappa <= 0.0 || model.Gamma <= 0.0)
        throw std::invalid_argument("ConversionModel: kappa and Gamma must be > 0");
    const int S = model.graph.site_count();
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(S, S);
    const Complex i1(0.0, 1.0);
    for (const Link& l : model.graph.links) {
        D(l.j, l.i) += -l.amplitude * std::exp(i1 * l.phase);
        D(l.i, l.j) += -l.amplitude * std::exp(-i1 * l.phase);
    }
    for (const Site& s : model.graph.sites) {
        const double base = is_optical(s.kind) ? model.Omega : model.Omega0;
        D(s.id, s.id) = Complex(base + s.omega, -0.5 * site_decay(model, s.id));
    }
    return D;
}

ResponseMap response_map(const ConversionModel& model, double delta_p, int probe,
                         double alpha_in) {
    if (probe < 0 || probe >= model.graph.site_count())
        throw std::invalid_argument("response_map: probe site out of range");
    ResponseMap out;
    out.probe = probe;
    out.delta_p = delta_p;
    out.input_amplitude = alpha_in;
    out.probe_on_A = model.graph.sites[probe].kind == SiteKind::OpticalA;
    const double sqrt_kl = std::sqrt(site_decay(model, probe));
    out.amplitudes =
        Complex(0.0, 1.0) * sqrt_kl * alpha_in * resolvent_column(model, delta_p, probe);
    return out;
}

Eigen::VectorXcd transmission(const ConversionModel& model, double delta_p, int probe) {
    const Eigen::VectorXcd G = resolvent_column(model, delta_p, probe);
    const double sqrt_kl = std::sqrt(site_decay(model, probe));
    Eigen::VectorXcd t(G.size());
    for (int j = 0; j < G.size(); ++j)
        t(j) = Complex(0.0, -1.0) * std::sqrt(site_decay(model, j)) * sqrt_kl * G(j);
    t(probe) += 1.0;
    return t;
}

ABScan ab_flux_scan(const std::function<ConversionModel(double)>& family, double delta_p,
                    const std::vector<double>& fluxes) {
    ABScan out;
    out.delta_p = delta_p;
    out.fluxes = fluxes;
    double max_t2 = 0.0;
    for (double flux : fluxes) {
        const ConversionModel model = family(flux);
        if (model.graph.input_site < 0 || model.graph.output_site < 0)
            throw std::invalid_argument("ab_flux_scan: graph lacks input/output leads");
        const Eigen::VectorXcd t = transmission(model, delta_p, model.graph.input_site);
        const double t2 = std::norm(t(model.graph.output_site));
        out.t2.push_back(t2);
        max_t2 = std::max(max_t2, t2);
    }
    if (max_t2 > 0.0)
        for (double& v : out.t2) v /= max_t2;
    return out;
}

ABScan ab_flux_scan(double g, double j_lead, double delta, double kappa, double Gamma,
                    double delta_p, const std::vector<double>& fluxes) {
    return ab_flux_scan(
        [&](double flux) {
            return make_conversion_model(build_ab_ring(g, j_lead, flux), delta, kappa, Gamma);
        },
        delta_p, fluxes);
}

ResponseMap ladder_response(const ConversionModel& model, double delta_p, int probe) {
    if (model.graph.scheme != Scheme::SyntheticLadder)
        throw std::invalid_argument("ladder_response: graph is not a synthetic ladder");
    return response_map(model, delta_p, probe);
}

double rail_conversion(const ResponseMap& map, const LatticeGraph& graph) {
    double mech = 0.0, total = 0.0;
    for (const Site& s : graph.sites) {
        const double w = std::norm(map.amplitudes(s.id));
        total += w;
        if (s.kind == SiteKind::Mechanical) mech += w;
    }
    return total > 0.0 ? mech / total : 0.0;
}

}  // namespace omflux
