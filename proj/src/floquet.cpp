#include "omflux/floquet.hpp"

#include <cmath>
#include <stdexcept>

namespace omflux {

namespace {

void check_model(const ModulatedLinkModel& model) {
    if (model.Omega <= 0.0)
        throw std::invalid_argument("ModulatedLinkModel: Omega must be > 0");
    for (const auto& [id, d] : model.drive) {
        if (id < 0 || id >= model.graph.site_count() ||
            model.graph.sites[id].kind != SiteKind::Interface)
            throw std::invalid_argument("ModulatedLinkModel: drive on non-interface site " +
                                        std::to_string(id));
        (void)d;
    }
}

Eigen::MatrixXcd static_hamiltonian(const LatticeGraph& graph) {
    const int S = graph.site_count();
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(S, S);
    const Complex i1(0.0, 1.0);
    for (const Link& l : graph.links) {
        H(l.j, l.i) += -l.amplitude * std::exp(i1 * l.phase);
        H(l.i, l.j) += -l.amplitude * std::exp(-i1 * l.phase);
    }
    for (const Site& s : graph.sites) H(s.id, s.id) = s.omega;
    return H;
}

}  // namespace

void set_landau_drive(ModulatedLinkModel& model, double amp, double flux_per_plaquette) {
    model.drive.clear();
    for (int id : model.graph.interface_sites()) {
        const double phi = model.graph.sites[id].row * flux_per_plaquette;
        model.drive[id] = std::polar(amp, phi);
    }
}

FloquetOperator build_floquet_hamiltonian(const ModulatedLinkModel& model, int M,
                                          bool include_loss) {
    if (M < 1) throw std::invalid_argument("build_floquet_hamiltonian: M must be >= 1");
    check_model(model);
    FloquetOperator op;
    op.sites = model.graph.site_count();
    op.truncation = M;
    op.Omega = model.Omega;
    const int S = op.sites;
    const int dim = op.dim();
    op.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::MatrixXcd H0 = static_hamiltonian(model.graph);
    for (int m = -M; m <= M; ++m) {
        const int base = (m + M) * S;
        op.matrix.block(base, base, S, S) = H0;
        op.matrix.block(base, base, S, S).diagonal().array() -= m * model.Omega;
        if (m < M) {
            const int up = (m + 1 + M) * S;
            for (const auto& [id, d] : model.drive) {
                op.matrix(up + id, base + id) = d;
                op.matrix(base + id, up + id) = std::conj(d);
            }
        }
    }
    if (include_loss)
        op.matrix.diagonal().array() -= Complex(0.0, 0.5 * model.kappa);
    return op;
}

QuasienergySpectrum quasienergies(const FloquetOperator& op) {
    const double scale = std::max(1.0, op.matrix.cwiseAbs().maxCoeff());
    if ((op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("quasienergies: operator carries loss; Hermitian case only");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("quasienergies: eigen decomposition failed");
    QuasienergySpectrum out;
    out.all = solver.eigenvalues();
    const int S = op.sites;
    const int M = op.truncation;
    const double W = op.Omega;
    for (int k = 0; k < out.all.size(); ++k) {
        // dominant Fourier sector of the eigenvector
        int best_m = -M;
        double best_w = -1.0;
        for (int m = -M; m <= M; ++m) {
            const double w = solver.eigenvectors().col(k).segment((m + M) * S, S).squaredNorm();
            if (w > best_w) {
                best_w = w;
                best_m = m;
            }
        }
        if (best_m != 0) continue;
        const double eps = out.all(k);
        double folded = std::remainder(eps, W);  // (-W/2, W/2]
        if (folded == W / 2.0) folded = -W / 2.0;
        if (std::abs(std::abs(folded) - W / 2.0) < 1e-9) {
            out.zone_edge.push_back(static_cast<int>(out.folded.size()));
            out.folded.push_back(eps);  // flagged, left unfolded
        } else {
            out.folded.push_back(folded);
        }
    }
    return out;
}

FloquetGreens floquet_greens(const ModulatedLinkModel& model, double omega, int probe,
                             int M) {
    if (model.kappa <= 0.0)
        throw std::invalid_argument("floquet_greens: kappa must be > 0");
    if (probe < 0 || probe >= model.graph.site_count())
        throw std::invalid_argument("floquet_greens: probe site out of range");
    FloquetOperator op = build_floquet_hamiltonian(model, M, false);
    Eigen::MatrixXcd A = -op.matrix;
    A.diagonal().array() += Complex(omega, 0.5 * model.kappa);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(op.dim());
    rhs(op.index(probe, 0)) = 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (!x.allFinite()) throw std::runtime_error("floquet_greens: singular resolvent");
    FloquetGreens out;
    out.omega = omega;
    out.probe = probe;
    out.truncation = M;
    out.values.resize(op.sites, 2 * M + 1);
    for (int m = -M; m <= M; ++m)
        out.values.col(m + M) = x.segment((m + M) * op.sites, op.sites);
    return out;
}

FloquetEigensystem floquet_eigensystem(const ModulatedLinkModel& model, int M) {
    const FloquetOperator op = build_floquet_hamiltonian(model, M, false);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("floquet_eigensystem: eigen decomposition failed");
    FloquetEigensystem out;
    out.quasienergies = solver.eigenvalues();
    out.m0_amplitudes = solver.eigenvectors().middleRows(M * op.sites, op.sites);
    out.Omega = model.Omega;
    out.truncation = M;
    return out;
}

LDOSCurve floquet_ldos(const FloquetEigensystem& sys, int site,
                       const Eigen::VectorXd& omega_grid, double kappa) {
    if (omega_grid.size() == 0)
        throw std::invalid_argument("floquet_ldos: empty frequency grid");
    if (kappa <= 0.0) throw std::invalid_argument("floquet_ldos: kappa must be > 0");
    LDOSCurve out;
    out.omega = omega_grid;
    out.rho = Eigen::VectorXd::Zero(omega_grid.size());
    out.site = site;
    out.kappa = kappa;
    for (int k = 0; k < sys.quasienergies.size(); ++k) {
        const double weight = std::norm(sys.m0_amplitudes(site, k));
        if (weight < 1e-300) continue;
        const double wk = sys.quasienergies(k);
        out.rho.array() += (kappa * weight) /
                   ((omega_grid.array() - wk).square() + 0.25 * kappa * kappa);
    }
    return out;
}

LDOSCurve floquet_ldos(const ModulatedLinkModel& model, int site,
                       const Eigen::VectorXd& omega_grid, int M) {
    return floquet_ldos(floquet_eigensystem(model, M), site, omega_grid, model.kappa);
}

Eigen::MatrixXcd floquet_transmission(const ModulatedLinkModel& model, double omega,
                                      int probe, int M) {
    const FloquetGreens G = floquet_greens(model, omega, probe, M);
    Eigen::MatrixXcd t = Complex(0.0, -model.kappa) * G.values;
    t(probe, M) += 1.0;
    return t;
}

}  // namespace omflux
