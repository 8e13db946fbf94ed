#include "omflux/hofstadter.hpp"

#include <cmath>
#include <stdexcept>

namespace omflux {

Eigen::MatrixXcd build_hofstadter_hamiltonian(const HofstadterModel& model) {
    const int n = model.n;
    if (n < 1) throw std::invalid_argument("HofstadterModel: n must be >= 1");
    if (!model.onsite.empty() && static_cast<int>(model.onsite.size()) != n * n)
        throw std::invalid_argument("HofstadterModel: onsite size mismatch");
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n * n, n * n);
    const Complex i1(0.0, 1.0);
    auto hop = [&](int a, int b) {
        if (!model.phases.has(a, b))
            throw std::invalid_argument("HofstadterModel: phase field misses link " +
                                        std::to_string(a) + " -> " + std::to_string(b));
        const double phi = model.phases.get(a, b);
        H(b, a) = -model.j_eff * std::exp(i1 * phi);
        H(a, b) = std::conj(H(b, a));
    };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const int s = r * n + c;
            if (c + 1 < n) hop(s, r * n + c + 1);
            if (r + 1 < n) hop(s, (r + 1) * n + c);
            if (model.periodic && n > 2) {
                if (c == n - 1) hop(s, r * n);
                if (r == n - 1) hop(s, c);
            }
            if (!model.onsite.empty()) H(s, s) = model.onsite[s];
        }
    return H;
}

Spectrum spectrum(const Eigen::MatrixXcd& H) {
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("spectrum: matrix is not Hermitian within 1e-12");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectrum: eigen decomposition failed");
    Spectrum out;
    out.eigenvalues = solver.eigenvalues();
    out.site_weights = solver.eigenvectors().cwiseAbs2();
    return out;
}

LDOSCurve ldos(const Spectrum& spec, int site, const Eigen::VectorXd& omega_grid,
               double kappa) {
    if (omega_grid.size() == 0) throw std::invalid_argument("ldos: empty frequency grid");
    if (kappa <= 0.0) throw std::invalid_argument("ldos: kappa must be > 0");
    if (site < 0 || site >= spec.site_weights.rows())
        throw std::invalid_argument("ldos: site out of range");
    LDOSCurve out;
    out.omega = omega_grid;
    out.rho = Eigen::VectorXd::Zero(omega_grid.size());
    out.site = site;
    out.kappa = kappa;
    for (int k = 0; k < spec.eigenvalues.size(); ++k) {
        const double wk = spec.eigenvalues(k);
        const double weight = spec.site_weights(site, k);
        out.rho.array() += (kappa * weight) /
                   ((omega_grid.array() - wk).square() + 0.25 * kappa * kappa);
    }
    return out;
}

Eigen::VectorXd linspace(double lo, double hi, int steps) {
    if (steps < 1) throw std::invalid_argument("linspace: steps must be >= 1");
    if (steps == 1) return Eigen::VectorXd::Constant(1, lo);
    return Eigen::VectorXd::LinSpaced(steps, lo, hi);
}

Eigen::VectorXd default_omega_grid(const Spectrum& spec, double kappa) {
    const double lo = spec.eigenvalues.minCoeff() - 40.0 * kappa;
    const double hi = spec.eigenvalues.maxCoeff() + 40.0 * kappa;
    const int steps = static_cast<int>(std::ceil((hi - lo) / (kappa / 10.0))) + 1;
    return linspace(lo, hi, steps);
}

int central_site(int n) { return (n / 2) * n + n / 2; }

}  // namespace omflux
