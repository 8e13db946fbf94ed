// hofstadter.hpp — Ideal Peierls-phase hopping model on the square lattice:
// exact diagonalization, Lorentzian-broadened LDOS, butterfly sweeps. Serves
// as the oracle against which the optomechanical schemes are validated.

#pragma once

#include <Eigen/Dense>

#include "omflux/lattice.hpp"

namespace omflux {

struct HofstadterModel {
    int n{};                       // linear grid size, n x n sites
    double j_eff{};                // hopping magnitude, >= 0
    PhaseField phases;             // Peierls phases on every nearest-neighbor link
    std::vector<double> onsite;    // per-site offsets; empty means all zero
    double kappa{};                // optical decay, > 0 (LDOS broadening)
    bool periodic = false;         // torus wrap for band-count tests only
};

struct Spectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd site_weights;  // (site, k) = |<site|eigvec_k>|^2
};

struct LDOSCurve {
    Eigen::VectorXd omega;
    Eigen::VectorXd rho;
    int site{};
    double kappa{};
};

// Dense Hermitian H with H(j, i) = -j_eff e^{i phi_ij} on links and onsite
// terms on the diagonal. Throws if the phase field misses a grid link.
Eigen::MatrixXcd build_hofstadter_hamiltonian(const HofstadterModel& model);

// Throws std::invalid_argument unless H is Hermitian within 1e-12 (relative).
Spectrum spectrum(const Eigen::MatrixXcd& H);

// rho(w) = sum_k kappa w_k(site) / ((w - w_k)^2 + kappa^2 / 4)
LDOSCurve ldos(const Spectrum& spec, int site, const Eigen::VectorXd& omega_grid,
               double kappa);

// [min eigenvalue - 40 kappa, max + 40 kappa] with step kappa / 10.
Eigen::VectorXd default_omega_grid(const Spectrum& spec, double kappa);

Eigen::VectorXd linspace(double lo, double hi, int steps);

int central_site(int n);  // default bulk probe: center of the n x n grid

}  // namespace omflux
