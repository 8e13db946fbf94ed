// floquet.hpp — Extended-space treatment of the modulated-link lattice:
// truncated Floquet Hamiltonian on site x Fourier-mode space, quasienergies,
// Floquet Green's function, sideband-resolved LDOS and transmission.

#pragma once

#include <Eigen/Dense>

#include <unordered_map>

#include "omflux/hofstadter.hpp"
#include "omflux/lattice.hpp"

namespace omflux {

struct ModulatedLinkModel {
    LatticeGraph graph;                       // scheme ModulatedLink
    double Omega{};                           // modulation frequency, > 0
    std::unordered_map<int, Complex> drive;   // interface site id -> g0*beta
    double kappa{};                           // uniform optical decay
};

// Uniform amplitude with Landau-gauge drive phases: interface site in row r
// carries phase r * flux_per_plaquette.
void set_landau_drive(ModulatedLinkModel& model, double amp, double flux_per_plaquette);

// Extended-space operator of dimension S(2M+1); Fourier index m runs -M..M and
// the state (site j, mode m) lives at index (m + M) * S + j, representing the
// sideband amplitude c_m of a(t) = e^{-i w t} sum_m c_m e^{-i m Omega t}, so
// component m oscillates at w + m Omega. Diagonal blocks are H0 - m Omega;
// off-diagonal blocks couple m and m+1 through the interface drives:
// <m+1| . |m> = g0 beta = g0|beta| e^{i phi}.
struct FloquetOperator {
    int sites{};
    int truncation{};
    double Omega{};
    Eigen::MatrixXcd matrix;

    int dim() const { return sites * (2 * truncation + 1); }
    int index(int site, int m) const { return (m + truncation) * sites + site; }
};

FloquetOperator build_floquet_hamiltonian(const ModulatedLinkModel& model, int M,
                                          bool include_loss = false);

struct QuasienergySpectrum {
    std::vector<double> folded;           // first Brillouin zone [-Omega/2, Omega/2)
    std::vector<int> zone_edge;           // indices within 1e-9 of the zone edge
    Eigen::VectorXd all;                  // every extended-space eigenvalue
};

// Physical quasienergies: eigenvalues whose eigenvector weight is dominated by
// the m = 0 Fourier sector, folded into the first zone. Values within 1e-9 of
// the zone edge are reported unfolded in `folded` and flagged in `zone_edge`.
QuasienergySpectrum quasienergies(const FloquetOperator& op);

struct FloquetGreens {
    Eigen::MatrixXcd values;  // (site j, m + M)
    double omega{};
    int probe{};
    int truncation{};
};

// One linear solve of (omega - H_Floquet + i kappa / 2) G = |probe, 0>.
FloquetGreens floquet_greens(const ModulatedLinkModel& model, double omega, int probe,
                             int M);

// Eigen-decomposition of the lossless Floquet operator with the m = 0 rows of
// the eigenvectors kept; one decomposition serves a whole frequency sweep.
struct FloquetEigensystem {
    Eigen::VectorXd quasienergies;     // all extended-space eigenvalues
    Eigen::MatrixXcd m0_amplitudes;    // (site, k) = <<site, 0 | phi_k>>
    double Omega{};
    int truncation{};
};

FloquetEigensystem floquet_eigensystem(const ModulatedLinkModel& model, int M);

// rho(w, j) = -2 Im G(w, 0; j, j) = sum_k kappa |<<j,0|phi_k>>|^2 /
// ((w - w_k)^2 + kappa^2/4); the eigenstate sum is used directly.
LDOSCurve floquet_ldos(const FloquetEigensystem& sys, int site,
                       const Eigen::VectorXd& omega_grid, double kappa);
LDOSCurve floquet_ldos(const ModulatedLinkModel& model, int site,
                       const Eigen::VectorXd& omega_grid, int M);

// t_O(w, m; j, l) = delta_jl delta_m0 - i kappa G(w, m; j, l)
Eigen::MatrixXcd floquet_transmission(const ModulatedLinkModel& model, double omega,
                                      int probe, int M);

}  // namespace omflux
