// pert.hpp — Floquet perturbation theory for the modulated-link scheme: the
// resonant four-level block, its Schrieffer-Wolff reduction to an effective
// two-level block, and the closed-form effective couplings of both schemes.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace omflux::pert {

using Complex = std::complex<double>;

struct FourLevelBlock {
    double omega_A{};
    double omega_B{};
    double omega_I{};
    double Omega{};     // modulation frequency
    double J_A{};
    double J_B{};
    Complex g0beta{};   // complex modulation amplitude g0 * beta
};

struct EffectiveBlock {
    double omega_tilde_A{};
    double omega_tilde_B{};
    double j_eff{};     // >= 0
    double phi{};       // hopping phase; sign of the prefactor folded in
};

struct SignedMagnitude {
    double magnitude{};
    int sign{};         // -1, 0, +1
};

// [[wA, 0, -JA, 0], [0, wB+W, 0, -JB], [-JA, 0, wI, g0b], [0, -JB, g0b*, wI+W]]
inline Eigen::Matrix4cd four_level_block(const FourLevelBlock& p) {
    Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
    H(0, 0) = p.omega_A;
    H(1, 1) = p.omega_B + p.Omega;
    H(2, 2) = p.omega_I;
    H(3, 3) = p.omega_I + p.Omega;
    H(0, 2) = H(2, 0) = -p.J_A;
    H(1, 3) = H(3, 1) = -p.J_B;
    H(2, 3) = p.g0beta;
    H(3, 2) = std::conj(p.g0beta);
    return H;
}

inline SignedMagnitude jeff_modulated(double J_A, double J_B, double g0beta_mag,
                                      double dA, double dB) {
    if (dA == 0.0 || dB == 0.0)
        throw std::invalid_argument("jeff_modulated: degenerate denominator");
    const double value = g0beta_mag * J_A * J_B / (dA * dB);
    return {std::abs(value), value > 0.0 ? 1 : (value < 0.0 ? -1 : 0)};
}

// |gA||gB|/delta with phase arg(gB) - arg(gA); equals gB * conj(gA) / delta.
inline Complex jeff_conversion(Complex gA, Complex gB, double delta) {
    if (delta == 0.0)
        throw std::invalid_argument("jeff_conversion: delta = 0, RWA elimination invalid");
    return gB * std::conj(gA) / delta;
}

inline EffectiveBlock schrieffer_wolff_effective(const FourLevelBlock& p) {
    const double dA = p.omega_A - p.omega_I;
    const double dB = p.omega_B - p.omega_I;
    if (dA == 0.0 || dB == 0.0)
        throw std::invalid_argument("schrieffer_wolff_effective: degenerate denominator");
    EffectiveBlock out;
    out.omega_tilde_A = p.omega_A + p.J_A * p.J_A / dA;
    out.omega_tilde_B = p.omega_B + p.J_B * p.J_B / dB;
    const double signed_jeff = std::abs(p.g0beta) * p.J_A * p.J_B / (dA * dB);
    out.j_eff = std::abs(signed_jeff);
    out.phi = std::arg(p.g0beta) + (signed_jeff < 0.0 ? std::numbers::pi : 0.0);
    return out;
}

// Gap between the two dressed eigenvalues closest to the resonant pair
// (omega_A, omega_B + Omega); the other two levels sit near omega_I.
inline double dressed_pair_splitting(const FourLevelBlock& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(four_level_block(p));
    const Eigen::Vector4d ev = solver.eigenvalues();
    const double center = 0.5 * (p.omega_A + p.omega_B + p.Omega);
    int best = 0;
    double best_dist = 1e300;
    for (int k = 0; k + 1 < 4; ++k) {
        const double dist = std::abs(0.5 * (ev(k) + ev(k + 1)) - center);
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    return ev(best + 1) - ev(best);
}

// Avoided-crossing gap of the resonant pair, minimized over the modulation
// frequency (golden-section over Omega within +/- span around p.Omega).
inline double min_splitting_over_Omega(FourLevelBlock p, double span) {
    auto gap = [&](double W) {
        FourLevelBlock q = p;
        q.Omega = W;
        return dressed_pair_splitting(q);
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = p.Omega - span, b = p.Omega + span;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(p.Omega)); ++it) {
        if (gap(c) < gap(d)) b = d; else a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    return gap(0.5 * (a + b));
}

}  // namespace omflux::pert
