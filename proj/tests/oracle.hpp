// oracle.hpp — Test-only reference solvers: direct RK4 integration of the
// damped, driven amplitude equations to steady state, with Fourier extraction
// of the sideband components. Used to validate the frequency-domain solvers
// against an independent time-domain computation.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>
#include <utility>

namespace oracle {

using Complex = std::complex<double>;

// Integrates dz/dt = f(t, z) with classic RK4 from t = 0 (z = 0) to t_end.
inline Eigen::VectorXcd rk4(const std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)>& f,
                            int dim, double t_end, double dt) {
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(dim);
    double t = 0.0;
    while (t < t_end - 0.5 * dt) {
        const Eigen::VectorXcd k1 = f(t, z);
        const Eigen::VectorXcd k2 = f(t + 0.5 * dt, z + 0.5 * dt * k1);
        const Eigen::VectorXcd k3 = f(t + 0.5 * dt, z + 0.5 * dt * k2);
        const Eigen::VectorXcd k4 = f(t + dt, z + dt * k3);
        z += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
    }
    return z;
}

// Steady state of dz/dt = -i D z + eta e^{-i w t} e_l for a static matrix D
// whose eigenvalues all have negative imaginary part; returns the slowly
// varying amplitude c with z(t) = c e^{-i w t}.
inline Eigen::VectorXcd steady_static(const Eigen::MatrixXcd& D, int l, Complex eta,
                                      double w, double t_end, double dt) {
    const Complex I(0.0, 1.0);
    auto f = [&](double t, const Eigen::VectorXcd& z) -> Eigen::VectorXcd {
        Eigen::VectorXcd dz = -I * (D * z);
        dz(l) += eta * std::exp(-I * w * t);
        return dz;
    };
    const Eigen::VectorXcd z = rk4(f, static_cast<int>(D.rows()), t_end, dt);
    return z * std::exp(Complex(0.0, 1.0) * w * t_end);
}

// Steady state of the periodically modulated problem
//   dz/dt = -i (H0 + sum_s 2 Re(d_s e^{-i W t}) P_s) z - (kappa/2) z
//           + eta e^{-i w t} e_l,
// where P_s projects on the modulated site s. Returns the Fourier components
// c_m with z(t) = e^{-i w t} sum_m c_m e^{-i m W t}, m = -M..M (component m
// oscillates at w + m W), extracted by projection over one final period.
inline Eigen::MatrixXcd steady_floquet(const Eigen::MatrixXcd& H0,
                                       const std::vector<std::pair<int, Complex>>& drives,
                                       double kappa, double W, int l, Complex eta,
                                       double w, int M, double t_end, double dt) {
    const Complex I(0.0, 1.0);
    auto f = [&](double t, const Eigen::VectorXcd& z) -> Eigen::VectorXcd {
        Eigen::VectorXcd dz = -I * (H0 * z) - 0.5 * kappa * z;
        for (const auto& [site, d] : drives)
            dz(site) += -I * 2.0 * std::real(d * std::exp(-I * W * t)) * z(site);
        dz(l) += eta * std::exp(-I * w * t);
        return dz;
    };
    const int n = static_cast<int>(H0.rows());
    Eigen::VectorXcd z = rk4(f, n, t_end, dt);

    // continue one period, accumulating the projections onto e^{+i m W t}
    const double T = 2.0 * std::numbers::pi / W;
    const int steps = static_cast<int>(std::ceil(T / dt));
    const double h = T / steps;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, 2 * M + 1);
    double t = t_end;
    for (int k = 0; k < steps; ++k) {
        for (int m = -M; m <= M; ++m)
            c.col(m + M) += (h / T) * z * std::exp(I * (w * t + m * W * t));
        const Eigen::VectorXcd k1 = f(t, z);
        const Eigen::VectorXcd k2 = f(t + 0.5 * h, z + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = f(t + 0.5 * h, z + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = f(t + h, z + h * k3);
        z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return c;
}

}  // namespace oracle
