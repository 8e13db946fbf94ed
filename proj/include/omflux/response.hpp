// response.hpp — Coherent linear response of the wavelength-conversion
// lattices: dynamical matrix of the damped amplitude equations, Kubo response
// maps, input-output transmission, Aharonov-Bohm flux scans, and the
// synthetic-ladder rail conversion.
//
// Only the beam-splitter (RWA) sector is computed: the amplitude equations
// close on the annihilation amplitudes alone, so the anomalous Green's
// function G_aa vanishes identically and the response is the resonant part.

#pragma once

#include <Eigen/Dense>

#include <functional>

#include "omflux/lattice.hpp"

namespace omflux {

struct ConversionModel {
    LatticeGraph graph;    // scheme Conversion, ABRing, or SyntheticLadder
    double Omega{};        // optical rotating-frame frequency, = Omega0 + delta
    double Omega0{};       // mechanical frequency
    double delta{};        // detuning from the red sideband
    double kappa{};        // optical decay, > 0
    double Gamma{};        // mechanical decay, > 0
};

ConversionModel make_conversion_model(LatticeGraph graph, double delta, double kappa,
                                      double Gamma, double Omega0 = 1.0);

// D = H - i diag(kappa/2 on optical, Gamma/2 on mechanical); the amplitude
// equations read d<a>/dt = -i D <a> + drive.
Eigen::MatrixXcd build_dynamical_matrix(const ConversionModel& model);

struct ResponseMap {
    Eigen::VectorXcd amplitudes;   // steady-state amplitude per site
    int probe{};
    double delta_p{};
    double input_amplitude{};
    bool probe_on_A{};             // probe sublattice (frequency bookkeeping)
};

// amplitudes = i sqrt(kappa) alpha_in (Delta_p - D)^{-1} e_probe
ResponseMap response_map(const ConversionModel& model, double delta_p, int probe,
                         double alpha_in = 1.0);

// t_O(j, l) = delta_jl - i sqrt(kappa_j kappa_l) G(j, l) with the site's own
// decay rate at each port.
Eigen::VectorXcd transmission(const ConversionModel& model, double delta_p, int probe);

struct ABScan {
    std::vector<double> fluxes;
    std::vector<double> t2;   // |t(out <- in)|^2, normalized to the scan max
    double delta_p{};
};

ABScan ab_flux_scan(const std::function<ConversionModel(double)>& family, double delta_p,
                    const std::vector<double>& fluxes);
ABScan ab_flux_scan(double g, double j_lead, double delta, double kappa, double Gamma,
                    double delta_p, const std::vector<double>& fluxes);

ResponseMap ladder_response(const ConversionModel& model, double delta_p, int probe);

// Fraction of the total steady-state intensity on the mechanical rail.
double rail_conversion(const ResponseMap& map, const LatticeGraph& graph);

}  // namespace omflux
