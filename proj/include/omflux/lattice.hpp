// lattice.hpp — Lattice geometries and gauge-field data for optomechanical
// photon-lattice schemes: modulated-link and wavelength-conversion grids, the
// Aharonov-Bohm ring, the synthetic photon/phonon ladder, flux audits and
// gauge transformations.
//
// Conventions (used throughout the library):
//   * hbar = 1, Omega0 = 1, lattice constant a = 1.
//   * A directed link (i -> j) with amplitude A and phase phi contributes
//     -A e^{i phi} to H(j, i) and -A e^{-i phi} to H(i, j).
//   * Plaquettes are traversed (r,c) -> (r+1,c) -> (r+1,c+1) -> (r,c+1) -> (r,c);
//     that orientation is positive. Fluxes are reduced mod 2pi into (-pi, pi].

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace omflux {

using Complex = std::complex<double>;

enum class SiteKind { OpticalA, OpticalB, Interface, Mechanical };
enum class LinkKind { PhotonHop, OptomechanicalCoupling, ModulatedNeighbor, PhononHop };
enum class Scheme { ModulatedLink, Conversion, ABRing, SyntheticLadder, IdealHofstadter };

const char* to_string(SiteKind k);
const char* to_string(LinkKind k);
const char* to_string(Scheme s);

struct Site {
    int id{};
    SiteKind kind{};
    double row{};   // lattice units; mid-sites sit at half-integer col
    double col{};
    double omega{}; // on-site frequency (modulated link: absolute staircase;
                    // conversion/ladder: offset added to the rotating-frame base)
};

struct Link {
    int i{};
    int j{};
    LinkKind kind{};
    double amplitude{};
    double phase{};  // phase of the directed link i -> j
};

// Per-link Peierls phases, antisymmetric by construction:
// set(i, j, phi) also stores phase(j -> i) = -phi.
class PhaseField {
public:
    void set(int i, int j, double phi);
    double get(int i, int j) const;            // throws if link absent
    double get_or(int i, int j, double fallback) const;
    bool has(int i, int j) const;
    std::size_t size() const { return phases_.size() / 2; }

    // Visits each undirected link once, as (i, j, phase(i->j)) with i < j.
    void for_each(const std::function<void(int, int, double)>& fn) const;

private:
    static std::uint64_t key(int i, int j);
    std::unordered_map<std::uint64_t, double> phases_;
};

struct FluxPattern {
    struct Plaquette {
        int row{};
        int col{};
        double flux{};  // in (-pi, pi]
    };
    std::vector<Plaquette> plaquettes;

    bool uniform(double value, double tol = 1e-12) const;
};

struct LatticeGraph {
    std::vector<Site> sites;
    std::vector<Link> links;
    int rows{};
    int cols{};              // builder-specific meaning, see the builders
    Scheme scheme{};
    std::vector<int> ring_cycle;  // ABRing only: positive-orientation cycle
    int input_site = -1;          // ABRing probe lead
    int output_site = -1;         // ABRing output lead

    int site_count() const { return static_cast<int>(sites.size()); }
    int site_at(double row, double col) const;  // -1 if absent
    std::vector<int> optical_sites() const;
    std::vector<int> mechanical_sites() const;
    std::vector<int> interface_sites() const;
    bool connected() const;
};

// Staircase frequency profile along a row, omega(k) = origin + step * k with k
// the in-row site index (interfaces included).
struct StairProfile {
    double step = 0.5;
    double origin = 0.0;
};

// Row pattern A, I, B, I, A, ...; cols counts sites per row, interfaces
// included. Horizontal A/B-to-I links carry amplitude j_horizontal; vertical
// links are plain photon hopping at j_vertical for every column.
LatticeGraph build_modulated_link_lattice(int rows, int cols, StairProfile profile,
                                          double j_horizontal, double j_vertical,
                                          std::span<const double> disorder = {});

// Row pattern A, b, B, b, A, ...; cols counts optical sites per row, one
// mechanical site between each optical pair. bond_phase(row, bond) sets the
// effective Peierls phase of the horizontal optical bond; it is placed on the
// right-hand conversion link of the bond. Vertical photon hops carry no phase.
LatticeGraph build_conversion_lattice(int rows, int cols, double g, double j_vertical,
                                      const std::function<double(int, int)>& bond_phase = {},
                                      std::span<const double> disorder = {});

// Landau-gauge convenience: bond phase = row * flux_per_plaquette.
LatticeGraph build_conversion_lattice_landau(int rows, int cols, double g,
                                             double j_vertical, double flux_per_plaquette);

// Minimal symmetric two-path ring of conversion cells with input/output
// leads. The ring flux is distributed uniformly over the four optical bonds.
LatticeGraph build_ab_ring(double g, double j_lead, double flux);

// Two-rail ladder: n optical sites (row 0, hopping J) over n mechanical sites
// (row 1, hopping K); rung j carries the conversion coupling with phase j*dphi.
LatticeGraph build_synthetic_ladder(int n, double dphi, double g, double J, double K);

// Phases on an n_rows x n_cols square grid with site ids r*n_cols + c:
// horizontal link in row r carries r * flux_per_plaquette, vertical links none.
PhaseField landau_gauge_phases(int rows, int cols, double flux_per_plaquette);

// Torus variant for band-structure tests; requires n * flux = 0 mod 2pi so the
// wrapped links stay consistent (flux = 2pi p / q with q dividing n).
PhaseField landau_gauge_phases_torus(int n, int p, int q);

// Counterclockwise per-plaquette phase sums, reduced into (-pi, pi].
// Interface/mechanical mid-sites collapse onto their horizontal bond.
FluxPattern plaquette_fluxes(const LatticeGraph& graph, const PhaseField& phases);
FluxPattern plaquette_fluxes(const LatticeGraph& graph);  // phases from the links
FluxPattern plaquette_fluxes(int rows, int cols, const PhaseField& phases);  // bare grid

// phases(i->j) + xi[j] - xi[i]; leaves every plaquette flux unchanged.
PhaseField apply_gauge_transform(const PhaseField& phases, std::span<const double> xi);

// Copy of the graph with link phases replaced from the field (links absent
// from the field keep their phase).
LatticeGraph with_phases(const LatticeGraph& graph, const PhaseField& phases);

PhaseField phase_field_of(const LatticeGraph& graph);

double wrap_to_pi(double angle);  // reduce into (-pi, pi]

}  // namespace omflux
