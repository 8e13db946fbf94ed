#include "omflux/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace omflux {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double disorder_at(std::span<const double> disorder, int id) {
    if (disorder.empty()) return 0.0;
    if (id >= static_cast<int>(disorder.size()))
        throw std::invalid_argument("disorder vector shorter than site count");
    return disorder[id];
}
}  // namespace

double wrap_to_pi(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a > std::numbers::pi) a -= kTwoPi;
    if (a <= -std::numbers::pi) a += kTwoPi;
    return a;
}

const char* to_string(SiteKind k) {
    switch (k) {
        case SiteKind::OpticalA: return "optical_a";
        case SiteKind::OpticalB: return "optical_b";
        case SiteKind::Interface: return "interface";
        case SiteKind::Mechanical: return "mechanical";
    }
    return "?";
}

const char* to_string(LinkKind k) {
    switch (k) {
        case LinkKind::PhotonHop: return "photon_hop";
        case LinkKind::OptomechanicalCoupling: return "optomechanical";
        case LinkKind::ModulatedNeighbor: return "modulated_neighbor";
        case LinkKind::PhononHop: return "phonon_hop";
    }
    return "?";
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::ModulatedLink: return "modulated_link";
        case Scheme::Conversion: return "conversion";
        case Scheme::ABRing: return "ab_ring";
        case Scheme::SyntheticLadder: return "synthetic_ladder";
        case Scheme::IdealHofstadter: return "ideal_hofstadter";
    }
    return "?";
}

// ------------------------------- PhaseField ---------------------------------

std::uint64_t PhaseField::key(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
}

void PhaseField::set(int i, int j, double phi) {
    if (i == j) throw std::invalid_argument("PhaseField: self-link");
    phases_[key(i, j)] = phi;
    phases_[key(j, i)] = -phi;
}

double PhaseField::get(int i, int j) const {
    auto it = phases_.find(key(i, j));
    if (it == phases_.end())
        throw std::invalid_argument("PhaseField: no phase for link " + std::to_string(i) +
                                    " -> " + std::to_string(j));
    return it->second;
}

double PhaseField::get_or(int i, int j, double fallback) const {
    auto it = phases_.find(key(i, j));
    return it == phases_.end() ? fallback : it->second;
}

bool PhaseField::has(int i, int j) const { return phases_.count(key(i, j)) > 0; }

void PhaseField::for_each(const std::function<void(int, int, double)>& fn) const {
    for (const auto& [k, phi] : phases_) {
        const int i = static_cast<int>(k >> 32);
        const int j = static_cast<int>(k & 0xffffffffu);
        if (i < j) fn(i, j, phi);
    }
}

// ------------------------------- LatticeGraph -------------------------------

int LatticeGraph::site_at(double row, double col) const {
    for (const Site& s : sites)
        if (std::abs(s.row - row) < 0.25 && std::abs(s.col - col) < 0.25) return s.id;
    return -1;
}

std::vector<int> LatticeGraph::optical_sites() const {
    std::vector<int> out;
    for (const Site& s : sites)
        if (s.kind == SiteKind::OpticalA || s.kind == SiteKind::OpticalB) out.push_back(s.id);
    return out;
}

std::vector<int> LatticeGraph::mechanical_sites() const {
    std::vector<int> out;
    for (const Site& s : sites)
        if (s.kind == SiteKind::Mechanical) out.push_back(s.id);
    return out;
}

std::vector<int> LatticeGraph::interface_sites() const {
    std::vector<int> out;
    for (const Site& s : sites)
        if (s.kind == SiteKind::Interface) out.push_back(s.id);
    return out;
}

bool LatticeGraph::connected() const {
    if (sites.empty()) return true;
    std::vector<std::vector<int>> adj(sites.size());
    for (const Link& l : links) {
        adj[l.i].push_back(l.j);
        adj[l.j].push_back(l.i);
    }
    std::vector<bool> seen(sites.size(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                q.push(v);
            }
    }
    return count == sites.size();
}

bool FluxPattern::uniform(double value, double tol) const {
    return std::all_of(plaquettes.begin(), plaquettes.end(), [&](const Plaquette& p) {
        return std::abs(wrap_to_pi(p.flux - value)) <= tol;
    });
}

// -------------------------------- builders ----------------------------------

LatticeGraph build_modulated_link_lattice(int rows, int cols, StairProfile profile,
                                          double j_horizontal, double j_vertical,
                                          std::span<const double> disorder) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("build_modulated_link_lattice: dimensions must be >= 1");
    LatticeGraph g;
    g.rows = rows;
    g.cols = cols;
    g.scheme = Scheme::ModulatedLink;
    g.sites.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        for (int k = 0; k < cols; ++k) {
            Site s;
            s.id = r * cols + k;
            s.kind = (k % 2 == 1) ? SiteKind::Interface
                                  : (k % 4 == 0 ? SiteKind::OpticalA : SiteKind::OpticalB);
            s.row = r;
            s.col = 0.5 * k;
            s.omega = profile.origin + profile.step * k + disorder_at(disorder, s.id);
            g.sites.push_back(s);
        }
    }
    for (int r = 0; r < rows; ++r) {
        for (int k = 0; k + 1 < cols; ++k)
            g.links.push_back({r * cols + k, r * cols + k + 1, LinkKind::ModulatedNeighbor,
                               j_horizontal, 0.0});
    }
    for (int r = 0; r + 1 < rows; ++r) {
        for (int k = 0; k < cols; ++k)
            g.links.push_back({r * cols + k, (r + 1) * cols + k, LinkKind::PhotonHop,
                               j_vertical, 0.0});
    }
    return g;
}

LatticeGraph build_conversion_lattice(int rows, int cols, double g, double j_vertical,
                                      const std::function<double(int, int)>& bond_phase,
                                      std::span<const double> disorder) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("build_conversion_lattice: dimensions must be >= 1");
    LatticeGraph out;
    out.rows = rows;
    out.cols = cols;
    out.scheme = Scheme::Conversion;
    const int per_row = 2 * cols - 1;
    out.sites.reserve(static_cast<std::size_t>(rows) * per_row);
    for (int r = 0; r < rows; ++r) {
        for (int k = 0; k < per_row; ++k) {
            Site s;
            s.id = r * per_row + k;
            s.kind = (k % 2 == 1) ? SiteKind::Mechanical
                                  : (k % 4 == 0 ? SiteKind::OpticalA : SiteKind::OpticalB);
            s.row = r;
            s.col = 0.5 * k;
            s.omega = disorder_at(disorder, s.id);
            out.sites.push_back(s);
        }
    }
    for (int r = 0; r < rows; ++r) {
        for (int k = 1; k < per_row; k += 2) {
            const int mech = r * per_row + k;
            const int bond = (k - 1) / 2;
            const double phi = bond_phase ? bond_phase(r, bond) : 0.0;
            out.links.push_back({mech, mech - 1, LinkKind::OptomechanicalCoupling, g, 0.0});
            out.links.push_back({mech, mech + 1, LinkKind::OptomechanicalCoupling, g, phi});
        }
    }
    for (int r = 0; r + 1 < rows; ++r) {
        for (int k = 0; k < per_row; k += 2)
            out.links.push_back({r * per_row + k, (r + 1) * per_row + k, LinkKind::PhotonHop,
                                 j_vertical, 0.0});
    }
    return out;
}

LatticeGraph build_conversion_lattice_landau(int rows, int cols, double g,
                                             double j_vertical, double flux_per_plaquette) {
    return build_conversion_lattice(
        rows, cols, g, j_vertical,
        [flux_per_plaquette](int row, int) { return row * flux_per_plaquette; });
}

LatticeGraph build_ab_ring(double g, double j_lead, double flux) {
    const double phi = wrap_to_pi(flux);
    LatticeGraph out;
    out.scheme = Scheme::ABRing;
    out.rows = 1;
    out.cols = 1;
    // ids: 0 lead_in, 1 X, 2..5 ring mechanical, 6 M_top, 7 M_bot, 8 Y, 9 lead_out
    out.sites = {
        {0, SiteKind::OpticalA, 0.0, -1.0, 0.0},  {1, SiteKind::OpticalA, 0.0, 0.0, 0.0},
        {2, SiteKind::Mechanical, 0.5, 0.5, 0.0}, {3, SiteKind::Mechanical, 0.5, 1.5, 0.0},
        {4, SiteKind::Mechanical, -0.5, 1.5, 0.0}, {5, SiteKind::Mechanical, -0.5, 0.5, 0.0},
        {6, SiteKind::OpticalB, 1.0, 1.0, 0.0},   {7, SiteKind::OpticalB, -1.0, 1.0, 0.0},
        {8, SiteKind::OpticalA, 0.0, 2.0, 0.0},   {9, SiteKind::OpticalA, 0.0, 3.0, 0.0},
    };
    const double q = phi / 4.0;  // one quarter of the flux per optical bond
    out.links = {
        {0, 1, LinkKind::PhotonHop, j_lead, 0.0},
        {8, 9, LinkKind::PhotonHop, j_lead, 0.0},
        {2, 1, LinkKind::OptomechanicalCoupling, g, 0.0},
        {2, 6, LinkKind::OptomechanicalCoupling, g, q},
        {3, 6, LinkKind::OptomechanicalCoupling, g, 0.0},
        {3, 8, LinkKind::OptomechanicalCoupling, g, q},
        {4, 8, LinkKind::OptomechanicalCoupling, g, 0.0},
        {4, 7, LinkKind::OptomechanicalCoupling, g, q},
        {5, 7, LinkKind::OptomechanicalCoupling, g, 0.0},
        {5, 1, LinkKind::OptomechanicalCoupling, g, q},
    };
    out.ring_cycle = {1, 2, 6, 3, 8, 4, 7, 5};
    out.input_site = 0;
    out.output_site = 9;
    return out;
}

LatticeGraph build_synthetic_ladder(int n, double dphi, double g, double J, double K) {
    if (n < 2) throw std::invalid_argument("build_synthetic_ladder: n must be >= 2");
    LatticeGraph out;
    out.scheme = Scheme::SyntheticLadder;
    out.rows = 2;
    out.cols = n;
    for (int j = 0; j < n; ++j)
        out.sites.push_back({j, SiteKind::OpticalA, 0.0, static_cast<double>(j), 0.0});
    for (int j = 0; j < n; ++j)
        out.sites.push_back({n + j, SiteKind::Mechanical, 1.0, static_cast<double>(j), 0.0});
    for (int j = 0; j + 1 < n; ++j) {
        out.links.push_back({j, j + 1, LinkKind::PhotonHop, J, 0.0});
        out.links.push_back({n + j, n + j + 1, LinkKind::PhononHop, K, 0.0});
    }
    for (int j = 0; j < n; ++j)
        out.links.push_back({n + j, j, LinkKind::OptomechanicalCoupling, g, j * dphi});
    return out;
}

PhaseField landau_gauge_phases(int rows, int cols, double flux_per_plaquette) {
    PhaseField field;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c)
            field.set(r * cols + c, r * cols + c + 1, r * flux_per_plaquette);
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c < cols; ++c) field.set(r * cols + c, (r + 1) * cols + c, 0.0);
    return field;
}

PhaseField landau_gauge_phases_torus(int n, int p, int q) {
    if (q < 1 || n % q != 0)
        throw std::invalid_argument("landau_gauge_phases_torus: q must divide n");
    const double flux = kTwoPi * p / q;
    PhaseField field;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            field.set(r * n + c, r * n + (c + 1) % n, r * flux);
            field.set(r * n + c, ((r + 1) % n) * n + c, 0.0);
        }
    return field;
}

// ----------------------------- flux audits ----------------------------------

PhaseField phase_field_of(const LatticeGraph& graph) {
    PhaseField field;
    for (const Link& l : graph.links) field.set(l.i, l.j, l.phase);
    return field;
}

namespace {

// (r,c) -> (r+1,c) -> (r+1,c+1) -> (r,c+1) -> (r,c) around the optical square,
// with mid-sites folded into the horizontal bond phases.
FluxPattern grid_fluxes(const LatticeGraph& graph, const PhaseField& phases) {
    const bool has_mid = graph.scheme != Scheme::IdealHofstadter;
    const int ocols = has_mid ? (graph.scheme == Scheme::Conversion
                                     ? graph.cols
                                     : (graph.cols + 1) / 2)
                              : graph.cols;
    auto optical_id = [&](int r, int c) { return graph.site_at(r, c); };
    auto horizontal = [&](int r, int c) {  // phase of optical bond (r,c) -> (r,c+1)
        const int a = optical_id(r, c);
        const int b = optical_id(r, c + 1);
        if (!has_mid) return phases.get_or(a, b, 0.0);
        const int mid = graph.site_at(r, c + 0.5);
        if (mid < 0) throw std::invalid_argument("plaquette_fluxes: missing mid-site");
        return phases.get_or(a, mid, 0.0) + phases.get_or(mid, b, 0.0);
    };
    FluxPattern out;
    for (int r = 0; r + 1 < graph.rows; ++r)
        for (int c = 0; c + 1 < ocols; ++c) {
            const int a = optical_id(r, c);
            const int b = optical_id(r + 1, c);
            const int b2 = optical_id(r + 1, c + 1);
            const int a2 = optical_id(r, c + 1);
            if (a < 0 || b < 0 || b2 < 0 || a2 < 0) continue;
            const double sum = phases.get_or(a, b, 0.0) + horizontal(r + 1, c) +
                               phases.get_or(b2, a2, 0.0) - horizontal(r, c);
            out.plaquettes.push_back({r, c, wrap_to_pi(sum)});
        }
    return out;
}

FluxPattern ring_fluxes(const LatticeGraph& graph, const PhaseField& phases) {
    FluxPattern out;
    double sum = 0.0;
    const auto& cyc = graph.ring_cycle;
    for (std::size_t k = 0; k < cyc.size(); ++k)
        sum += phases.get_or(cyc[k], cyc[(k + 1) % cyc.size()], 0.0);
    out.plaquettes.push_back({0, 0, wrap_to_pi(sum)});
    return out;
}

FluxPattern ladder_fluxes(const LatticeGraph& graph, const PhaseField& phases) {
    const int n = graph.cols;
    FluxPattern out;
    for (int j = 0; j + 1 < n; ++j) {
        const double sum = phases.get_or(j, n + j, 0.0) + phases.get_or(n + j, n + j + 1, 0.0) +
                           phases.get_or(n + j + 1, j + 1, 0.0) + phases.get_or(j + 1, j, 0.0);
        out.plaquettes.push_back({0, j, wrap_to_pi(sum)});
    }
    return out;
}

}  // namespace

FluxPattern plaquette_fluxes(const LatticeGraph& graph, const PhaseField& phases) {
    switch (graph.scheme) {
        case Scheme::ABRing: return ring_fluxes(graph, phases);
        case Scheme::SyntheticLadder: return ladder_fluxes(graph, phases);
        default: return grid_fluxes(graph, phases);
    }
}

FluxPattern plaquette_fluxes(const LatticeGraph& graph) {
    return plaquette_fluxes(graph, phase_field_of(graph));
}

FluxPattern plaquette_fluxes(int rows, int cols, const PhaseField& phases) {
    LatticeGraph grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.scheme = Scheme::IdealHofstadter;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            grid.sites.push_back({r * cols + c, SiteKind::OpticalA, static_cast<double>(r),
                                  static_cast<double>(c), 0.0});
    return grid_fluxes(grid, phases);
}

PhaseField apply_gauge_transform(const PhaseField& phases, std::span<const double> xi) {
    PhaseField out;
    phases.for_each([&](int i, int j, double phi) {
        if (i >= static_cast<int>(xi.size()) || j >= static_cast<int>(xi.size()))
            throw std::invalid_argument("apply_gauge_transform: xi not defined for all sites");
        out.set(i, j, phi + xi[j] - xi[i]);
    });
    return out;
}

LatticeGraph with_phases(const LatticeGraph& graph, const PhaseField& phases) {
    LatticeGraph out = graph;
    for (Link& l : out.links) l.phase = phases.get_or(l.i, l.j, l.phase);
    return out;
}

}  // namespace omflux
