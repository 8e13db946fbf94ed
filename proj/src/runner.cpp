#include "omflux/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "omflux/analysis.hpp"
#include "omflux/floquet.hpp"
#include "omflux/hofstadter.hpp"
#include "omflux/io.hpp"
#include "omflux/parallel.hpp"
#include "omflux/pert.hpp"
#include "omflux/response.hpp"

namespace omflux {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string hex64(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

std::string config_hash(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.threads = 0;
    c.out_dir.clear();
    return hex64(fnv1a(config_json(c)));
}

PhaseField load_phase_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open phase file '" + path.string() + "'"});
    PhaseField field;
    std::string line;
    std::getline(in, line);  // header i,j,phase
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int i{}, j{};
        double phi{};
        if (std::sscanf(line.c_str(), "%d,%d,%lf", &i, &j, &phi) != 3)
            throw ConfigError({"bad phase file line: '" + line + "'"});
        field.set(i, j, phi);
    }
    return field;
}

LatticeGraph build_graph(const ExperimentConfig& c, double flux) {
    switch (c.scheme) {
        case Scheme::ModulatedLink:
            return build_modulated_link_lattice(c.rows, c.cols, {c.staircase_step, 0.0}, c.J,
                                                c.J_vertical);
        case Scheme::Conversion: {
            LatticeGraph g = build_conversion_lattice_landau(c.rows, c.cols, c.g,
                                                             c.J_vertical > 0 ? c.J_vertical : c.J,
                                                             flux);
            if (!c.flux.phase_file.empty())
                g = with_phases(g, load_phase_file(c.flux.phase_file));
            return g;
        }
        case Scheme::ABRing:
            return build_ab_ring(c.g, c.J, flux);
        case Scheme::SyntheticLadder:
            return build_synthetic_ladder(c.cols, flux, c.g, c.J, c.K);
        case Scheme::IdealHofstadter: {
            LatticeGraph g;
            g.rows = c.rows;
            g.cols = c.cols;
            g.scheme = Scheme::IdealHofstadter;
            for (int r = 0; r < c.rows; ++r)
                for (int col = 0; col < c.cols; ++col)
                    g.sites.push_back({r * c.cols + col, SiteKind::OpticalA,
                                       static_cast<double>(r), static_cast<double>(col), 0.0});
            const PhaseField phases = c.flux.phase_file.empty()
                                          ? landau_gauge_phases(c.rows, c.cols, flux)
                                          : load_phase_file(c.flux.phase_file);
            phases.for_each([&](int i, int j, double phi) {
                g.links.push_back({i, j, LinkKind::PhotonHop, c.J, phi});
            });
            return g;
        }
    }
    throw ConfigError({"unhandled scheme"});
}

struct Output {
    std::filesystem::path dir;
    RunManifest manifest;

    void emit(const std::string& name, const std::string& content) {
        write_text_atomic(dir / name, content);
        manifest.checksums[name] = hex64(fnv1a(content));
    }
    void emit_pgm(const std::string& name, const PgmImage& image) {
        write_pgm16_atomic(dir / name, image);
        manifest.checksums[name] = hex64(fnv1a_file(dir / name));
    }
    void emit_lattice(const LatticeGraph& graph) {
        write_lattice_csv(dir, graph);
        for (const char* f : {"sites.csv", "links.csv", "fluxes.csv"})
            manifest.checksums[f] = hex64(fnv1a_file(dir / f));
    }
};

void write_manifest(Output& out, const std::map<std::string, std::string>& metadata) {
    std::string text = "{\n  \"config_hash\": \"" + out.manifest.config_hash + "\",\n";
    text += "  \"version\": \"" + out.manifest.version + "\",\n";
    text += "  \"timestamp\": \"" + out.manifest.timestamp + "\",\n";
    text += "  \"metadata\": {";
    bool first = true;
    for (const auto& [k, v] : metadata) {
        text += std::string(first ? "" : ", ") + "\"" + k + "\": \"" + v + "\"";
        first = false;
    }
    text += "},\n  \"outputs\": {";
    first = true;
    for (const auto& [k, v] : out.manifest.checksums) {
        text += std::string(first ? "" : ", ") + "\"" + k + "\": \"" + v + "\"";
        first = false;
    }
    text += "}\n}\n";
    write_text_atomic(out.dir / "manifest.json", text);
}

// ------------------------------- commands -----------------------------------

void run_butterfly_ideal(const ExperimentConfig& c, Output& out) {
    if (c.rows != c.cols) throw ConfigError({"ideal_hofstadter butterfly requires rows == cols"});
    const int n = c.rows;
    const std::vector<double> fluxes = c.flux_values();
    const int probe = c.probe.site >= 0 ? c.probe.site : central_site(n);
    const double lo = c.omega_grid.min.value_or(-4.0 * c.J - 20.0 * c.kappa);
    const double hi = c.omega_grid.max.value_or(4.0 * c.J + 20.0 * c.kappa);
    const Eigen::VectorXd grid = linspace(lo, hi, c.omega_grid.steps);

    std::vector<Eigen::VectorXd> curves(fluxes.size());
    parallel_for(static_cast<int>(fluxes.size()), c.threads, [&](int k) {
        HofstadterModel model{n, c.J, landau_gauge_phases(n, n, fluxes[k]), {}, c.kappa};
        curves[k] = ldos(spectrum(build_hofstadter_hamiltonian(model)), probe, grid, c.kappa).rho;
    });

    std::string csv = "flux,omega,rho\n";
    PgmImage image{static_cast<int>(grid.size()), static_cast<int>(fluxes.size()), {}};
    for (std::size_t k = 0; k < fluxes.size(); ++k) {
        for (int w = 0; w < grid.size(); ++w) {
            csv += sci(fluxes[k]) + "," + sci(grid(w)) + "," + sci(curves[k](w)) + "\n";
            image.data.push_back(curves[k](w));
        }
    }
    out.emit("butterfly.csv", csv);
    out.emit_pgm("butterfly.pgm", image);
    out.emit_lattice(build_graph(c, fluxes.front()));
}

void run_butterfly_modulated(const ExperimentConfig& c, Output& out) {
    const std::vector<double> fluxes = c.flux_values();
    const LatticeGraph graph = build_graph(c, 0.0);
    const int probe = resolve_probe_site(graph, c.probe);
    const double w0 = graph.sites[probe].omega;
    const double span = c.Omega + 6.0 * 0.108 + 20.0 * c.kappa;  // main band + sidebands
    const double lo = c.omega_grid.min.value_or(w0 - span);
    const double hi = c.omega_grid.max.value_or(w0 + span);
    const Eigen::VectorXd grid = linspace(lo, hi, c.omega_grid.steps);

    std::vector<Eigen::VectorXd> curves(fluxes.size());
    parallel_for(static_cast<int>(fluxes.size()), c.threads, [&](int k) {
        ModulatedLinkModel model{graph, c.Omega, {}, c.kappa};
        set_landau_drive(model, c.g0beta, fluxes[k]);
        curves[k] = floquet_ldos(model, probe, grid, c.truncation_M).rho;
    });

    std::string csv = "flux,omega,rho,site,M_used\n";
    PgmImage image{static_cast<int>(grid.size()), static_cast<int>(fluxes.size()), {}};
    for (std::size_t k = 0; k < fluxes.size(); ++k) {
        for (int w = 0; w < grid.size(); ++w) {
            csv += sci(fluxes[k]) + "," + sci(grid(w)) + "," + sci(curves[k](w)) + "," +
                   std::to_string(probe) + "," + std::to_string(c.truncation_M) + "\n";
            image.data.push_back(curves[k](w));
        }
    }
    out.emit("floquet_ldos.csv", csv);
    out.emit_pgm("butterfly.pgm", image);
    out.emit_lattice(graph);
}

void run_ldos(const ExperimentConfig& c, Output& out) {
    const double flux = c.flux.value;
    const LatticeGraph graph = build_graph(c, flux);
    LDOSCurve curve;
    int probe;
    if (c.scheme == Scheme::IdealHofstadter) {
        probe = c.probe.site >= 0 ? c.probe.site : central_site(c.rows);
        HofstadterModel model{c.rows, c.J, landau_gauge_phases(c.rows, c.cols, flux), {}, c.kappa};
        const Spectrum spec = spectrum(build_hofstadter_hamiltonian(model));
        Eigen::VectorXd grid = default_omega_grid(spec, c.kappa);
        if (c.omega_grid.min && c.omega_grid.max)
            grid = linspace(*c.omega_grid.min, *c.omega_grid.max, c.omega_grid.steps);
        curve = ldos(spec, probe, grid, c.kappa);
    } else if (c.scheme == Scheme::ModulatedLink) {
        probe = resolve_probe_site(graph, c.probe);
        ModulatedLinkModel model{graph, c.Omega, {}, c.kappa};
        set_landau_drive(model, c.g0beta, flux);
        const double w0 = graph.sites[probe].omega;
        const double span = c.Omega + 6.0 * 0.108 + 20.0 * c.kappa;
        Eigen::VectorXd grid = linspace(c.omega_grid.min.value_or(w0 - span),
                                        c.omega_grid.max.value_or(w0 + span),
                                        c.omega_grid.steps);
        curve = floquet_ldos(model, probe, grid, c.truncation_M);
    } else {
        throw ConfigError({"ldos command requires ideal_hofstadter or modulated_link"});
    }
    std::string csv = "omega,rho,site\n";
    for (int w = 0; w < curve.omega.size(); ++w)
        csv += sci(curve.omega(w)) + "," + sci(curve.rho(w)) + "," + std::to_string(probe) + "\n";
    out.emit("ldos.csv", csv);
    out.emit_lattice(graph);
}

void run_transport(const ExperimentConfig& c, Output& out,
                   std::map<std::string, std::string>& metadata) {
    if (c.scheme != Scheme::Conversion)
        throw ConfigError({"transport command requires the conversion scheme"});
    const double flux = c.flux.value;
    const LatticeGraph graph = build_graph(c, flux);
    const ConversionModel model = make_conversion_model(graph, c.delta, c.kappa, c.Gamma);
    const int probe = resolve_probe_site(graph, c.probe);

    if (c.probe.detuning_sweep) {
        const SweepSpec& s = *c.probe.detuning_sweep;
        std::vector<double> totals(s.steps);
        std::vector<double> detunings(s.steps);
        parallel_for(s.steps, c.threads, [&](int k) {
            detunings[k] = s.steps == 1 ? s.start
                                        : s.start + (s.stop - s.start) * k / (s.steps - 1);
            const ResponseMap map = response_map(model, detunings[k], probe);
            double total = 0.0;
            for (int j = 0; j < map.amplitudes.size(); ++j)
                if (j != probe) total += std::norm(map.amplitudes(j));
            totals[k] = total;
        });
        std::string scan = "delta_p,total_intensity\n";
        for (int k = 0; k < s.steps; ++k)
            scan += sci(detunings[k]) + "," + sci(totals[k]) + "\n";
        out.emit("detuning_scan.csv", scan);
    }

    const ResponseMap map = response_map(model, c.probe.detuning, probe);
    std::string csv = "site_row,site_col,kind,re_amp,im_amp,intensity\n";
    for (const Site& s : graph.sites) {
        const Complex a = map.amplitudes(s.id);
        csv += sci(s.row) + "," + sci(s.col) + "," + to_string(s.kind) + "," + sci(a.real()) +
               "," + sci(a.imag()) + "," + sci(std::norm(a)) + "\n";
    }
    out.emit("response.csv", csv);

    // optical-plane intensity heatmap
    PgmImage image{c.cols, c.rows, std::vector<double>(static_cast<std::size_t>(c.rows) * c.cols, 0.0)};
    for (const Site& s : graph.sites) {
        if (s.kind == SiteKind::Mechanical) continue;
        const int r = static_cast<int>(std::lround(s.row));
        const int col = static_cast<int>(std::lround(s.col));
        image.data[static_cast<std::size_t>(r) * c.cols + col] = std::norm(map.amplitudes(s.id));
    }
    out.emit_pgm("response.pgm", image);
    out.emit_lattice(graph);

    const std::string phash = out.manifest.config_hash;
    std::string analysis = "metric_name,value,parameters_hash\n";
    if (c.probe.placement == "edge" || c.probe.site >= 0) {
        const EdgeArcs arcs = edge_arcs(graph, probe, 5);
        if (!arcs.forward.empty() && !arcs.backward.empty()) {
            const ChiralityMetric m = edge_chirality_metric(map, arcs.forward, arcs.backward);
            analysis += "edge_chirality_ratio," + sci(m.ratio) + "," + phash + "\n";
        }
    }
    if (c.probe.placement == "center") {
        const double radius = extract_ring_radius(map, graph);
        analysis += "ring_radius," + sci(radius) + "," + phash + "\n";
        const LandauParameters lp = landau_parameters(c.J, std::abs(flux) > 0 ? std::abs(flux) : 1.0, 1);
        analysis += "landau_radius_n1," + sci(lp.orbit_radius) + "," + phash + "\n";
    }
    out.emit("analysis.csv", analysis);
    metadata["probe_site"] = std::to_string(probe);
}

void run_abscan(const ExperimentConfig& c, Output& out) {
    if (c.scheme != Scheme::ABRing)
        throw ConfigError({"abscan command requires the ab_ring scheme"});
    const std::vector<double> fluxes = c.flux_values();
    const ABScan scan =
        ab_flux_scan(c.g, c.J, c.delta, c.kappa, c.Gamma, c.probe.detuning, fluxes);
    std::string csv = "flux,t_abs2_normalized\n";
    for (std::size_t k = 0; k < scan.fluxes.size(); ++k)
        csv += sci(scan.fluxes[k]) + "," + sci(scan.t2[k]) + "\n";
    out.emit("abscan.csv", csv);
    out.emit_lattice(build_graph(c, c.flux.value));
}

void run_ladder(const ExperimentConfig& c, Output& out) {
    if (c.scheme != Scheme::SyntheticLadder)
        throw ConfigError({"ladder command requires the synthetic_ladder scheme"});
    const std::vector<double> dphis = c.flux_values();
    std::vector<double> conv(dphis.size());
    parallel_for(static_cast<int>(dphis.size()), c.threads, [&](int k) {
        const LatticeGraph graph = build_graph(c, dphis[k]);
        const ConversionModel model = make_conversion_model(graph, c.delta, c.kappa, c.Gamma);
        const int probe = resolve_probe_site(graph, c.probe);
        conv[k] = rail_conversion(ladder_response(model, c.probe.detuning, probe), graph);
    });
    std::string csv = "dphi,rail_conversion\n";
    for (std::size_t k = 0; k < dphis.size(); ++k)
        csv += sci(dphis[k]) + "," + sci(conv[k]) + "\n";
    out.emit("ladder.csv", csv);
    out.emit_lattice(build_graph(c, dphis.front()));
}

void run_validate(const ExperimentConfig& c, Output& out) {
    (void)c;
    std::vector<std::string> failures;
    auto check = [&](bool ok, const std::string& name) {
        std::printf("%s %s\n", ok ? "ok  " : "FAIL", name.c_str());
        if (!ok) failures.push_back(name);
    };

    // closed-form effective coupling at the butterfly parameters
    const auto jm = pert::jeff_modulated(0.3, 0.3, 0.3, -0.5, 0.5);
    check(std::abs(jm.magnitude - 0.108) < 1e-15, "jeff_modulated butterfly value 0.108");

    // Schrieffer-Wolff convergence table
    std::printf("%10s %16s %16s %12s\n", "epsilon", "splitting_exact", "2*j_eff", "rel_err");
    double prev_err = -1.0;
    bool converges = true;
    for (double eps : {0.1, 0.05, 0.025}) {
        pert::FourLevelBlock b;
        b.omega_I = 0.5;
        b.omega_A = 1.0;
        b.omega_B = 0.0;
        b.Omega = 1.0;
        b.J_A = b.J_B = eps * 0.5;
        b.g0beta = eps * 1.0;
        const double exact = pert::min_splitting_over_Omega(b, 0.2);
        const double approx = 2.0 * pert::schrieffer_wolff_effective(b).j_eff;
        const double rel = std::abs(exact - approx) / exact;
        std::printf("%10.4f %16.9e %16.9e %12.5e\n", eps, exact, approx, rel);
        if (prev_err > 0.0 && rel > prev_err / 3.0) converges = false;
        prev_err = rel;
    }
    check(converges, "Schrieffer-Wolff error falls by >= 3x per halving");

    // gauge closure on a conversion lattice
    {
        const LatticeGraph g = build_conversion_lattice_landau(4, 4, 0.2, 0.13, 0.7);
        const FluxPattern before = plaquette_fluxes(g);
        std::vector<double> xi(g.site_count());
        for (int i = 0; i < g.site_count(); ++i) xi[i] = std::sin(3.7 * i + 0.2);
        const FluxPattern after =
            plaquette_fluxes(g, apply_gauge_transform(phase_field_of(g), xi));
        bool same = before.plaquettes.size() == after.plaquettes.size();
        for (std::size_t k = 0; same && k < before.plaquettes.size(); ++k)
            same = std::abs(wrap_to_pi(before.plaquettes[k].flux - after.plaquettes[k].flux)) <= 1e-12;
        check(same, "plaquette fluxes invariant under gauge transforms");
    }

    // LDOS sum rule on a small ideal lattice
    {
        HofstadterModel model{6, 0.108, landau_gauge_phases(6, 6, 1.0), {}, 0.01};
        const Spectrum spec = spectrum(build_hofstadter_hamiltonian(model));
        const LDOSCurve curve =
            ldos(spec, central_site(6), default_omega_grid(spec, model.kappa), model.kappa);
        check(ldos_sum_rule_check(curve).deviation < 0.01, "LDOS sum rule within 1%");
    }

    // Onsager reciprocity on a small conversion lattice
    {
        bool ok = true;
        for (double flux : {0.4, 1.1}) {
            const ConversionModel fwd = make_conversion_model(
                build_conversion_lattice_landau(3, 3, 0.2, 0.13, flux), 0.3, 0.01, 0.001);
            const ConversionModel bwd = make_conversion_model(
                build_conversion_lattice_landau(3, 3, 0.2, 0.13, -flux), 0.3, 0.01, 0.001);
            const Eigen::VectorXcd t_f = transmission(fwd, 1.27, 0);
            for (int j = 0; j < t_f.size() && ok; ++j) {
                const Eigen::VectorXcd t_b = transmission(bwd, 1.27, j);
                ok = std::abs(t_f(j) - t_b(0)) <= 1e-10;
            }
        }
        check(ok, "Onsager reciprocity t(j,l;phi) = t(l,j;-phi)");
    }

    // Aharonov-Bohm 2pi periodicity
    {
        const ABScan scan = ab_flux_scan(0.01, 0.001, 0.1, 0.01, 0.001, 1.103,
                                         {0.3, 0.3 + 2.0 * std::numbers::pi});
        check(std::abs(scan.t2[0] - scan.t2[1]) <= 1e-10, "AB transmission 2pi-periodic");
    }

    if (!failures.empty())
        throw ValidationError("validation failed: " + failures.front());
    out.emit("validate.txt", "all checks passed\n");
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "butterfly") return Command::Butterfly;
    if (name == "ldos") return Command::Ldos;
    if (name == "transport") return Command::Transport;
    if (name == "abscan") return Command::ABScanCmd;
    if (name == "ladder") return Command::Ladder;
    if (name == "validate") return Command::Validate;
    throw ConfigError({"unknown command '" + name + "'"});
}

int resolve_probe_site(const LatticeGraph& graph, const ProbeSpec& probe) {
    if (probe.site >= 0) {
        if (probe.site >= graph.site_count())
            throw ConfigError({"probe.site out of range"});
        return probe.site;
    }
    const double target_row = probe.placement == "edge" ? 1.0 : graph.rows / 2.0;
    double target_col = 0.0;
    for (const Site& s : graph.sites) target_col = std::max(target_col, s.col);
    target_col /= 2.0;
    int best = -1;
    double best_dist = 1e300;
    for (const Site& s : graph.sites) {
        if (s.kind == SiteKind::Mechanical || s.kind == SiteKind::Interface) continue;
        const double d = std::hypot(s.row - target_row, s.col - target_col);
        if (d < best_dist) {
            best_dist = d;
            best = s.id;
        }
    }
    if (best < 0) throw ConfigError({"no optical site available for the probe"});
    return best;
}

RunManifest run(const ExperimentConfig& config, Command command) {
    Output out;
    out.dir = config.out_dir;
    std::filesystem::create_directories(out.dir);
    out.manifest.config_hash = config_hash(config);
    out.manifest.version = kVersion;
    out.manifest.timestamp = now_iso8601();
    std::map<std::string, std::string> metadata;

    switch (command) {
        case Command::Butterfly:
            if (config.scheme == Scheme::IdealHofstadter) run_butterfly_ideal(config, out);
            else if (config.scheme == Scheme::ModulatedLink) run_butterfly_modulated(config, out);
            else throw ConfigError({"butterfly requires ideal_hofstadter or modulated_link"});
            break;
        case Command::Ldos: run_ldos(config, out); break;
        case Command::Transport: run_transport(config, out, metadata); break;
        case Command::ABScanCmd: run_abscan(config, out); break;
        case Command::Ladder: run_ladder(config, out); break;
        case Command::Validate: run_validate(config, out); break;
    }
    write_manifest(out, metadata);
    return out.manifest;
}

}  // namespace omflux
