#include "omflux/config.hpp"

#include "json.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace omflux {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

const std::map<std::string, Scheme> kSchemes = {
    {"modulated_link", Scheme::ModulatedLink},
    {"conversion", Scheme::Conversion},
    {"ab_ring", Scheme::ABRing},
    {"synthetic_ladder", Scheme::SyntheticLadder},
    {"ideal_hofstadter", Scheme::IdealHofstadter},
};

class Validator {
public:
    std::vector<std::string> errors;

    void require(bool ok, const std::string& message) {
        if (!ok) errors.push_back(message);
    }

    void check_keys(const json& obj, const std::string& path,
                    const std::set<std::string>& known) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!known.count(it.key()))
                errors.push_back("unknown key '" + (path.empty() ? it.key() : path + "." + it.key()) + "'");
    }

    template <typename T>
    void read(const json& obj, const std::string& path, const char* key, T& dest) {
        if (!obj.contains(key)) return;
        try {
            dest = obj.at(key).get<T>();
        } catch (const json::exception&) {
            errors.push_back("key '" + path + key + "' has the wrong type");
        }
    }
};

std::optional<SweepSpec> read_sweep(Validator& v, const json& obj, const std::string& path) {
    SweepSpec s;
    v.read(obj, path, "start", s.start);
    v.read(obj, path, "stop", s.stop);
    v.read(obj, path, "steps", s.steps);
    v.require(s.steps >= 1, "key '" + path + "steps' must be >= 1");
    return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error("invalid configuration: " + join(messages)),
      messages_(std::move(messages)) {}

std::vector<double> ExperimentConfig::flux_values() const {
    if (!flux.sweep) return {flux.value};
    const SweepSpec& s = *flux.sweep;
    std::vector<double> out;
    out.reserve(s.steps);
    for (int k = 0; k < s.steps; ++k)
        out.push_back(s.steps == 1 ? s.start
                                   : s.start + (s.stop - s.start) * k / (s.steps - 1));
    return out;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!doc.is_object()) throw ConfigError({"top-level document must be an object"});

    Validator v;
    ExperimentConfig c;

    v.check_keys(doc, "", {"scheme", "rows", "cols", "couplings", "frequencies", "rates",
                           "flux", "probe", "omega_grid", "truncation_M", "threads",
                           "out_dir"});

    // required keys
    v.require(doc.contains("scheme"), "missing required key 'scheme'");
    v.require(doc.contains("rows"), "missing required key 'rows'");
    v.require(doc.contains("cols"), "missing required key 'cols'");
    v.require(doc.contains("rates") && doc["rates"].is_object() &&
                  doc["rates"].contains("kappa"),
              "missing required key 'rates.kappa'");

    if (doc.contains("scheme")) {
        const auto name = doc["scheme"].is_string() ? doc["scheme"].get<std::string>() : "";
        auto it = kSchemes.find(name);
        if (it == kSchemes.end())
            v.errors.push_back("key 'scheme' must be one of modulated_link, conversion, "
                               "ab_ring, synthetic_ladder, ideal_hofstadter");
        else
            c.scheme = it->second;
    }
    v.read(doc, "", "rows", c.rows);
    v.read(doc, "", "cols", c.cols);
    v.read(doc, "", "truncation_M", c.truncation_M);
    v.read(doc, "", "threads", c.threads);
    v.read(doc, "", "out_dir", c.out_dir);

    if (doc.contains("couplings") && doc["couplings"].is_object()) {
        const json& j = doc["couplings"];
        v.check_keys(j, "couplings", {"J", "J_vertical", "g", "g0beta", "K"});
        v.read(j, "couplings.", "J", c.J);
        v.read(j, "couplings.", "J_vertical", c.J_vertical);
        v.read(j, "couplings.", "g", c.g);
        v.read(j, "couplings.", "g0beta", c.g0beta);
        v.read(j, "couplings.", "K", c.K);
    }
    if (doc.contains("frequencies") && doc["frequencies"].is_object()) {
        const json& j = doc["frequencies"];
        v.check_keys(j, "frequencies", {"Omega", "Omega0", "delta", "staircase_step"});
        v.read(j, "frequencies.", "Omega", c.Omega);
        v.read(j, "frequencies.", "Omega0", c.Omega0);
        v.read(j, "frequencies.", "delta", c.delta);
        v.read(j, "frequencies.", "staircase_step", c.staircase_step);
    }
    if (doc.contains("rates") && doc["rates"].is_object()) {
        const json& j = doc["rates"];
        v.check_keys(j, "rates", {"kappa", "Gamma"});
        v.read(j, "rates.", "kappa", c.kappa);
        v.read(j, "rates.", "Gamma", c.Gamma);
    }
    if (doc.contains("flux")) {
        const json& j = doc["flux"];
        if (!j.is_object()) {
            v.errors.push_back("key 'flux' must be an object");
        } else {
            v.check_keys(j, "flux", {"value", "start", "stop", "steps", "phase_file"});
            v.read(j, "flux.", "value", c.flux.value);
            v.read(j, "flux.", "phase_file", c.flux.phase_file);
            if (j.contains("start") || j.contains("stop") || j.contains("steps"))
                c.flux.sweep = read_sweep(v, j, "flux.");
        }
    }
    if (doc.contains("probe")) {
        const json& j = doc["probe"];
        if (!j.is_object()) {
            v.errors.push_back("key 'probe' must be an object");
        } else {
            v.check_keys(j, "probe", {"site", "placement", "detuning", "detuning_sweep"});
            v.read(j, "probe.", "site", c.probe.site);
            v.read(j, "probe.", "placement", c.probe.placement);
            v.read(j, "probe.", "detuning", c.probe.detuning);
            if (j.contains("detuning_sweep") && j["detuning_sweep"].is_object())
                c.probe.detuning_sweep = read_sweep(v, j["detuning_sweep"], "probe.detuning_sweep.");
            v.require(c.probe.placement == "center" || c.probe.placement == "edge",
                      "key 'probe.placement' must be 'center' or 'edge'");
        }
    }
    if (doc.contains("omega_grid")) {
        const json& j = doc["omega_grid"];
        if (!j.is_object()) {
            v.errors.push_back("key 'omega_grid' must be an object");
        } else {
            v.check_keys(j, "omega_grid", {"min", "max", "steps"});
            if (j.contains("min")) { double x{}; v.read(j, "omega_grid.", "min", x); c.omega_grid.min = x; }
            if (j.contains("max")) { double x{}; v.read(j, "omega_grid.", "max", x); c.omega_grid.max = x; }
            v.read(j, "omega_grid.", "steps", c.omega_grid.steps);
        }
    }

    // cross-field validation
    if (doc.contains("rates") && doc["rates"].contains("kappa"))
        v.require(c.kappa > 0.0, "key 'rates.kappa' must be > 0");
    const bool needs_gamma = c.scheme == Scheme::Conversion || c.scheme == Scheme::ABRing ||
                             c.scheme == Scheme::SyntheticLadder;
    if (needs_gamma && doc.contains("scheme"))
        v.require(c.Gamma > 0.0, "key 'rates.Gamma' must be > 0 for conversion-type schemes");
    if (doc.contains("rows")) v.require(c.rows >= 1, "key 'rows' must be >= 1");
    if (doc.contains("cols")) v.require(c.cols >= 1, "key 'cols' must be >= 1");
    v.require(c.truncation_M >= 1, "key 'truncation_M' must be >= 1");
    v.require(c.omega_grid.steps >= 1, "key 'omega_grid.steps' must be >= 1");
    v.require(c.threads >= 0, "key 'threads' must be >= 0");

    if (!v.errors.empty()) throw ConfigError(std::move(v.errors));
    return c;
}

namespace {

const std::map<std::string, const char*> kPresets = {
    // 10x10 ideal Hofstadter butterfly at the effective coupling
    {"fig2a", R"({
  "scheme": "ideal_hofstadter",
  "rows": 10, "cols": 10,
  "couplings": {"J": 0.108},
  "rates": {"kappa": 0.01},
  "flux": {"start": 0.0, "stop": 6.283185307179586, "steps": 64},
  "probe": {"placement": "center"},
  "omega_grid": {"steps": 600},
  "out_dir": "out"
})"},
    // 12x12 modulated-link lattice, full Floquet treatment
    {"fig2", R"({
  "scheme": "modulated_link",
  "rows": 12, "cols": 12,
  "couplings": {"J": 0.3, "J_vertical": 0.108, "g0beta": 0.3},
  "frequencies": {"Omega": 1.0, "staircase_step": 0.5},
  "rates": {"kappa": 0.01},
  "flux": {"start": 0.0, "stop": 6.283185307179586, "steps": 8},
  "probe": {"placement": "center"},
  "omega_grid": {"steps": 600},
  "truncation_M": 8,
  "out_dir": "out"
})"},
    // 22x22 conversion lattice, bulk injection (cyclotron orbits)
    {"fig3a", R"({
  "scheme": "conversion",
  "rows": 22, "cols": 22,
  "couplings": {"g": 0.2, "J": 0.13},
  "frequencies": {"delta": 0.3},
  "rates": {"kappa": 0.01, "Gamma": 0.001},
  "flux": {"value": 0.7853981633974483},
  "probe": {"placement": "center", "detuning": 1.278},
  "out_dir": "out"
})"},
    // 22x22 conversion lattice, edge injection (chiral edge channel)
    {"fig3b", R"({
  "scheme": "conversion",
  "rows": 22, "cols": 22,
  "couplings": {"g": 0.2, "J": 0.13},
  "frequencies": {"delta": 0.3},
  "rates": {"kappa": 0.01, "Gamma": 0.001},
  "flux": {"value": 0.7853981633974483},
  "probe": {"placement": "edge", "detuning": 1.260},
  "out_dir": "out"
})"},
    // minimal Aharonov-Bohm ring, flux scan of the transmission
    {"fig3d", R"({
  "scheme": "ab_ring",
  "rows": 1, "cols": 1,
  "couplings": {"g": 0.01, "J": 0.001},
  "frequencies": {"delta": 0.1},
  "rates": {"kappa": 0.01, "Gamma": 0.001},
  "flux": {"start": 0.0, "stop": 6.283185307179586, "steps": 128},
  "probe": {"detuning": 1.103},
  "out_dir": "out"
})"},
    // synthetic photon/phonon ladder, phase-gradient scan
    {"fig4b", R"({
  "scheme": "synthetic_ladder",
  "rows": 2, "cols": 30,
  "couplings": {"g": 0.05, "J": 0.1, "K": 0.1},
  "frequencies": {"delta": 0.0},
  "rates": {"kappa": 0.01, "Gamma": 0.001},
  "flux": {"start": 0.0, "stop": 3.141592653589793, "steps": 64},
  "probe": {"placement": "center", "detuning": 1.0},
  "out_dir": "out"
})"},
};

}  // namespace

ExperimentConfig preset(const std::string& name) {
    auto it = kPresets.find(name);
    if (it == kPresets.end()) throw ConfigError({"unknown preset '" + name + "'"});
    return parse_config(it->second);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, text] : kPresets) out.push_back(name);
    return out;
}

std::string config_json(const ExperimentConfig& c) {
    json doc;
    for (const auto& [name, scheme] : kSchemes)
        if (scheme == c.scheme) doc["scheme"] = name;
    doc["rows"] = c.rows;
    doc["cols"] = c.cols;
    doc["couplings"] = {{"J", c.J}, {"J_vertical", c.J_vertical}, {"g", c.g},
                        {"g0beta", c.g0beta}, {"K", c.K}};
    doc["frequencies"] = {{"Omega", c.Omega}, {"Omega0", c.Omega0}, {"delta", c.delta},
                          {"staircase_step", c.staircase_step}};
    doc["rates"] = {{"kappa", c.kappa}, {"Gamma", c.Gamma}};
    json flux = {{"value", c.flux.value}};
    if (c.flux.sweep)
        flux = {{"start", c.flux.sweep->start}, {"stop", c.flux.sweep->stop},
                {"steps", c.flux.sweep->steps}};
    if (!c.flux.phase_file.empty()) flux["phase_file"] = c.flux.phase_file;
    doc["flux"] = flux;
    doc["probe"] = {{"site", c.probe.site}, {"placement", c.probe.placement},
                    {"detuning", c.probe.detuning}};
    doc["omega_grid"] = {{"steps", c.omega_grid.steps}};
    if (c.omega_grid.min) doc["omega_grid"]["min"] = *c.omega_grid.min;
    if (c.omega_grid.max) doc["omega_grid"]["max"] = *c.omega_grid.max;
    doc["truncation_M"] = c.truncation_M;
    doc["threads"] = c.threads;
    doc["out_dir"] = c.out_dir;
    return doc.dump(2);
}

}  // namespace omflux
