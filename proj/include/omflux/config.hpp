// config.hpp — Experiment configuration: JSON parsing with exhaustive
// validation (every violation reported, unknown keys rejected) and the
// bundled parameter presets.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omflux/lattice.hpp"

namespace omflux {

struct SweepSpec {
    double start{};
    double stop{};
    int steps = 1;
};

struct FluxSpec {
    double value = 0.0;
    std::optional<SweepSpec> sweep;
    std::string phase_file;  // explicit per-link phases, CSV i,j,phase
};

struct ProbeSpec {
    int site = -1;                  // explicit site id; -1 = placement below
    std::string placement = "center";  // center | edge
    double detuning = 0.0;
    std::optional<SweepSpec> detuning_sweep;
};

struct OmegaGridSpec {
    std::optional<double> min;
    std::optional<double> max;
    int steps = 600;
};

struct ExperimentConfig {
    Scheme scheme = Scheme::IdealHofstadter;
    int rows = 0;
    int cols = 0;
    double J = 0.0;
    double J_vertical = 0.0;
    double g = 0.0;
    double g0beta = 0.0;
    double K = 0.0;
    double Omega = 1.0;
    double Omega0 = 1.0;
    double delta = 0.0;
    double staircase_step = 0.5;
    double kappa = 0.0;
    double Gamma = 0.0;
    FluxSpec flux;
    ProbeSpec probe;
    OmegaGridSpec omega_grid;
    int truncation_M = 8;
    int threads = 0;  // 0 = available parallelism
    std::string out_dir = "out";

    std::vector<double> flux_values() const;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig preset(const std::string& name);  // fig2, fig2a, fig3a, fig3b, fig3d, fig4b
std::vector<std::string> preset_names();
std::string config_json(const ExperimentConfig& config);  // canonical round-trip dump

}  // namespace omflux
