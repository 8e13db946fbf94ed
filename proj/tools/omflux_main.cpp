// omflux — command-line driver for the optomechanical flux-lattice library.
//
// Usage: omflux <command> [--config FILE | --preset NAME] [--out DIR]
//                         [--threads N] [--flux PHI] [--set key=value]...
// Exit codes: 0 success, 1 validation failure, 2 configuration error,
//             3 solver failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "omflux/config.hpp"
#include "omflux/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw omflux::ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Applies "section.key=value" overrides on top of the canonical config dump.
std::string apply_overrides(const std::string& base,
                            const std::vector<std::string>& overrides) {
    nlohmann::json j = nlohmann::json::parse(base);
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw omflux::ConfigError({"--set expects key=value, got '" + item + "'"});
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        nlohmann::json* node = &j;
        std::size_t pos = 0;
        while (true) {
            const auto dot = key.find('.', pos);
            const std::string part = key.substr(pos, dot - pos);
            if (dot == std::string::npos) {
                nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
                (*node)[part] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
                break;
            }
            node = &(*node)[part];
            pos = dot + 1;
        }
    }
    return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optomechanical flux lattices: spectra, transport, interferometry"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    int threads = -1;
    std::vector<std::string> overrides;
    bool have_flux = false;
    double flux_value = 0.0;

    std::vector<CLI::App*> subs;
    for (const char* name : {"butterfly", "ldos", "transport", "abscan", "ladder", "validate"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--preset", preset_name, "built-in parameter preset");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_option("--set", overrides, "override a config key, e.g. rates.kappa=0.02");
        sub->add_option_function<double>(
            "--flux", [&](double v) { have_flux = true; flux_value = v; },
            "flux per plaquette, overrides flux.value");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string command_name = app.get_subcommands().front()->get_name();
        const omflux::Command command = omflux::parse_command(command_name);

        omflux::ExperimentConfig config;
        if (!preset_name.empty() && !config_path.empty())
            throw omflux::ConfigError({"--config and --preset are mutually exclusive"});
        if (!preset_name.empty()) config = omflux::preset(preset_name);
        else if (!config_path.empty()) config = omflux::parse_config(read_file(config_path));
        else if (command != omflux::Command::Validate)
            throw omflux::ConfigError({"either --config or --preset is required"});
        else config = omflux::preset("fig2");

        if (!overrides.empty())
            config = omflux::parse_config(
                apply_overrides(omflux::config_json(config), overrides));
        if (have_flux) {
            config.flux.value = flux_value;
            config.flux.sweep.reset();
        }
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (threads >= 0) config.threads = threads;

        const omflux::RunManifest manifest = omflux::run(config, command);
        std::printf("wrote %zu outputs to %s (config %s)\n", manifest.checksums.size(),
                    config.out_dir.c_str(), manifest.config_hash.c_str());
        return 0;
    } catch (const omflux::ValidationError& e) {
        std::fprintf(stderr, "validation failure: %s\n", e.what());
        return 1;
    } catch (const omflux::ConfigError& e) {
        for (const std::string& msg : e.messages())
            std::fprintf(stderr, "config error: %s\n", msg.c_str());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 3;
    }
}
