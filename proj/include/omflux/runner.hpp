// runner.hpp — Experiment orchestration: builds the configured lattice, fans
// the sweep out over a worker pool, and writes bit-stable outputs plus a run
// manifest with per-file checksums.

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "omflux/config.hpp"

namespace omflux {

enum class Command { Butterfly, Ldos, Transport, ABScanCmd, Ladder, Validate };

Command parse_command(const std::string& name);  // throws ConfigError on unknown

struct RunManifest {
    std::string config_hash;   // thread count and output dir excluded
    std::string version;
    std::string timestamp;
    std::map<std::string, std::string> checksums;  // file name -> fnv1a hex
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Runs the command, writes outputs and manifest.json into config.out_dir.
// Throws ConfigError on a scheme/command mismatch, SolverError on numerical
// failure. For Validate, a failed check raises ValidationError instead.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunManifest run(const ExperimentConfig& config, Command command);

// Resolves "center" / "edge" / explicit id to a concrete optical site.
int resolve_probe_site(const LatticeGraph& graph, const ProbeSpec& probe);

}  // namespace omflux
