// io.hpp — deterministic delimited-text outputs and JSON run manifests.
// All floating point values are written with 17 significant digits so files
// round-trip exactly.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "silsbm/observables.hpp"
#include "silsbm/protocols.hpp"

namespace silsbm {

std::string format_double(double value);  // %.16e

// trajectory.csv columns: t,sx,sy,sz,E_bath,E_total,norm
void write_trajectory(const Trajectory& trajectory, const std::string& path);

// Long-format per-mode snapshots: t,k,omega_k,dn_k
void write_mode_snapshots(const Trajectory& trajectory, const BathModes& modes,
                          const std::string& path);

// scan.csv columns: t_f,alpha,eres,fidelity,status — rows sorted by (alpha, t_f)
void write_scan(const ScanTable& table, const std::string& path);

struct TrajectoryFile {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;  // throws if absent
};
TrajectoryFile read_trajectory(const std::string& path);

std::uint64_t fnv1a64_file(const std::string& path);

struct RunManifest {
    std::string version;
    std::string command;  // "run" or "scan"
    std::string status;   // "running", "complete", "failed"
    std::map<std::string, std::string> config;  // fully resolved key=value echo
    std::uint64_t dimension = 0;
    double delta_r = 0.0;
    double delta_eff = 0.0;
    double gamma_toulouse = 0.0;  // pi delta^2 / (2 omega_c), static runs
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> outputs;  // path, fnv1a64 hex
};

void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace silsbm
