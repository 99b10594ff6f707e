#include "silsbm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "silsbm/errors.hpp"

namespace silsbm {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    return out;
}

void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw ConfigError("malformed file '" + path + "': " + what);
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.16e", value);
    return buffer;
}

void write_trajectory(const Trajectory& trajectory, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,sx,sy,sz,E_bath,E_total,norm\n";
    for (const TrajectorySample& s : trajectory.samples) {
        out << format_double(s.t) << ',' << format_double(s.bloch[0]) << ','
            << format_double(s.bloch[1]) << ',' << format_double(s.bloch[2]) << ','
            << format_double(s.bath_energy) << ',' << format_double(s.total_energy) << ','
            << format_double(s.norm) << '\n';
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

void write_mode_snapshots(const Trajectory& trajectory, const BathModes& modes,
                          const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,k,omega_k,dn_k\n";
    for (const ModeSnapshot& snap : trajectory.mode_snapshots) {
        for (std::size_t k = 0; k < snap.occupations.size(); ++k) {
            out << format_double(snap.t) << ',' << k << ','
                << format_double(modes.omegas[k]) << ','
                << format_double(snap.occupations[k]) << '\n';
        }
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

void write_scan(const ScanTable& table, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t_f,alpha,eres,fidelity,status\n";
    for (const ScanCell& cell : table.cells) {
        out << format_double(cell.tf) << ',' << format_double(cell.alpha) << ','
            << format_double(cell.excess) << ',' << format_double(cell.fidelity) << ','
            << (cell.ok ? "ok" : "failed") << '\n';
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

std::size_t TrajectoryFile::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw ConfigError("column '" + name + "' not present in trajectory file");
}

TrajectoryFile read_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    TrajectoryFile file;
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), path, "missing header row");
    {
        std::istringstream header(line);
        std::string name;
        while (std::getline(header, name, ',')) file.columns.push_back(name);
    }
    require(!file.columns.empty(), path, "empty header row");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string item;
        std::vector<double> values;
        while (std::getline(row, item, ',')) {
            try {
                values.push_back(std::stod(item));
            } catch (const std::exception&) {
                require(false, path, "non-numeric field '" + item + "'");
            }
        }
        require(values.size() == file.columns.size(), path, "row width mismatch");
        file.rows.push_back(std::move(values));
    }
    return file;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for digest");
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 0x100000001b3ull;
        }
    }
    return hash;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    nlohmann::ordered_json j;
    j["version"] = manifest.version;
    j["command"] = manifest.command;
    j["status"] = manifest.status;
    j["config"] = manifest.config;
    j["derived"]["dimension"] = manifest.dimension;
    j["derived"]["delta_r"] = manifest.delta_r;
    j["derived"]["delta_eff"] = manifest.delta_eff;
    j["derived"]["gamma_toulouse"] = manifest.gamma_toulouse;
    j["wall_seconds"] = manifest.wall_seconds;
    auto& outputs = j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [file, digest] : manifest.outputs)
        outputs.push_back({{"path", file}, {"fnv1a64", digest}});
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace silsbm
