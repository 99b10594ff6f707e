#include "silsbm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "silsbm/errors.hpp"

namespace silsbm {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + value + "'");
    }
}

long parse_integer(const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected an integer, got '" + value + "'");
    }
}

struct Preset {
    const char* name;
    const char* settings;  // same key=value schema, applied before user keys
};

// Reference configurations (full scale) and halved desk-scale variants.
constexpr Preset kPresets[] = {
    {"sbm-fig1", "kind=sbm\nmodes=50\nnph=6\nomega_c=5\ndelta=1\nh0=0\nalpha=0.1\nt_end=30"},
    {"sbm-fig1-desk", "kind=sbm\nmodes=25\nnph=3\nomega_c=5\ndelta=1\nh0=0\nalpha=0.1\nt_end=30"},
    {"sweep-fig5", "kind=sweep\nmodes=80\nnph=3\nomega_c=5\nh=1\nh0=0\naxis=z\ntf=8.42"},
    {"sweep-fig5-desk", "kind=sweep\nmodes=40\nnph=2\nomega_c=5\nh=1\nh0=0\naxis=z\ntf=8.42"},
    {"sweep-fig6", "kind=sweep\nmodes=70\nnph=5\nomega_c=5\nh=1\nh0=0\naxis=z\ntf=8.42"},
    {"sweep-fig6-desk", "kind=sweep\nmodes=35\nnph=3\nomega_c=5\nh=1\nh0=0\naxis=z\ntf=8.42"},
};

const char* find_preset(const std::string& name) {
    for (const Preset& p : kPresets)
        if (name == p.name) return p.settings;
    return nullptr;
}

// key -> (value, where) with "last wins" semantics
using KeyMap = std::map<std::string, std::pair<std::string, std::string>>;

void collect_keys(std::string_view text, const std::string& source, KeyMap& out) {
    std::istringstream stream{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value', got '" + body + "'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(where + ": empty key or value in '" + body + "'");
        out[key] = {value, where};
    }
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "preset", "kind",  "modes",     "nph",       "alpha",          "s",
        "omega_c", "delta", "h0",       "h",         "tf",             "t_end",
        "axis",    "dt",    "krylov_dim", "n_samples", "mode_snapshots", "max_dim",
    };
    return keys;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const Preset& p : kPresets) names.emplace_back(p.name);
    return names;
}

ParsedConfig parse_config_text(std::string_view text, std::string_view source_view) {
    const std::string source{source_view};
    KeyMap user;
    collect_keys(text, source, user);

    for (const auto& [key, entry] : user)
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end())
            throw ConfigError(entry.second + ": unknown key '" + key + "'");

    ParsedConfig parsed;
    KeyMap merged;
    if (auto it = user.find("preset"); it != user.end()) {
        const std::string& name = it->second.first;
        const char* settings = find_preset(name);
        if (!settings) {
            std::string all;
            for (const auto& n : preset_names()) all += (all.empty() ? "" : ", ") + n;
            throw ConfigError(it->second.second + ": unknown preset '" + name +
                              "' (available: " + all + ")");
        }
        parsed.preset = name;
        collect_keys(settings, "preset " + name, merged);
    }
    for (const auto& [key, entry] : user)
        if (key != "preset") merged[key] = entry;

    // required keys, after preset resolution
    std::vector<std::string> missing;
    for (const char* required : {"kind", "modes", "nph"})
        if (!merged.contains(required)) missing.emplace_back(required);
    if (merged.contains("kind")) {
        const std::string& kind = merged.at("kind").first;
        if (kind == "sbm" && !merged.contains("t_end")) missing.emplace_back("t_end");
        if (kind == "sweep" && !merged.contains("tf")) missing.emplace_back("tf");
    } else {
        missing.emplace_back("t_end (sbm runs)");
        missing.emplace_back("tf (sweep runs)");
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError(source + ": missing required keys: " + list);
    }

    ExperimentConfig& cfg = parsed.experiment;
    for (const auto& [key, entry] : merged) {
        const auto& [value, where] = entry;
        if (key == "kind") {
            if (value == "sbm") cfg.kind = ScheduleKind::Static;
            else if (value == "sweep") cfg.kind = ScheduleKind::RotatingSweep;
            else throw ConfigError(where + ": kind must be 'sbm' or 'sweep', got '" + value + "'");
        } else if (key == "modes") {
            cfg.modes = static_cast<int>(parse_integer(value, where));
            cfg.bath.modes = cfg.modes;
        } else if (key == "nph") {
            cfg.nph = static_cast<int>(parse_integer(value, where));
        } else if (key == "alpha") {
            cfg.bath.alpha = parse_number(value, where);
        } else if (key == "s") {
            cfg.bath.s = parse_number(value, where);
        } else if (key == "omega_c") {
            cfg.bath.omega_c = parse_number(value, where);
        } else if (key == "delta") {
            cfg.delta = parse_number(value, where);
        } else if (key == "h0") {
            cfg.h0 = parse_number(value, where);
        } else if (key == "h") {
            cfg.h = parse_number(value, where);
        } else if (key == "tf") {
            cfg.tf = parse_number(value, where);
        } else if (key == "t_end") {
            cfg.t_end = parse_number(value, where);
        } else if (key == "axis") {
            if (value == "x") cfg.axis = CouplingAxis::X;
            else if (value == "z") cfg.axis = CouplingAxis::Z;
            else throw ConfigError(where + ": axis must be 'x' or 'z', got '" + value + "'");
        } else if (key == "dt") {
            if (value != "auto") cfg.sil.dt = parse_number(value, where);
        } else if (key == "krylov_dim") {
            cfg.sil.krylov_dim = static_cast<int>(parse_integer(value, where));
        } else if (key == "n_samples") {
            cfg.sampling.n_samples = static_cast<int>(parse_integer(value, where));
        } else if (key == "mode_snapshots") {
            std::istringstream items(value);
            std::string item;
            cfg.sampling.mode_snapshot_times.clear();
            while (std::getline(items, item, ','))
                cfg.sampling.mode_snapshot_times.push_back(parse_number(trim(item), where));
        } else if (key == "max_dim") {
            const long v = parse_integer(value, where);
            if (v < 1) throw ConfigError(where + ": max_dim must be positive");
            cfg.max_dimension = static_cast<std::size_t>(v);
        }
    }

    cfg.validate();  // range checks, capacity ceiling, dt resolution check

    // echo the fully resolved configuration
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    parsed.resolved["kind"] = cfg.kind == ScheduleKind::Static ? "sbm" : "sweep";
    parsed.resolved["modes"] = std::to_string(cfg.modes);
    parsed.resolved["nph"] = std::to_string(cfg.nph);
    parsed.resolved["alpha"] = fmt(cfg.bath.alpha);
    parsed.resolved["s"] = fmt(cfg.bath.s);
    parsed.resolved["omega_c"] = fmt(cfg.bath.omega_c);
    parsed.resolved["delta"] = fmt(cfg.delta);
    parsed.resolved["h0"] = fmt(cfg.h0);
    parsed.resolved["h"] = fmt(cfg.h);
    if (cfg.kind == ScheduleKind::Static) parsed.resolved["t_end"] = fmt(cfg.t_end);
    else parsed.resolved["tf"] = fmt(cfg.tf);
    parsed.resolved["axis"] = cfg.axis == CouplingAxis::X ? "x" : "z";
    parsed.resolved["dt"] = fmt(cfg.resolved_sil().dt);
    parsed.resolved["krylov_dim"] = std::to_string(cfg.sil.krylov_dim);
    parsed.resolved["n_samples"] = std::to_string(cfg.sampling.n_samples);
    if (!cfg.sampling.mode_snapshot_times.empty()) {
        std::string list;
        for (double t : cfg.sampling.mode_snapshot_times)
            list += (list.empty() ? "" : ",") + fmt(t);
        parsed.resolved["mode_snapshots"] = list;
    }
    parsed.resolved["max_dim"] = std::to_string(cfg.max_dimension);
    return parsed;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

}  // namespace silsbm
