#include "inls/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "inls/errors.hpp"
#include "inls/ground_state.hpp"
#include "inls/spectral.hpp"

namespace inls {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double get_double(const IniMap& ini, const std::string& key, double fallback) {
    auto it = ini.find(key);
    if (it == ini.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + it->second + "'");
    }
}

int get_int(const IniMap& ini, const std::string& key, int fallback) {
    const double v = get_double(ini, key, fallback);
    const int i = static_cast<int>(std::llround(v));
    if (i != v) throw ConfigError(key + " must be an integer");
    return i;
}

bool get_bool(const IniMap& ini, const std::string& key, bool fallback) {
    auto it = ini.find(key);
    if (it == ini.end()) return fallback;
    const std::string v = it->second;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("bad boolean value for " + key + ": '" + v + "'");
}

std::vector<double> get_list(const IniMap& ini, const std::string& key,
                             std::vector<double> fallback) {
    auto it = ini.find(key);
    if (it == ini.end()) return fallback;
    std::vector<double> out;
    std::istringstream ss(it->second);
    double v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) throw ConfigError("bad list value for " + key + ": '" + it->second + "'");
    return out;
}

}  // namespace

IniMap parse_ini_text(const std::string& text) {
    IniMap out;
    std::istringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        out[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
    }
    return out;
}

IniMap parse_ini_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ini_text(ss.str());
}

RunConfig config_from_ini(const IniMap& ini) {
    RunConfig cfg;

    cfg.model.dim = get_int(ini, "model.dim", cfg.model.dim);
    cfg.model.p = get_double(ini, "model.p", cfg.model.p);
    cfg.model.b = get_double(ini, "model.b", cfg.model.b);
    cfg.model.paper_regime = get_bool(ini, "model.paper_regime", cfg.model.paper_regime);
    validate_params(cfg.model);

    cfg.grid = make_grid(cfg.model.dim, get_int(ini, "grid.points", 64),
                         get_double(ini, "grid.half_width", 12.0),
                         get_bool(ini, "grid.offset", true));

    cfg.evolve.dt = get_double(ini, "time.dt", cfg.evolve.dt);
    cfg.evolve.T = get_double(ini, "time.T", cfg.evolve.T);
    cfg.evolve.log_every = get_int(ini, "time.log_every", cfg.evolve.log_every);
    cfg.evolve.blowup_factor = get_double(ini, "time.blowup_factor", cfg.evolve.blowup_factor);
    cfg.evolve.boundary_tol = get_double(ini, "time.boundary_tol", cfg.evolve.boundary_tol);
    if (!(cfg.evolve.dt > 0.0) || !(cfg.evolve.T > 0.0) || cfg.evolve.log_every < 1)
        throw ConfigError("[time] requires dt > 0, T > 0, log_every >= 1");

    const std::string kind = ini.count("initial.kind") ? ini.at("initial.kind") : "gaussian";
    if (kind == "gaussian") cfg.initial.kind = InitialKind::gaussian;
    else if (kind == "offset_gaussian") cfg.initial.kind = InitialKind::offset_gaussian;
    else if (kind == "boosted_gaussian") cfg.initial.kind = InitialKind::boosted_gaussian;
    else if (kind == "scaled_ground_state") cfg.initial.kind = InitialKind::scaled_ground_state;
    else if (kind == "random_band_limited") cfg.initial.kind = InitialKind::random_band_limited;
    else throw ConfigError("unknown initial.kind: '" + kind + "'");
    cfg.initial.amplitude = get_double(ini, "initial.amplitude", cfg.initial.amplitude);
    cfg.initial.width = get_double(ini, "initial.width", cfg.initial.width);
    cfg.initial.center = get_list(ini, "initial.center", {});
    cfg.initial.velocity = get_list(ini, "initial.velocity", {});
    cfg.initial.scale = get_double(ini, "initial.scale", cfg.initial.scale);
    cfg.initial.band_fraction = get_double(ini, "initial.band_fraction",
                                           cfg.initial.band_fraction);
    for (const auto* v : {&cfg.initial.center, &cfg.initial.velocity}) {
        if (!v->empty() && static_cast<int>(v->size()) != cfg.model.dim)
            throw ConfigError("initial vector length must match model.dim");
    }
    if (!(cfg.initial.width > 0.0)) throw ConfigError("initial.width must be positive");

    cfg.evolve.diagnostics.radii = get_list(ini, "diagnostics.radii", {});
    cfg.evolve.diagnostics.virial_radius =
        get_double(ini, "diagnostics.virial_radius", 0.0);
    cfg.horizons = get_list(ini, "diagnostics.horizons", {});
    cfg.coercivity_radius =
        get_double(ini, "diagnostics.coercivity_radius", cfg.coercivity_radius);
    cfg.coercivity_sharpness =
        get_double(ini, "diagnostics.coercivity_sharpness", cfg.coercivity_sharpness);
    cfg.ground_state_tol = get_double(ini, "model.ground_state_tol", cfg.ground_state_tol);

    // guarantee a Morawetz column at every evacuation radius
    for (double T : cfg.horizons) {
        if (!(T > 0.0)) throw ConfigError("diagnostics.horizons must be positive");
        const double R = std::pow(T, 1.0 / (1.0 + cfg.model.b));
        bool present = false;
        for (double r : cfg.evolve.diagnostics.radii) {
            if (std::abs(r - R) <= 1e-9 * std::max(1.0, R)) present = true;
        }
        if (!present) cfg.evolve.diagnostics.radii.push_back(R);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return config_from_ini(parse_ini_file(path));
}

ComplexField build_initial_data(const RunConfig& cfg, std::uint64_t seed) {
    const GridSpec& g = cfg.grid;
    std::vector<double> center(g.dim, 0.0), velocity(g.dim, 0.0);
    for (std::size_t d = 0; d < cfg.initial.center.size(); ++d)
        center[d] = cfg.initial.center[d];
    for (std::size_t d = 0; d < cfg.initial.velocity.size(); ++d)
        velocity[d] = cfg.initial.velocity[d];

    switch (cfg.initial.kind) {
        case InitialKind::gaussian:
        case InitialKind::offset_gaussian:
        case InitialKind::boosted_gaussian: {
            ComplexField u(g);
            std::vector<std::vector<double>> coords(g.dim);
            for (int d = 0; d < g.dim; ++d) coords[d] = coordinate_field(g, d);
            const double w2 = cfg.initial.width * cfg.initial.width;
            for (std::int64_t i = 0; i < g.size(); ++i) {
                double r2 = 0.0, phase = 0.0;
                for (int d = 0; d < g.dim; ++d) {
                    const double dx = coords[d][i] - center[d];
                    r2 += dx * dx;
                    phase += velocity[d] * coords[d][i];
                }
                u.values[i] = cfg.initial.amplitude * std::exp(-r2 / (2.0 * w2)) *
                              std::polar(1.0, phase);
            }
            return u;
        }
        case InitialKind::scaled_ground_state: {
            const auto profile = solve_ground_state(cfg.model, cfg.ground_state_tol);
            return sample_on_grid(profile, g, cfg.initial.scale);
        }
        case InitialKind::random_band_limited: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> gauss(0.0, 1.0);
            const double kmax = 3.14159265358979323846 / g.half_width * (g.points / 2);
            const double kcut = cfg.initial.band_fraction * kmax;
            ComplexField uhat(g);
            for (std::int64_t i = 0; i < g.size(); ++i) {
                const auto idx = g.unravel(i);
                double k2 = 0.0;
                for (int d = 0; d < g.dim; ++d) {
                    const double k = g.wavenumber(idx[d]);
                    k2 += k * k;
                }
                // draw unconditionally so the field is seed-stable across cuts
                const Complex z(gauss(rng), gauss(rng));
                if (k2 <= kcut * kcut) uhat.values[i] = z;
            }
            ComplexField u = fft_inverse(uhat);
            const double m = mass(u);
            if (m > 0.0) {
                const double s = cfg.initial.amplitude / std::sqrt(m);
                for (auto& v : u.values) v *= s;
            }
            return u;
        }
    }
    throw ConfigError("unhandled initial data kind");
}

std::string resolve_preset(const std::string& name, const std::string& preset_dir) {
    namespace fs = std::filesystem;
    if (fs::exists(name)) return name;
    const fs::path candidate = fs::path(preset_dir) / (name + ".ini");
    if (fs::exists(candidate)) return candidate.string();
    throw ConfigError("preset not found: " + name + " (looked in " + preset_dir + ")");
}

}  // namespace inls
