#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "inls/dynamics.hpp"
#include "inls/grid.hpp"
#include "inls/model.hpp"

namespace inls {

// Flat INI-style configuration: [section] headers, key = value lines,
// '#' or ';' comments. Keys are stored as "section.key".
using IniMap = std::map<std::string, std::string>;

IniMap parse_ini_text(const std::string& text);
IniMap parse_ini_file(const std::string& path);

enum class InitialKind {
    gaussian,
    offset_gaussian,
    boosted_gaussian,
    scaled_ground_state,
    random_band_limited,
};

struct InitialSpec {
    InitialKind kind = InitialKind::gaussian;
    double amplitude = 1.0;
    double width = 1.0;
    std::vector<double> center;    // defaults to the origin
    std::vector<double> velocity;  // plane-wave boost, defaults to zero
    double scale = 1.0;            // multiplier c for c*Q data
    double band_fraction = 0.25;   // of k_max, for random data
};

struct RunConfig {
    ModelParams model;
    GridSpec grid;
    EvolveOptions evolve;
    InitialSpec initial;
    std::vector<double> horizons;      // evacuation horizons T_n
    double coercivity_radius = 8.0;    // R-bar for the coercivity monitor
    double coercivity_sharpness = 2.0; // ramp parameter A
    double ground_state_tol = 1e-8;
};

// Parse and validate a full run configuration. Evacuation radii
// R_n = T_n^{1/(1+b)} are appended to the diagnostics radius ladder so the
// evacuation scan always finds its Morawetz columns.
RunConfig config_from_ini(const IniMap& ini);
RunConfig load_config(const std::string& path);

// Deterministic initial data for a config; `seed` only matters for the
// random kind. Ground-state data solves the shooting problem on demand.
ComplexField build_initial_data(const RunConfig& cfg, std::uint64_t seed);

// Resolve --preset NAME against a preset directory (path wins if NAME
// already names a readable file).
std::string resolve_preset(const std::string& name, const std::string& preset_dir);

}  // namespace inls
