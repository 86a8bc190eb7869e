#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "kerr/dynamics.hpp"
#include "kerr/fvr.hpp"
#include "kerr/phase_space.hpp"
#include "kerr/render.hpp"
#include "kerr/states.hpp"

namespace kerr {

/// Invalid configuration, reported with the offending field path.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& field_path, const std::string& message)
        : std::runtime_error("config error at " + field_path + ": " + message) {}
};

/// A time value together with the spelling it was configured with
/// ("pi/8"-style strings are parsed symbolically to avoid decimal drift).
struct TimeValue {
    double value = 0.0;
    std::string label;
};

/// Parses "pi", "pi/8", "3pi/20", "2*pi/5" or a plain decimal.
double parse_time_expr(const std::string& text);

struct RunConfig {
    StateSpec state = StateSpec::coherent({5.0, 0.0});
    Dynamics dynamics = Dynamics::make_kerr();
    std::vector<TimeValue> times;
    Grid2D grid{-8.0, 8.0, -8.0, 8.0, 128, 128};
    Grid2D chord_grid{-2.0, 2.0, -2.0, 2.0, 201, 201};  // caustic maps, xi' plane
    PhasePoint caustic_center{5.0, 2.0};
    QuadratureSpec quadrature{.chord_halfwidth = 0.0};  // <= 0: derive from grid
    int truncation = 64;
    std::vector<std::string> outputs;
    std::filesystem::path out_dir = "out";
    int workers = 0;
    bool allow_unconverged = false;
    RenderOptions render;

    /// Quadrature spec with the halfwidth resolved against the final grid.
    QuadratureSpec resolved_quadrature() const;
};

/// Loads and schema-validates a JSON config file. Throws ConfigError with the
/// offending field path on any violation.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace kerr
