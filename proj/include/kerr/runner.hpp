#pragma once

#include "kerr/config.hpp"

namespace kerr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnconverged = 3;

/// Executes a config: computes the requested propagators and writes one
/// artifact file per requested output per time, plus a manifest.json listing
/// every artifact with its parameters and convergence diagnostics. Output is
/// deterministic for a given config, independent of the worker count.
/// Returns kExitOk, or kExitUnconverged when any FVR node failed its
/// convergence check and allow_unconverged is off.
int run(const RunConfig& config);

/// Caustic determinant maps only (the `caustics` subcommand).
int run_caustics(const RunConfig& config);

/// Autocorrelation curves only (the `autocorr` subcommand).
int run_autocorr(const RunConfig& config);

}  // namespace kerr
