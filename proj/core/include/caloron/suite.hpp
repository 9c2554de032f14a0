#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace caloron {

/// Configuration of one verification run. Every scenario derives all of its
/// sample data from (seed, scenario label), so a fixed config reproduces the
/// same report bytes on every platform.
struct ScenarioConfig {
    /// Scenario name, or "all".
    std::string scenario = "all";
    /// Circle samples of the primary torus, one entry per axis (1 to 4 axes,
    /// powers of two). Higher-dimensional cross-check meshes are fixed
    /// internally so their spectral-exactness budgets cannot be broken from
    /// the command line.
    std::vector<int> grid = {32, 32};
    /// Loop sample count N.
    int theta_samples = 64;
    /// Matrix rank n.
    int rank_n = 2;
    std::uint64_t seed = 20260815;
    /// Multiplies every check tolerance.
    double tol_scale = 1.0;
    /// Skip checks whose principal form degree exceeds this; -1 disables.
    int truncate = -1;
    /// Record wall-clock times. Off by default because timing breaks
    /// byte-identical reports.
    bool timings = false;
    /// Report serialization requested by the caller ("json" or "csv").
    std::string output = "json";
};

struct CheckRecord {
    std::string check_id;
    /// Human-readable statement of the identity being certified.
    std::string summary;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
};

/// Names of the registered scenarios, in execution order.
std::vector<std::string> scenario_names();

/// Throws ValidationError when the config leaves the supported desk-scale
/// envelope (grid axes 1..4, powers of two in [16, 1024]; N in [16, 1024]
/// power of two; rank 1..8).
void validate_config(const ScenarioConfig& cfg);

/// Runs the selected scenario (or all of them, possibly on `jobs` threads)
/// and returns the records sorted by check id. A scenario that throws
/// contributes a single failing record carrying the error text.
std::vector<CheckRecord> run_scenarios(const ScenarioConfig& cfg, int jobs = 1);

bool all_passed(const std::vector<CheckRecord>& records);

std::string report_json(const ScenarioConfig& cfg, const std::vector<CheckRecord>& records);
std::string report_csv(const std::vector<CheckRecord>& records);

} // namespace caloron
