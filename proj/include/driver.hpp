#ifndef EVCOVER_DRIVER_HPP
#define EVCOVER_DRIVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "evmodule.hpp"

/// Scenario runner behind the CLI: builds the headline example, runs the
/// property suites and oracle cross-checks, and emits machine-readable
/// reports. Reports are deterministic given (scenario, seed): trials are
/// seeded per index, and the JSON form carries no timing data.
namespace driver {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct Scenario {
    std::string name;
    uint64_t seed = 42;
    int trials = 0;  // 0 = scenario default
    int depth = 3;
};

struct CheckRecord {
    std::string name;
    std::string status;  // pass | fail | skipped
    std::string mode;    // proven | exhaustive | sampled
    std::string details;
    double duration_ms = 0.0;
};

struct Report {
    Scenario scenario;
    std::vector<CheckRecord> records;
    int passed = 0, failed = 0, skipped = 0;
    bool all_pass = false;
};

std::vector<std::string> scenario_names();
bool known_scenario(const std::string& name);

/// Runs a registered scenario; throws std::invalid_argument for unknown
/// names, listing the registry.
Report run_scenario(const Scenario& s);

/// Bit-stable JSON: sorted keys, integers only, durations omitted.
std::string to_json(const Report& r);
std::string to_text(const Report& r);

/// format is "json" or "text"; an empty path writes to stdout.
void emit(const Report& r, const std::string& format, const std::string& path);

/// Deterministic per-trial seed derivation.
uint64_t mix_seed(uint64_t seed, uint64_t index);

/// The radical-correctness battery: named small algebras and their pairwise
/// same-characteristic products.
std::vector<std::pair<std::string, alg::Algebra>> algebra_battery();

}  // namespace driver

#endif
