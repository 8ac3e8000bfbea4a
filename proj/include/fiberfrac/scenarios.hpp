#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fiberfrac/model.hpp"
#include "fiberfrac/netgen.hpp"
#include "fiberfrac/solver.hpp"

namespace fiberfrac {

enum class ScenarioKind { cantilever, tensile, notched, network_file };

std::string_view scenario_name(ScenarioKind kind);
/// @throws InvalidConfig
ScenarioKind parse_scenario(std::string_view name);

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::cantilever;
    SchemeConfig scheme;
    int n_steps = 500;
    std::uint64_t seed = 42;
    double density = 1000.0;  ///< rho_s [kg/m^3]
    double G_f = 0.1;         ///< [N mm]
    double delta_0 = 0.0;     ///< 0 selects the scenario default
    int cantilever_elements = 1;
    double width = 18.0;   ///< network domain [mm]
    double height = 6.0;   ///< network domain [mm]
    double notch_angle = 20.0;
    double notch_depth = 0.0;  ///< 0 means height / 2
    bool prune_dead_ends = false;
    std::filesystem::path network_file;
    std::filesystem::path output_dir = "out";
    bool plot = false;
    bool overwrite = false;
    bool bisect = false;
    int max_iters = 500;
    std::vector<int> checkpoints;

    /// @throws InvalidConfig
    void validate() const;
};

/// Straight bar along x of length 0.1 mm, E = 1, A = 1, N_bar = 1, clamped at
/// x = 0 and pulled at x = 0.1. The leftmost element has N_bar = 0.99 and
/// fracture energy @p G_f; all elements share its softening modulus.
NetworkModel cantilever_model(int n_elements, double G_f);

/// Generator settings for the tensile and notched scenarios.
NetworkSpec network_spec(const ScenarioConfig& config);

/// Model for the configured scenario.
/// @throws GenerationFailed, FormatError, InvalidConfig
NetworkModel build_model(const ScenarioConfig& config);

/// Total grip displacement: delta_0 when set, else the scenario default
/// (cantilever 1.2 alpha_max of the weak element, tensile 9 mm, notched 1.08 mm).
double default_delta(const ScenarioConfig& config, const NetworkModel& model);

SolveConfig solve_config(const ScenarioConfig& config, const NetworkModel& model);

struct ScenarioResult {
    int exit_code = 0;  ///< 0 success, 1 solver failure or module error, 2 usage error
    std::optional<SolveReport> report;
    std::vector<std::filesystem::path> files;
    std::string error_json;  ///< empty on success
};

/**
 * @brief Builds and solves one scenario and writes its outputs.
 *
 * Files under output_dir: report.csv, summary.json, states_final.csv,
 * states_step_<n>.csv per checkpoint, network.json for network scenarios,
 * and reaction.svg / network.svg with the plot flag. Module errors produce
 * error.json instead. Nothing is written on a usage error.
 */
ScenarioResult run_scenario(const ScenarioConfig& config);

struct ComparisonCell {
    SchemeConfig scheme;
    int n_steps = 0;
    bool completed = false;
    long cumulative_iterations = 0;
    double wall_seconds = 0.0;
    std::string failure_reason;
};

struct Comparison {
    std::vector<SchemeConfig> schemes;
    std::vector<int> steps;
    std::vector<ComparisonCell> cells;  ///< row-major: steps outer, schemes inner

    const ComparisonCell& cell(std::size_t step_index, std::size_t scheme_index) const {
        return cells[step_index * schemes.size() + scheme_index];
    }
};

/// One row per step count and one column per scheme: cumulative iterations or 'f'.
std::string comparison_table(const Comparison& comparison);
/// Same layout with wall-clock seconds.
std::string comparison_times(const Comparison& comparison);

/**
 * @brief Runs the base scenario for every (n_steps, scheme) pair on one model.
 *
 * Writes comparison.tsv and comparison_times.tsv to the output directory and
 * each cell's report.csv to a cell subdirectory when @p write_files is set.
 * @throws InvalidConfig on an empty scheme or step list.
 */
Comparison compare_schemes(const ScenarioConfig& base, const std::vector<SchemeConfig>& schemes,
                           const std::vector<int>& steps, bool write_files = true);

}  // namespace fiberfrac
