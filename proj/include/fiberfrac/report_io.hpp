#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fiberfrac/model.hpp"
#include "fiberfrac/solver.hpp"

namespace fiberfrac {

inline constexpr const char* kReportCsvTag = "# fiberfrac-report-csv v1";
inline constexpr const char* kReportCsvHeader =
    "step,u_mm,reaction_N,stress_MPa,iters,n_ruptured,min_beta";
inline constexpr const char* kStateCsvTag = "# fiberfrac-state-csv v1";
inline constexpr const char* kStateCsvHeader = "element_id,xi_mm,alpha_mm,ruptured";

/// Reaction curve as versioned CSV; doubles use 17 significant digits.
std::string report_to_csv(const SolveReport& report);

/// Parses text produced by report_to_csv. Columns not in the CSV keep their defaults.
/// @throws FormatError
std::vector<StepRecord> report_from_csv(std::string_view text);

/// Run summary: config echo, cumulative iterations, termination and final totals.
nlohmann::json report_summary(const SolveReport& report);

/// Per-element hinge states as versioned CSV.
std::string states_to_csv(const NetworkModel& model, const std::vector<HingeState>& states);

struct StateRow {
    int element_id = 0;
    double xi = 0.0;
    double alpha = 0.0;
    bool ruptured = false;
};

/// @throws FormatError
std::vector<StateRow> states_from_csv(std::string_view text);

/// Static SVG of reaction versus applied displacement.
std::string reaction_curve_svg(const SolveReport& report, const std::string& title);

/// Static SVG of the network in the x-y plane, elements colored by xi / alpha_max.
std::string network_svg(const NetworkModel& model, const std::vector<HingeState>& states,
                        const std::string& title);

/// Writes @p text to @p path. @throws FormatError when the file cannot be opened.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace fiberfrac
