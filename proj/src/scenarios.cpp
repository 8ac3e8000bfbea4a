#include "fiberfrac/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/hinge.hpp"
#include "fiberfrac/network_io.hpp"
#include "fiberfrac/report_io.hpp"

namespace fiberfrac {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kCantileverLength = 0.1;
constexpr double kCantileverWeakStrength = 0.99;
constexpr double kTensileDelta = 9.0;
constexpr double kNotchedDelta = 1.08;

bool is_network(ScenarioKind k) { return k != ScenarioKind::cantilever; }

json error_document(const std::string& kind, const std::string& message, int element_id = -1) {
    json j{{"status", "error"}, {"kind", kind}, {"message", message}};
    if (element_id >= 0) j["element_id"] = element_id;
    return j;
}

std::vector<fs::path> planned_files(const ScenarioConfig& c) {
    std::vector<fs::path> files{"report.csv", "summary.json", "states_final.csv", "error.json"};
    for (int s : c.checkpoints) files.push_back("states_step_" + std::to_string(s) + ".csv");
    if (is_network(c.scenario)) files.push_back("network.json");
    if (c.plot) {
        files.push_back("reaction.svg");
        files.push_back("network.svg");
    }
    return files;
}

json scenario_echo(const ScenarioConfig& c) {
    json j{{"scenario", std::string(scenario_name(c.scenario))},
           {"n_steps", c.n_steps},
           {"G_f", c.G_f},
           {"max_iters", c.max_iters},
           {"bisect", c.bisect}};
    if (c.scenario == ScenarioKind::cantilever) {
        j["elements"] = c.cantilever_elements;
    } else if (c.scenario == ScenarioKind::network_file) {
        j["network_file"] = c.network_file.string();
    } else {
        j["seed"] = c.seed;
        j["density"] = c.density;
        j["width"] = c.width;
        j["height"] = c.height;
        if (c.scenario == ScenarioKind::notched) {
            j["notch_angle"] = c.notch_angle;
            j["notch_depth"] = c.notch_depth > 0.0 ? c.notch_depth : c.height / 2.0;
        }
    }
    return j;
}

}  // namespace

std::string_view scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::cantilever: return "cantilever";
        case ScenarioKind::tensile: return "tensile";
        case ScenarioKind::notched: return "notched";
        case ScenarioKind::network_file: return "network";
    }
    return "unknown";
}

ScenarioKind parse_scenario(std::string_view name) {
    if (name == "cantilever") return ScenarioKind::cantilever;
    if (name == "tensile") return ScenarioKind::tensile;
    if (name == "notched") return ScenarioKind::notched;
    if (name == "network") return ScenarioKind::network_file;
    throw InvalidConfig("unknown scenario '" + std::string(name) + "'");
}

void ScenarioConfig::validate() const {
    scheme.validate();
    if (n_steps < 1) throw InvalidConfig("steps must be at least 1");
    if (max_iters < 1) throw InvalidConfig("max-iters must be at least 1");
    if (!(G_f > 0.0) || !std::isfinite(G_f)) throw InvalidConfig("gf must be positive");
    if (!(delta_0 >= 0.0) || !std::isfinite(delta_0)) throw InvalidConfig("delta must be non-negative");
    if (scenario == ScenarioKind::cantilever) {
        if (cantilever_elements < 1) throw InvalidConfig("cantilever needs at least one element");
    }
    if (scenario == ScenarioKind::tensile || scenario == ScenarioKind::notched) {
        if (!(density > 0.0)) throw InvalidConfig("density must be positive");
        if (!(width > 0.0) || !(height > 0.0)) throw InvalidConfig("domain must have positive size");
    }
    if (scenario == ScenarioKind::notched) {
        if (!(notch_angle > 0.0 && notch_angle < 180.0)) throw InvalidConfig("notch angle must be in (0, 180)");
        if (!(notch_depth >= 0.0 && notch_depth < height)) throw InvalidConfig("notch depth must be in [0, height)");
    }
    if (scenario == ScenarioKind::network_file) {
        if (network_file.empty()) throw InvalidConfig("network scenario needs a network file");
        if (!fs::exists(network_file)) throw InvalidConfig("network file not found: " + network_file.string());
    }
    for (int s : checkpoints) {
        if (s < 0 || s > n_steps) throw InvalidConfig("checkpoint outside [0, steps]");
    }
}

NetworkModel cantilever_model(int n_elements, double G_f) {
    if (n_elements < 1) throw InvalidConfig("cantilever needs at least one element");
    const ElasticProperties elastic = ElasticProperties::square(1.0, 0.5, 5.0 / 6.0, 1.0);
    const FiberSection weak =
        FiberSection::with_fracture_energy(elastic, kCantileverWeakStrength, G_f);
    const FiberSection regular = weak.with_strength(1.0);

    NetworkModel model;
    model.width = kCantileverLength;
    model.height = 1.0;
    model.thickness = 1.0;
    model.sections = {weak, regular};
    for (int i = 0; i <= n_elements; ++i) {
        model.nodes.emplace_back(kCantileverLength * i / n_elements, 0.0, 0.0);
    }
    for (int e = 0; e < n_elements; ++e) {
        model.elements.push_back({e, {e, e + 1}, e == 0 ? 0 : 1, 0});
    }
    model.bcs.fixed = {0};
    model.bcs.moving = {n_elements};
    return model;
}

NetworkSpec network_spec(const ScenarioConfig& c) {
    NetworkSpec spec;
    spec.width = c.width;
    spec.height = c.height;
    spec.target_density = c.density;
    spec.fiber.section = fiber_table_section(c.G_f);
    spec.seed = c.seed;
    spec.prune_dead_ends = c.prune_dead_ends;
    if (c.scenario == ScenarioKind::notched) {
        NotchSpec notch;
        notch.angle_deg = c.notch_angle;
        notch.depth = c.notch_depth > 0.0 ? c.notch_depth : c.height / 2.0;
        notch.apex_x = c.width / 2.0;
        spec.notch = notch;
    }
    return spec;
}

NetworkModel build_model(const ScenarioConfig& c) {
    switch (c.scenario) {
        case ScenarioKind::cantilever: return cantilever_model(c.cantilever_elements, c.G_f);
        case ScenarioKind::tensile:
        case ScenarioKind::notched: return generate(network_spec(c));
        case ScenarioKind::network_file: return read_network(c.network_file);
    }
    throw InvalidConfig("unknown scenario");
}

double default_delta(const ScenarioConfig& c, const NetworkModel& model) {
    if (c.delta_0 > 0.0) return c.delta_0;
    switch (c.scenario) {
        case ScenarioKind::cantilever: {
            const FiberSection& weak = model.sections.front();
            const double u_peak = weak.N_bar() * model.nodes.back().x() / weak.EA();
            return 1.2 * std::max(alpha_max(weak), u_peak);
        }
        case ScenarioKind::notched: return kNotchedDelta;
        default: return kTensileDelta;
    }
}

SolveConfig solve_config(const ScenarioConfig& c, const NetworkModel& model) {
    SolveConfig sc;
    sc.scheme = c.scheme;
    sc.n_steps = c.n_steps;
    sc.delta_0 = default_delta(c, model);
    sc.max_iters = c.max_iters;
    sc.bisect = c.bisect;
    sc.checkpoints = c.checkpoints;
    return sc;
}

ScenarioResult run_scenario(const ScenarioConfig& c) {
    ScenarioResult result;
    try {
        c.validate();
        if (!c.overwrite) {
            for (const auto& f : planned_files(c)) {
                if (fs::exists(c.output_dir / f)) {
                    throw InvalidConfig("output file " + (c.output_dir / f).string() +
                                        " exists; pass --overwrite to replace it");
                }
            }
        }
    } catch (const InvalidConfig& e) {
        result.exit_code = 2;
        result.error_json = error_document(e.kind(), e.what()).dump();
        return result;
    }

    auto write = [&](const fs::path& name, std::string_view text) {
        const fs::path p = c.output_dir / name;
        write_text(p, text);
        result.files.push_back(p);
    };

    try {
        fs::create_directories(c.output_dir);
        if (c.overwrite) fs::remove(c.output_dir / "error.json");

        NetworkModel model = build_model(c);
        if (is_network(c.scenario)) write("network.json", network_to_json(model));

        const SolveConfig sc = solve_config(c, model);
        Solver solver(model, sc);
        SolveReport report = solver.run();

        write("report.csv", report_to_csv(report));
        json summary = report_summary(report);
        summary["scenario"] = scenario_echo(c);
        summary["model"] = {{"nodes", model.nodes.size()},
                            {"elements", model.elements.size()},
                            {"free_dofs", solver.dofs().n_free()},
                            {"width", model.width},
                            {"height", model.height},
                            {"thickness", model.thickness}};
        if (is_network(c.scenario)) {
            const auto& g = model.generation;
            summary["generation"] = {{"fibers_requested", g.fibers_requested},
                                     {"fibers_deposited", g.fibers_deposited},
                                     {"deposited_length", g.deposited_length},
                                     {"intersections", g.intersections},
                                     {"elements_pruned", g.elements_pruned},
                                     {"elements_removed_by_notch", g.elements_removed_by_notch}};
        }
        write("summary.json", summary.dump(1) + "\n");
        write("states_final.csv", states_to_csv(model, report.final_states));
        for (const auto& cp : report.checkpoints) {
            write("states_step_" + std::to_string(cp.step) + ".csv", states_to_csv(model, cp.states));
        }
        if (c.plot) {
            const std::string title = std::string(scenario_name(c.scenario)) + ", " + c.scheme.label() +
                                      ", " + std::to_string(c.n_steps) + " steps";
            write("reaction.svg", reaction_curve_svg(report, title));
            write("network.svg", network_svg(model, report.final_states, title));
        }
        result.exit_code = report.termination == Termination::converged ? 0 : 1;
        result.report = std::move(report);
    } catch (const Error& e) {
        const auto* el = dynamic_cast<const ElementError*>(&e);
        const json doc = error_document(e.kind(), e.what(), el ? el->element_id() : -1);
        result.exit_code = 1;
        result.error_json = doc.dump();
        try {
            write("error.json", doc.dump(1) + "\n");
        } catch (const Error&) {
        }
    } catch (const fs::filesystem_error& e) {
        result.exit_code = 1;
        result.error_json = error_document("io_error", e.what()).dump();
    }
    return result;
}

std::string comparison_table(const Comparison& cmp) {
    std::ostringstream os;
    os << "increments";
    for (const auto& s : cmp.schemes) os << '\t' << s.label();
    os << '\n';
    for (std::size_t i = 0; i < cmp.steps.size(); ++i) {
        os << cmp.steps[i];
        for (std::size_t j = 0; j < cmp.schemes.size(); ++j) {
            const auto& cell = cmp.cell(i, j);
            os << '\t';
            if (cell.completed) {
                os << cell.cumulative_iterations;
            } else {
                os << 'f';
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string comparison_times(const Comparison& cmp) {
    std::ostringstream os;
    os << "increments";
    for (const auto& s : cmp.schemes) os << '\t' << s.label();
    os << '\n';
    for (std::size_t i = 0; i < cmp.steps.size(); ++i) {
        os << cmp.steps[i];
        for (std::size_t j = 0; j < cmp.schemes.size(); ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "\t%.3f", cmp.cell(i, j).wall_seconds);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

Comparison compare_schemes(const ScenarioConfig& base, const std::vector<SchemeConfig>& schemes,
                           const std::vector<int>& steps, bool write_files) {
    if (schemes.empty()) throw InvalidConfig("scheme list is empty");
    if (steps.empty()) throw InvalidConfig("step-count list is empty");
    for (const auto& s : schemes) s.validate();
    for (int n : steps) {
        if (n < 1) throw InvalidConfig("step counts must be at least 1");
    }
    base.validate();

    const NetworkModel model = build_model(base);
    Comparison cmp;
    cmp.schemes = schemes;
    cmp.steps = steps;
    if (write_files) {
        fs::create_directories(base.output_dir);
        if (is_network(base.scenario)) write_text(base.output_dir / "network.json", network_to_json(model));
    }

    for (int n : steps) {
        for (const auto& scheme : schemes) {
            ScenarioConfig c = base;
            c.scheme = scheme;
            c.n_steps = n;
            c.checkpoints.clear();
            ComparisonCell cell;
            cell.scheme = scheme;
            cell.n_steps = n;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                Solver solver(model, solve_config(c, model));
                const SolveReport report = solver.run();
                cell.completed = report.termination == Termination::converged;
                cell.cumulative_iterations = report.cumulative_iterations;
                cell.failure_reason = report.failure_reason;
                if (write_files) {
                    std::string label = scheme.label();
                    for (char& ch : label) {
                        if (ch == '(' || ch == ')') ch = '_';
                    }
                    const fs::path dir = base.output_dir / ("cell_" + std::to_string(n) + "_" + label);
                    fs::create_directories(dir);
                    write_text(dir / "report.csv", report_to_csv(report));
                }
            } catch (const Error& e) {
                cell.completed = false;
                cell.failure_reason = std::string(e.kind()) + ": " + e.what();
            }
            cell.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            cmp.cells.push_back(cell);
        }
    }
    if (write_files) {
        write_text(base.output_dir / "comparison.tsv", comparison_table(cmp));
        write_text(base.output_dir / "comparison_times.tsv", comparison_times(cmp));
    }
    return cmp;
}

}  // namespace fiberfrac
