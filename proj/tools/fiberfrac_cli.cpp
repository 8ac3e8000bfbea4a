// Command-line driver for the fiber-network fracture scenarios.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/network_io.hpp"
#include "fiberfrac/scenarios.hpp"

namespace fs = std::filesystem;
using namespace fiberfrac;

namespace {

constexpr int kUsageError = 2;

fs::path output_root() {
    const char* env = std::getenv("FIBERFRAC_OUTPUT_ROOT");
    return env && *env ? fs::path(env) : fs::path("fiberfrac_out");
}

struct Options {
    ScenarioConfig config;
    std::string scheme = "hybrid";
    double h_tol = 0.01;
    std::string out;
    std::string checkpoints;
    std::string schemes = "staggered,monolithic,hybrid:0.1,hybrid:0.01";
    std::string steps_list = "20,100,200,500";
    std::string base = "notched";
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    for (const auto& item : split_list(s)) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidConfig(std::string("bad ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

/// "staggered", "monolithic", "hybrid" (uses @p default_htol) or "hybrid:<h_tol>".
SchemeConfig parse_scheme_spec(const std::string& spec, double default_htol) {
    const auto colon = spec.find(':');
    SchemeConfig sc;
    sc.scheme = parse_scheme(spec.substr(0, colon));
    sc.h_tol = default_htol;
    if (colon != std::string::npos) {
        if (sc.scheme != Scheme::hybrid) throw InvalidConfig("only hybrid takes an h_tol: '" + spec + "'");
        try {
            sc.h_tol = std::stod(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw InvalidConfig("bad h_tol in '" + spec + "'");
        }
    }
    sc.validate();
    return sc;
}

void add_solver_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--scheme", o.scheme, "monolithic | staggered | hybrid")
        ->check(CLI::IsMember({"monolithic", "staggered", "hybrid"}))
        ->capture_default_str();
    cmd->add_option("--htol", o.h_tol, "hybrid stiffness tolerance h_tol")->capture_default_str();
    cmd->add_option("--steps", o.config.n_steps, "number of displacement increments")->capture_default_str();
    cmd->add_option("--delta", o.config.delta_0, "total grip displacement [mm] (0: scenario default)");
    cmd->add_option("--max-iters", o.config.max_iters, "Newton iteration cap per step")->capture_default_str();
    cmd->add_flag("--bisect", o.config.bisect, "halve failed increments up to 8 times");
    cmd->add_option("--out", o.out, "output directory (default $FIBERFRAC_OUTPUT_ROOT/<scenario>)");
    cmd->add_flag("--overwrite", o.config.overwrite, "replace existing output files");
    cmd->add_flag("--plot", o.config.plot, "write reaction.svg and network.svg");
    cmd->add_option("--checkpoints", o.checkpoints, "comma-separated steps for state dumps");
}

void add_network_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.config.seed, "random seed")->capture_default_str();
    cmd->add_option("--density", o.config.density, "sheet density rho_s [kg/m^3]")->capture_default_str();
    cmd->add_option("--width", o.config.width, "domain width [mm]")->capture_default_str();
    cmd->add_option("--height", o.config.height, "domain height [mm]")->capture_default_str();
    cmd->add_flag("--prune-dead-ends", o.config.prune_dead_ends, "remove dangling fiber ends");
}

void finish_config(Options& o, ScenarioKind kind) {
    o.config.scenario = kind;
    o.config.scheme = parse_scheme_spec(o.scheme, o.h_tol);
    o.config.checkpoints = parse_int_list(o.checkpoints, "checkpoint");
    o.config.output_dir = o.out.empty() ? output_root() / std::string(scenario_name(kind)) : fs::path(o.out);
}

int report_usage_error(const std::string& message) {
    std::cerr << "{\"status\":\"error\",\"kind\":\"invalid_config\",\"message\":"
              << nlohmann::json(message).dump() << "}\n";
    return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fracture of fiber networks with embedded softening hinges"};
    app.set_config("--config", "", "INI or TOML file with the same keys as the flags");
    app.require_subcommand(1);

    Options o;

    auto* cantilever = app.add_subcommand("cantilever", "bar in tension with a weakened left element");
    add_solver_options(cantilever, o);
    cantilever->add_option("--gf", o.config.G_f, "fracture energy [N mm]")->capture_default_str();
    cantilever->add_option("--elements", o.config.cantilever_elements, "1 or more elements")
        ->capture_default_str();

    auto* tensile = app.add_subcommand("tensile", "random fiber network in uniaxial tension");
    add_solver_options(tensile, o);
    add_network_options(tensile, o);
    tensile->add_option("--gf", o.config.G_f, "fiber fracture energy [N mm]")->capture_default_str();

    auto* notched = app.add_subcommand("notched", "edge-notched fiber network in tension");
    add_solver_options(notched, o);
    add_network_options(notched, o);
    notched->add_option("--gf", o.config.G_f, "fiber fracture energy [N mm]")->capture_default_str();
    notched->add_option("--notch-angle", o.config.notch_angle, "opening angle [deg]")->capture_default_str();
    notched->add_option("--notch-depth", o.config.notch_depth, "notch depth [mm] (0: height/2)");

    std::string network_path;
    auto* network = app.add_subcommand("network", "solve a network read from a JSON file");
    add_solver_options(network, o);
    network->add_option("file", network_path, "network JSON file")->required();

    auto* compare = app.add_subcommand("compare", "cumulative iterations per scheme and step count");
    add_solver_options(compare, o);
    add_network_options(compare, o);
    compare->add_option("--gf", o.config.G_f, "fiber fracture energy [N mm]")->capture_default_str();
    compare->add_option("--base", o.base, "cantilever | tensile | notched")
        ->check(CLI::IsMember({"cantilever", "tensile", "notched"}))
        ->capture_default_str();
    compare->add_option("--elements", o.config.cantilever_elements, "cantilever elements");
    compare->add_option("--schemes", o.schemes, "comma-separated, hybrid:<h_tol> for hybrid")
        ->capture_default_str();
    compare->add_option("--steps-list", o.steps_list, "comma-separated increment counts")
        ->capture_default_str();

    std::string generate_kind = "tensile";
    auto* gen = app.add_subcommand("generate", "write a generated network to JSON");
    add_network_options(gen, o);
    gen->add_option("--gf", o.config.G_f, "fiber fracture energy [N mm]")->capture_default_str();
    gen->add_option("--kind", generate_kind, "tensile | notched")
        ->check(CLI::IsMember({"tensile", "notched"}))
        ->capture_default_str();
    gen->add_option("--out", o.out, "output file")->required();
    gen->add_flag("--overwrite", o.config.overwrite, "replace an existing file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*gen) {
            const fs::path out = o.out;
            if (fs::exists(out) && !o.config.overwrite) {
                return report_usage_error(out.string() + " exists; pass --overwrite to replace it");
            }
            o.config.scenario = parse_scenario(generate_kind);
            o.config.validate();
            const NetworkModel model = build_model(o.config);
            if (out.has_parent_path()) fs::create_directories(out.parent_path());
            write_network(model, out);
            std::cout << "wrote " << out.string() << ": " << model.nodes.size() << " nodes, "
                      << model.elements.size() << " elements\n";
            return 0;
        }
        if (*compare) {
            finish_config(o, parse_scenario(o.base));
            if (o.out.empty()) o.config.output_dir = output_root() / "compare";
            std::vector<SchemeConfig> schemes;
            for (const auto& s : split_list(o.schemes)) schemes.push_back(parse_scheme_spec(s, o.h_tol));
            const std::vector<int> steps = parse_int_list(o.steps_list, "step count");
            if (schemes.empty() || steps.empty()) {
                return report_usage_error("scheme and step-count lists must be non-empty");
            }
            const Comparison cmp = compare_schemes(o.config, schemes, steps);
            std::cout << comparison_table(cmp);
            return 0;
        }

        ScenarioKind kind = ScenarioKind::cantilever;
        if (*tensile) kind = ScenarioKind::tensile;
        if (*notched) kind = ScenarioKind::notched;
        if (*network) {
            kind = ScenarioKind::network_file;
            o.config.network_file = network_path;
        }
        finish_config(o, kind);
        const ScenarioResult result = run_scenario(o.config);
        if (result.exit_code == kUsageError) {
            std::cerr << result.error_json << '\n';
            return kUsageError;
        }
        if (!result.error_json.empty()) std::cerr << result.error_json << '\n';
        if (result.report) {
            const auto& r = *result.report;
            std::cout << scenario_name(kind) << " " << o.config.scheme.label() << ": "
                      << termination_name(r.termination) << ", " << r.steps.size() - 1 << " steps, "
                      << r.cumulative_iterations << " cumulative iterations, "
                      << "ruptured elements: " << (r.steps.empty() ? 0 : r.steps.back().n_ruptured) << '\n';
            for (const auto& f : result.files) std::cout << "  " << f.string() << '\n';
        }
        return result.exit_code;
    } catch (const InvalidConfig& e) {
        return report_usage_error(e.what());
    } catch (const Error& e) {
        std::cerr << "{\"status\":\"error\",\"kind\":\"" << e.kind()
                  << "\",\"message\":" << nlohmann::json(std::string(e.what())).dump() << "}\n";
        return 1;
    }
}
