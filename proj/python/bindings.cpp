#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/hinge.hpp"
#include "fiberfrac/netgen.hpp"
#include "fiberfrac/network_io.hpp"
#include "fiberfrac/report_io.hpp"
#include "fiberfrac/scenarios.hpp"
#include "fiberfrac/solver.hpp"

namespace py = pybind11;
using namespace fiberfrac;

namespace {

py::dict report_to_dict(const SolveReport& r) {
    std::vector<int> step, iterations, n_ruptured;
    std::vector<double> u, reaction, stress, work, stored, dissipated;
    for (const auto& s : r.steps) {
        step.push_back(s.step);
        u.push_back(s.u);
        reaction.push_back(s.reaction);
        stress.push_back(s.stress);
        iterations.push_back(s.iterations);
        n_ruptured.push_back(s.n_ruptured);
        work.push_back(s.external_work);
        stored.push_back(s.stored_energy);
        dissipated.push_back(s.dissipated_energy);
    }
    py::dict d;
    d["step"] = step;
    d["u"] = u;
    d["reaction"] = reaction;
    d["stress"] = stress;
    d["iterations"] = iterations;
    d["n_ruptured"] = n_ruptured;
    d["external_work"] = work;
    d["stored_energy"] = stored;
    d["dissipated_energy"] = dissipated;
    d["cumulative_iterations"] = r.cumulative_iterations;
    d["termination"] = std::string(termination_name(r.termination));
    d["failed_step"] = r.failed_step;
    d["failure_reason"] = r.failure_reason;
    d["csv"] = report_to_csv(r);
    return d;
}

SchemeConfig make_scheme(const std::string& name, double h_tol) {
    SchemeConfig s{parse_scheme(name), h_tol};
    s.validate();
    return s;
}

}  // namespace

PYBIND11_MODULE(_fiberfrac, m) {
    m.doc() = "Fiber-network fracture solver with embedded softening hinges";

    // translators are tried newest first
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidConfig>(m, "InvalidConfig", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    py::class_<FiberSection>(m, "FiberSection")
        .def_property_readonly("EA", &FiberSection::EA)
        .def_property_readonly("N_bar", &FiberSection::N_bar)
        .def_property_readonly("H_soft", &FiberSection::H_soft)
        .def_property_readonly("G_f", &FiberSection::G_f);

    m.def("fiber_table_section", &fiber_table_section, py::arg("G_f") = 0.1,
          "Section of the reference fiber with the given fracture energy [N mm].");
    m.def("alpha_max", &alpha_max, py::arg("section"), "Jump at complete rupture [mm].");

    py::class_<HingeState>(m, "HingeState")
        .def(py::init<>())
        .def(py::init([](double xi, double alpha, bool ruptured) { return HingeState{xi, alpha, ruptured}; }),
             py::arg("xi"), py::arg("alpha"), py::arg("ruptured") = false)
        .def_readwrite("xi", &HingeState::xi)
        .def_readwrite("alpha", &HingeState::alpha)
        .def_readwrite("ruptured", &HingeState::ruptured)
        .def("__repr__", [](const HingeState& s) {
            return "HingeState(xi=" + std::to_string(s.xi) + ", alpha=" + std::to_string(s.alpha) +
                   ", ruptured=" + (s.ruptured ? "True" : "False") + ")";
        });

    m.def(
        "update_hinge",
        [](double eps, const HingeState& state_n, const FiberSection& section, double l_e) {
            const HingeUpdate u = update_hinge(eps, state_n, section, l_e);
            return py::make_tuple(u.N, u.state);
        },
        py::arg("eps"), py::arg("state_n"), py::arg("section"), py::arg("l_e"),
        "Return mapping of the axial hinge; returns (N, new_state).");

    py::class_<NetworkModel>(m, "NetworkModel")
        .def_property_readonly("n_nodes", [](const NetworkModel& n) { return n.nodes.size(); })
        .def_property_readonly("n_elements", [](const NetworkModel& n) { return n.elements.size(); })
        .def_property_readonly("width", [](const NetworkModel& n) { return n.width; })
        .def_property_readonly("height", [](const NetworkModel& n) { return n.height; })
        .def("to_json", [](const NetworkModel& n) { return network_to_json(n); })
        .def_static("from_json", [](const std::string& text) { return network_from_json(text); })
        .def("save", [](const NetworkModel& n, const std::filesystem::path& p) { write_network(n, p); })
        .def_static("load", [](const std::filesystem::path& p) { return read_network(p); });

    m.def("cantilever_model", &cantilever_model, py::arg("n_elements") = 1, py::arg("G_f") = 0.1);
    m.def(
        "generate_network",
        [](double width, double height, double density, std::uint64_t seed, double G_f, double notch_depth,
           double notch_angle, bool prune_dead_ends) {
            NetworkSpec spec;
            spec.width = width;
            spec.height = height;
            spec.target_density = density;
            spec.seed = seed;
            spec.fiber.section = fiber_table_section(G_f);
            spec.prune_dead_ends = prune_dead_ends;
            if (notch_depth > 0.0) spec.notch = NotchSpec{notch_angle, notch_depth, 0.5 * width};
            return generate(spec);
        },
        py::arg("width") = 18.0, py::arg("height") = 6.0, py::arg("density") = 1000.0, py::arg("seed") = 42,
        py::arg("G_f") = 0.1, py::arg("notch_depth") = 0.0, py::arg("notch_angle") = 20.0,
        py::arg("prune_dead_ends") = false);

    m.def(
        "solve",
        [](const NetworkModel& model, const std::string& scheme, double h_tol, int n_steps, double delta,
           int max_iters, double tol_rel, bool bisect) {
            SolveConfig c;
            c.scheme = make_scheme(scheme, h_tol);
            c.n_steps = n_steps;
            c.delta_0 = delta;
            c.max_iters = max_iters;
            c.tol_rel = tol_rel;
            c.bisect = bisect;
            py::gil_scoped_release release;
            const SolveReport r = run(model, c);
            py::gil_scoped_acquire acquire;
            return report_to_dict(r);
        },
        py::arg("model"), py::arg("scheme") = "hybrid", py::arg("h_tol") = 0.01, py::arg("n_steps") = 100,
        py::arg("delta") = 1.0, py::arg("max_iters") = 500, py::arg("tol_rel") = 1e-6, py::arg("bisect") = false,
        "Displacement-controlled run; returns a dict of per-step lists and totals.");
}
