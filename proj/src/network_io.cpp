#include "fiberfrac/network_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fiberfrac/errors.hpp"

namespace fiberfrac {

using nlohmann::json;

namespace {

json section_to_json(int id, const FiberSection& s) {
    return json{{"id", id},           {"E", s.E()},         {"G_shear", s.G_shear()},
                {"k_shear", s.k_shear()}, {"A", s.A()},     {"J", s.J()},
                {"I11", s.I11()},     {"I22", s.I22()},     {"N_bar", s.N_bar()},
                {"H_soft", s.H_soft()}, {"G_f", s.G_f()}};
}

FiberSection section_from_json(const json& j) {
    ElasticProperties e;
    e.E = j.at("E").get<double>();
    e.G_shear = j.at("G_shear").get<double>();
    e.k_shear = j.at("k_shear").get<double>();
    e.A = j.at("A").get<double>();
    e.J = j.at("J").get<double>();
    e.I11 = j.at("I11").get<double>();
    e.I22 = j.at("I22").get<double>();
    return FiberSection::from_parts(e, j.at("N_bar").get<double>(), j.at("H_soft").get<double>(),
                                    j.at("G_f").get<double>());
}

}  // namespace

std::string network_to_json(const NetworkModel& model) {
    json doc;
    doc["format"] = kNetworkFormat;
    doc["version"] = kNetworkFormatVersion;
    doc["domain"] = {{"width", model.width},
                     {"height", model.height},
                     {"thickness", model.thickness}};

    json sections = json::array();
    for (std::size_t i = 0; i < model.sections.size(); ++i) {
        sections.push_back(section_to_json(static_cast<int>(i), model.sections[i]));
    }
    doc["sections"] = std::move(sections);

    json nodes = json::array();
    for (std::size_t i = 0; i < model.nodes.size(); ++i) {
        const auto& x = model.nodes[i];
        nodes.push_back({{"id", i}, {"x", x.x()}, {"y", x.y()}, {"z", x.z()}});
    }
    doc["nodes"] = std::move(nodes);

    json elements = json::array();
    for (const auto& e : model.elements) {
        elements.push_back({{"id", e.id},
                            {"n1", e.nodes[0]},
                            {"n2", e.nodes[1]},
                            {"section", e.section},
                            {"fiber", e.fiber}});
    }
    doc["elements"] = std::move(elements);

    doc["bcs"] = {{"fixed", model.bcs.fixed},
                  {"moving", model.bcs.moving},
                  {"plane_constraint", model.plane_constraint}};

    const auto& g = model.generation;
    doc["generation"] = {{"fibers_requested", g.fibers_requested},
                         {"fibers_deposited", g.fibers_deposited},
                         {"deposited_length", g.deposited_length},
                         {"meshed_length", g.meshed_length},
                         {"intersections", g.intersections},
                         {"elements_before_pruning", g.elements_before_pruning},
                         {"elements_pruned", g.elements_pruned},
                         {"elements_removed_by_notch", g.elements_removed_by_notch},
                         {"components", g.components}};
    return doc.dump(1) + "\n";
}

NetworkModel network_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("network file is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kNetworkFormat) {
            throw FormatError("not a fiberfrac network document");
        }
        const int version = doc.at("version").get<int>();
        if (version != kNetworkFormatVersion) {
            throw FormatError("unsupported network format version " + std::to_string(version));
        }

        NetworkModel model;
        const auto& domain = doc.at("domain");
        model.width = domain.at("width").get<double>();
        model.height = domain.at("height").get<double>();
        model.thickness = domain.at("thickness").get<double>();

        for (const auto& s : doc.at("sections")) {
            if (s.at("id").get<std::size_t>() != model.sections.size()) {
                throw FormatError("section ids must be consecutive from 0");
            }
            model.sections.push_back(section_from_json(s));
        }
        for (const auto& n : doc.at("nodes")) {
            if (n.at("id").get<std::size_t>() != model.nodes.size()) {
                throw FormatError("node ids must be consecutive from 0");
            }
            model.nodes.emplace_back(n.at("x").get<double>(), n.at("y").get<double>(),
                                     n.at("z").get<double>());
        }
        for (const auto& e : doc.at("elements")) {
            BeamElement el;
            el.id = e.at("id").get<int>();
            el.nodes = {e.at("n1").get<int>(), e.at("n2").get<int>()};
            el.section = e.at("section").get<int>();
            el.fiber = e.at("fiber").get<int>();
            model.elements.push_back(el);
        }
        const auto& bcs = doc.at("bcs");
        model.bcs.fixed = bcs.at("fixed").get<std::vector<int>>();
        model.bcs.moving = bcs.at("moving").get<std::vector<int>>();
        model.plane_constraint = bcs.value("plane_constraint", true);

        if (doc.contains("generation")) {
            const auto& g = doc["generation"];
            auto& r = model.generation;
            r.fibers_requested = g.value("fibers_requested", 0);
            r.fibers_deposited = g.value("fibers_deposited", 0);
            r.deposited_length = g.value("deposited_length", 0.0);
            r.meshed_length = g.value("meshed_length", 0.0);
            r.intersections = g.value("intersections", 0);
            r.elements_before_pruning = g.value("elements_before_pruning", 0);
            r.elements_pruned = g.value("elements_pruned", 0);
            r.elements_removed_by_notch = g.value("elements_removed_by_notch", 0);
            r.components = g.value("components", 0);
        }
        validate_model(model);
        return model;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed network document: ") + e.what());
    } catch (const InvalidGeometry& e) {
        throw FormatError(std::string("invalid network: ") + e.what());
    } catch (const InvalidSection& e) {
        throw FormatError(std::string("invalid section: ") + e.what());
    }
}

void write_network(const NetworkModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << network_to_json(model);
}

NetworkModel read_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return network_from_json(buffer.str());
}

}  // namespace fiberfrac
