#include "fiberfrac/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/hinge.hpp"

namespace fiberfrac {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        std::string_view line = text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = pos + 1;
    }
    return lines;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw FormatError("bad number '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) throw FormatError("bad integer '" + s + "'");
    return static_cast<int>(v);
}

void check_preamble(const std::vector<std::string_view>& lines, const char* tag,
                    const char* header) {
    if (lines.size() < 2 || lines[0] != tag) {
        throw FormatError(std::string("missing CSV version tag '") + tag + "'");
    }
    if (lines[1] != header) throw FormatError(std::string("unexpected CSV header, want '") + header + "'");
}

/// Blue -> cyan -> yellow -> red ramp for t in [0, 1].
std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    static const double stops[4][3] = {{49, 54, 149}, {69, 189, 207}, {254, 224, 80}, {215, 25, 28}};
    const double s = t * 3.0;
    const int i = std::min(2, static_cast<int>(s));
    const double f = s - i;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string report_to_csv(const SolveReport& report) {
    std::ostringstream os;
    os << kReportCsvTag << '\n' << kReportCsvHeader << '\n';
    for (const auto& r : report.steps) {
        os << r.step << ',' << fmt(r.u) << ',' << fmt(r.reaction) << ',' << fmt(r.stress) << ','
           << r.iterations << ',' << r.n_ruptured << ',' << fmt(r.min_beta) << '\n';
    }
    return os.str();
}

std::vector<StepRecord> report_from_csv(std::string_view text) {
    const auto lines = lines_of(text);
    check_preamble(lines, kReportCsvTag, kReportCsvHeader);
    std::vector<StepRecord> out;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        if (f.size() != 7) throw FormatError("report CSV row " + std::to_string(i + 1) + " has " +
                                             std::to_string(f.size()) + " fields");
        StepRecord r;
        r.step = parse_int(f[0]);
        r.u = parse_double(f[1]);
        r.reaction = parse_double(f[2]);
        r.stress = parse_double(f[3]);
        r.iterations = parse_int(f[4]);
        r.n_ruptured = parse_int(f[5]);
        r.min_beta = parse_double(f[6]);
        out.push_back(r);
    }
    return out;
}

json report_summary(const SolveReport& report) {
    const SolveConfig& c = report.config;
    json j;
    j["config"] = {{"scheme", std::string(scheme_name(c.scheme.scheme))},
                   {"h_tol", c.scheme.h_tol},
                   {"label", c.scheme.label()},
                   {"n_steps", c.n_steps},
                   {"delta_0", c.delta_0},
                   {"max_iters", c.max_iters},
                   {"tol_rel", c.tol_rel},
                   {"tol_abs", c.tol_abs},
                   {"bisect", c.bisect},
                   {"checkpoints", c.checkpoints}};
    j["n_elements"] = report.n_elements;
    j["nominal_area"] = report.nominal_area;
    j["cumulative_iterations"] = report.cumulative_iterations;
    j["termination"] = std::string(termination_name(report.termination));
    if (report.termination == Termination::step_failed) {
        j["failed_step"] = report.failed_step;
        j["failed_step_iterations"] = report.failed_step_iterations;
        j["failure_reason"] = report.failure_reason;
    }
    j["steps_completed"] = report.steps.empty() ? 0 : report.steps.back().step;

    double peak = 0.0;
    int neg_pivot_steps = 0;
    for (const auto& r : report.steps) {
        peak = std::max(peak, r.reaction);
        if (r.negative_pivots > 0) ++neg_pivot_steps;
    }
    j["peak_reaction"] = peak;
    j["steps_with_negative_pivots"] = neg_pivot_steps;
    if (!report.steps.empty()) {
        const StepRecord& last = report.steps.back();
        j["final"] = {{"u", last.u},
                      {"reaction", last.reaction},
                      {"n_ruptured", last.n_ruptured},
                      {"external_work", last.external_work},
                      {"stored_energy", last.stored_energy},
                      {"dissipated_energy", last.dissipated_energy}};
    }
    double xi_max = 0.0;
    json ruptured = json::array();
    for (std::size_t e = 0; e < report.final_states.size(); ++e) {
        xi_max = std::max(xi_max, report.final_states[e].alpha);
        if (report.final_states[e].ruptured) ruptured.push_back(e);
    }
    j["max_alpha"] = xi_max;
    j["ruptured_elements"] = std::move(ruptured);
    return j;
}

std::string states_to_csv(const NetworkModel& model, const std::vector<HingeState>& states) {
    if (states.size() != model.elements.size()) {
        throw FormatError("state count does not match element count");
    }
    std::ostringstream os;
    os << kStateCsvTag << '\n' << kStateCsvHeader << '\n';
    for (std::size_t e = 0; e < states.size(); ++e) {
        os << model.elements[e].id << ',' << fmt(states[e].xi) << ',' << fmt(states[e].alpha) << ','
           << (states[e].ruptured ? 1 : 0) << '\n';
    }
    return os.str();
}

std::vector<StateRow> states_from_csv(std::string_view text) {
    const auto lines = lines_of(text);
    check_preamble(lines, kStateCsvTag, kStateCsvHeader);
    std::vector<StateRow> out;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        if (f.size() != 4) throw FormatError("state CSV row " + std::to_string(i + 1) + " malformed");
        out.push_back({parse_int(f[0]), parse_double(f[1]), parse_double(f[2]), parse_int(f[3]) != 0});
    }
    return out;
}

std::string reaction_curve_svg(const SolveReport& report, const std::string& title) {
    constexpr double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 55;
    double u_max = 0.0, r_max = 0.0, r_min = 0.0;
    for (const auto& r : report.steps) {
        u_max = std::max(u_max, r.u);
        r_max = std::max(r_max, r.reaction);
        r_min = std::min(r_min, r.reaction);
    }
    if (u_max <= 0.0) u_max = 1.0;
    if (r_max - r_min <= 0.0) r_max = r_min + 1.0;
    auto px = [&](double u) { return ml + (W - ml - mr) * u / u_max; };
    auto py = [&](double r) { return H - mb - (H - mt - mb) * (r - r_min) / (r_max - r_min); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape_xml(title) << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << W - mr << "\" y2=\"" << py(0)
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double u = u_max * k / 4, r = r_min + (r_max - r_min) * k / 4;
        os << "<text x=\"" << px(u) << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">"
           << fmt_short(u) << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << py(r) + 4 << "\" text-anchor=\"end\">"
           << fmt_short(r) << "</text>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\">displacement [mm]</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (mt + H - mb) / 2 << ")\">reaction [N]</text>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : report.steps) os << fmt_short(px(r.u)) << ',' << fmt_short(py(r.reaction)) << ' ';
    os << "\"/>\n";
    if (report.termination == Termination::step_failed && !report.steps.empty()) {
        const auto& last = report.steps.back();
        const double x = px(last.u), y = py(last.reaction);
        os << "<path d=\"M" << x - 5 << ' ' << y - 5 << " L" << x + 5 << ' ' << y + 5 << " M" << x - 5
           << ' ' << y + 5 << " L" << x + 5 << ' ' << y - 5 << "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string network_svg(const NetworkModel& model, const std::vector<HingeState>& states,
                        const std::string& title) {
    constexpr double W = 900, margin = 20, top = 40, legend = 40;
    const double sx = model.width > 0 ? model.width : 1.0;
    const double sy = model.height > 0 ? model.height : 1.0;
    const double scale = (W - 2 * margin) / sx;
    const double H = top + sy * scale + legend + margin;
    auto px = [&](double x) { return margin + scale * x; };
    auto py = [&](double y) { return top + scale * (sy - y); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << fmt_short(H)
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape_xml(title) << "</text>\n";
    os << "<rect x=\"" << px(0) << "\" y=\"" << py(sy) << "\" width=\"" << sx * scale << "\" height=\""
       << sy * scale << "\" fill=\"none\" stroke=\"#888\"/>\n";

    // Draw in increasing order of damage so opened hinges stay on top.
    std::vector<std::size_t> order(model.elements.size());
    std::vector<double> t(model.elements.size(), 0.0);
    for (std::size_t e = 0; e < order.size(); ++e) {
        order[e] = e;
        if (e < states.size()) {
            const double a_max = alpha_max(model.sections[model.elements[e].section]);
            t[e] = states[e].ruptured ? 1.0 : std::abs(states[e].xi) / a_max;
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return t[a] < t[b]; });
    for (std::size_t e : order) {
        const auto& el = model.elements[e];
        const auto& a = model.nodes[el.nodes[0]];
        const auto& b = model.nodes[el.nodes[1]];
        const double w = t[e] > 0.0 ? 1.6 : 0.6;
        os << "<line x1=\"" << fmt_short(px(a.x())) << "\" y1=\"" << fmt_short(py(a.y())) << "\" x2=\""
           << fmt_short(px(b.x())) << "\" y2=\"" << fmt_short(py(b.y())) << "\" stroke=\""
           << ramp_color(t[e]) << "\" stroke-width=\"" << w << "\"/>\n";
    }
    const double ly = H - legend + 5;
    for (int k = 0; k < 50; ++k) {
        os << "<rect x=\"" << margin + 4 * k << "\" y=\"" << fmt_short(ly) << "\" width=\"4\" height=\"10\" fill=\""
           << ramp_color(k / 49.0) << "\"/>\n";
    }
    os << "<text x=\"" << margin + 210 << "\" y=\"" << fmt_short(ly + 10)
       << "\">xi / xi_max (0 to 1, ruptured = 1)</text>\n";
    os << "</svg>\n";
    return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << text;
}

}  // namespace fiberfrac
