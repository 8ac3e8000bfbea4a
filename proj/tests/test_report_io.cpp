#include <gtest/gtest.h>

#include <algorithm>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/hinge.hpp"
#include "fiberfrac/report_io.hpp"
#include "fiberfrac/scenarios.hpp"

using namespace fiberfrac;

namespace {

SolveReport cantilever_report(int steps = 40) {
    const NetworkModel m = cantilever_model(1, 0.1);
    SolveConfig c;
    c.scheme = SchemeConfig::hybrid(0.01);
    c.n_steps = steps;
    c.delta_0 = 1.2 * alpha_max(m.sections.front());
    return run(m, c);
}

}  // namespace

TEST(ReportCsv, HeaderAndRowCount) {
    const SolveReport r = cantilever_report();
    const std::string csv = report_to_csv(r);
    EXPECT_EQ(csv.rfind(std::string(kReportCsvTag) + "\n" + kReportCsvHeader + "\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + static_cast<long>(r.steps.size()));
}

TEST(ReportCsv, RoundTripIsExact) {
    const SolveReport r = cantilever_report();
    const std::vector<StepRecord> back = report_from_csv(report_to_csv(r));
    ASSERT_EQ(back.size(), r.steps.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].step, r.steps[i].step);
        EXPECT_EQ(back[i].u, r.steps[i].u);
        EXPECT_EQ(back[i].reaction, r.steps[i].reaction);
        EXPECT_EQ(back[i].stress, r.steps[i].stress);
        EXPECT_EQ(back[i].iterations, r.steps[i].iterations);
        EXPECT_EQ(back[i].n_ruptured, r.steps[i].n_ruptured);
        EXPECT_EQ(back[i].min_beta, r.steps[i].min_beta);
    }
}

TEST(ReportCsv, RejectsWrongHeader) {
    EXPECT_THROW(report_from_csv("step,u\n0,0\n"), FormatError);
    const std::string bad_row =
        std::string(kReportCsvTag) + "\n" + kReportCsvHeader + "\n0,0,0\n";
    EXPECT_THROW(report_from_csv(bad_row), FormatError);
}

TEST(StateCsv, RoundTrip) {
    const NetworkModel m = cantilever_model(3, 0.1);
    const std::vector<HingeState> states{{0.25, 0.5, false}, {0.0, 0.0, false}, {1.0, 2.0, true}};
    const std::vector<StateRow> rows = states_from_csv(states_to_csv(m, states));
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].element_id, m.elements[i].id);
        EXPECT_EQ(rows[i].xi, states[i].xi);
        EXPECT_EQ(rows[i].alpha, states[i].alpha);
        EXPECT_EQ(rows[i].ruptured, states[i].ruptured);
    }
    EXPECT_THROW(states_from_csv("element_id\n"), FormatError);
}

TEST(Summary, ContainsFinalEnergies) {
    const SolveReport r = cantilever_report();
    const nlohmann::json j = report_summary(r);
    EXPECT_EQ(j.at("termination"), "converged");
    EXPECT_EQ(j.at("cumulative_iterations").get<long>(), r.cumulative_iterations);
    EXPECT_EQ(j.at("final").at("n_ruptured").get<int>(), 1);
    EXPECT_DOUBLE_EQ(j.at("final").at("dissipated_energy").get<double>(),
                     r.steps.back().dissipated_energy);
}

TEST(Svg, WellFormedDocuments) {
    const SolveReport r = cantilever_report();
    const std::string curve = reaction_curve_svg(r, "cantilever");
    EXPECT_EQ(curve.rfind("<svg", 0), 0u);
    EXPECT_NE(curve.find("</svg>"), std::string::npos);
    EXPECT_NE(curve.find("cantilever"), std::string::npos);
    const NetworkModel m = cantilever_model(1, 0.1);
    const std::string net = network_svg(m, r.final_states, "a < b");
    EXPECT_NE(net.find("a &lt; b"), std::string::npos);
    EXPECT_NE(net.find("</svg>"), std::string::npos);
}
