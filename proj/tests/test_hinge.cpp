#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/hinge.hpp"

using namespace fiberfrac;

namespace {

ElasticProperties unit_elastic() { return {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}; }

FiberSection unit_section(double H = -0.5) {
    return FiberSection::with_softening_modulus(unit_elastic(), 1.0, H);
}

}  // namespace

TEST(AlphaMax, FiberTableValues) {
    // N_bar / |H| = 2 G_f / N_bar with N_bar = 0.2352
    EXPECT_NEAR(alpha_max(fiber_table_section(0.1)), 0.8503, 5e-5);
    EXPECT_NEAR(alpha_max(fiber_table_section(0.2)), 1.7007, 5e-5);
    EXPECT_NEAR(alpha_max(fiber_table_section(0.1)), 0.2 / 0.2352, 1e-14);
    EXPECT_DOUBLE_EQ(alpha_max(unit_section(-1.0)), 1.0);
}

TEST(TrialState, HandExamples) {
    const FiberSection s = unit_section();
    TrialState t = trial_state(0.0, {}, s, 1.0);
    EXPECT_EQ(t.N_trial, 0.0);
    EXPECT_EQ(t.Phi_trial, -1.0);

    t = trial_state(1.2, {}, s, 1.0);
    EXPECT_NEAR(t.N_trial, 1.2, 1e-15);
    EXPECT_NEAR(t.Phi_trial, 0.2, 1e-15);

    t = trial_state(1.2, {0.4, 0.4, false}, s, 1.0);
    EXPECT_NEAR(t.N_trial, 0.8, 1e-15);
    EXPECT_NEAR(t.Phi_trial, 0.0, 1e-15);
}

TEST(ReturnMap, WorkedExample) {
    const FiberSection s = unit_section();
    const HingeUpdate u = return_map({1.2, 0.2}, {}, s, 1.0);
    EXPECT_TRUE(u.loading);
    EXPECT_EQ(u.passes, 1);
    EXPECT_NEAR(u.state.alpha, 0.4, 1e-15);
    EXPECT_NEAR(u.state.xi, 0.4, 1e-15);
    EXPECT_NEAR(u.N, 0.8, 1e-15);
    EXPECT_NEAR(u.N, s.N_bar() + s.H_soft() * u.state.alpha, 1e-15);
    EXPECT_FALSE(u.state.ruptured);
}

TEST(ReturnMap, ElasticBranchLeavesStateUnchanged) {
    const FiberSection s = unit_section();
    const HingeState n{0.1, 0.1, false};
    const HingeUpdate u = return_map({0.5, -0.45}, n, s, 1.0);
    EXPECT_FALSE(u.loading);
    EXPECT_EQ(u.N, 0.5);
    EXPECT_EQ(u.state, n);
}

TEST(ReturnMap, RuptureClampsForce) {
    const FiberSection s = unit_section();
    const HingeState n{1.9, 1.9, false};
    const TrialState t = trial_state(2.5, n, s, 1.0);
    ASSERT_GT(t.Phi_trial, 0.0);
    const HingeUpdate u = return_map(t, n, s, 1.0);
    EXPECT_TRUE(u.state.ruptured);
    EXPECT_GE(u.state.alpha, 2.0 * (1.0 - 1e-12));
    EXPECT_EQ(u.N, 0.0);
}

TEST(ReturnMap, SnapBackDetected) {
    const FiberSection s = unit_section(-2.0);
    EXPECT_THROW(return_map({1.5, 0.5}, {}, s, 1.0), SnapBack);
    // l_e < EA/|H| is admissible
    EXPECT_NO_THROW(return_map({1.5, 0.5}, {}, s, 0.4));
}

TEST(ReturnMap, TrialWithinToleranceKeepsTrialForce) {
    const FiberSection s = unit_section();
    const TrialState t{1.0 + 1e-15, 1e-15};
    const HingeUpdate u = return_map(t, {}, s, 1.0);
    EXPECT_EQ(u.N, t.N_trial);
    EXPECT_EQ(u.state.alpha, 0.0);
    EXPECT_FALSE(u.state.ruptured);
}

TEST(ReturnMap, RupturedStateIsAbsorbing) {
    const FiberSection s = unit_section();
    const HingeState n{2.0, 2.0, true};
    const HingeUpdate u = update_hinge(5.0, n, s, 1.0);
    EXPECT_TRUE(u.state.ruptured);
    EXPECT_EQ(u.N, 0.0);
    EXPECT_GE(u.state.alpha, n.alpha);
    const HingeUpdate back = update_hinge(-1.0, n, s, 1.0);
    EXPECT_TRUE(back.state.ruptured);
    EXPECT_EQ(back.N, 0.0);
}

TEST(ReturnMap, RandomizedConsistency) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const double EA = 0.5 + 5.0 * u(rng);
        ElasticProperties e = unit_elastic();
        e.E = EA;
        const double N_bar = 0.1 + u(rng);
        const double l = 0.05 + u(rng);
        // |H| < EA / l keeps the denominator positive.
        const double H = -(0.01 + 0.98 * u(rng)) * EA / l;
        const FiberSection s = FiberSection::with_softening_modulus(e, N_bar, H);
        const double a_max = alpha_max(s);
        const double alpha_n = 0.9 * a_max * u(rng);
        const HingeState n{alpha_n, alpha_n, false};
        const double eps = (N_bar + H * alpha_n) / EA + alpha_n / l + 0.3 * u(rng) * N_bar / EA;
        const TrialState t = trial_state(eps, n, s, l);
        if (t.Phi_trial <= 0.0) continue;
        const HingeUpdate r = return_map(t, n, s, l);
        ++checked;
        EXPECT_EQ(r.passes, 1);
        EXPECT_GE(r.state.alpha, alpha_n);
        if (r.state.ruptured) {
            EXPECT_EQ(r.N, 0.0);
            continue;
        }
        const double phi = r.N - (N_bar + H * r.state.alpha);
        EXPECT_LE(std::abs(phi), 1e-10 * N_bar);
        EXPECT_EQ(std::signbit(r.N), std::signbit(t.N_trial));
        // Traction equilibrium across the discontinuity.
        EXPECT_LE(std::abs(-r.N + (N_bar + H * r.state.alpha)), 1e-12 * N_bar);
        // Stress from the updated jump equals the corrected force.
        EXPECT_NEAR(EA * (eps - r.state.xi / l), r.N, 1e-12 * N_bar);
    }
    EXPECT_GT(checked, 1000);
}

TEST(ReturnMap, PathIndependentOnMonotonicTension) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const FiberSection s = fiber_table_section(0.1 + 0.1 * u(rng));
        const double l = 0.1 + u(rng);
        const double eps_peak = s.N_bar() / s.EA();
        const double eps = eps_peak * (1.0 + 0.5 * u(rng));
        const double eps_mid = eps_peak + (eps - eps_peak) * u(rng);
        const HingeUpdate once = update_hinge(eps, {}, s, l);
        const HingeUpdate half = update_hinge(eps_mid, {}, s, l);
        const HingeUpdate twice = update_hinge(eps, half.state, s, l);
        EXPECT_NEAR(once.N, twice.N, 1e-10);
        EXPECT_NEAR(once.state.xi, twice.state.xi, 1e-10);
        EXPECT_NEAR(once.state.alpha, twice.state.alpha, 1e-10);
    }
}

TEST(HingeDissipation, ClosedForm) {
    const FiberSection s = unit_section();
    EXPECT_EQ(hinge_dissipation({}, s), 0.0);
    EXPECT_NEAR(hinge_dissipation({0.4, 0.4, false}, s), 0.36, 1e-15);
    EXPECT_DOUBLE_EQ(hinge_dissipation({2.0, 2.0, true}, s), s.G_f());
    EXPECT_DOUBLE_EQ(hinge_dissipation({3.0, 2.3, true}, s), s.G_f());

    // trapezoidal integral of the softening line N_bar + H alpha
    const double a = 1.3;
    const int n = 1000;
    double area = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a0 = a * i / n, a1 = a * (i + 1) / n;
        area += 0.5 * ((1.0 - 0.5 * a0) + (1.0 - 0.5 * a1)) * (a1 - a0);
    }
    EXPECT_NEAR(hinge_dissipation({a, a, false}, s), area, 1e-12);
}

TEST(UpdateHinge, ElasticUnloadingKeepsJump) {
    const FiberSection s = unit_section();
    const HingeUpdate loaded = update_hinge(1.2, {}, s, 1.0);
    const HingeUpdate unloaded = update_hinge(0.5, loaded.state, s, 1.0);
    EXPECT_FALSE(unloaded.loading);
    EXPECT_EQ(unloaded.state, loaded.state);
    EXPECT_NEAR(unloaded.N, 0.5 - 0.4, 1e-15);
}
