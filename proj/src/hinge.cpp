#include "fiberfrac/hinge.hpp"

#include <cmath>
#include <sstream>

#include "fiberfrac/errors.hpp"

namespace fiberfrac {

namespace {

constexpr int kMaxPasses = 50;
constexpr double kRuptureTol = 1e-12;

bool reached_rupture(double alpha, const FiberSection& section) {
    return alpha >= alpha_max(section) * (1.0 - kRuptureTol);
}

}  // namespace

double alpha_max(const FiberSection& section) { return section.N_bar() / -section.H_soft(); }

double failure_threshold(const FiberSection& section) { return 1e-10 * section.N_bar(); }

TrialState trial_state(double eps, const HingeState& state_n, const FiberSection& section,
                       double l_e) {
    TrialState t;
    t.N_trial = section.EA() * (eps - state_n.xi / l_e);
    t.Phi_trial = t.N_trial - (section.N_bar() + section.H_soft() * state_n.alpha);
    return t;
}

HingeUpdate return_map(const TrialState& trial, const HingeState& state_n,
                       const FiberSection& section, double l_e) {
    HingeUpdate out;
    out.state = state_n;
    if (state_n.ruptured) {
        out.N = 0.0;
        return out;
    }
    if (trial.Phi_trial <= 0.0) {
        out.N = trial.N_trial;
        return out;
    }

    const double EA = section.EA();
    const double H = section.H_soft();
    const double G = -1.0 / l_e;
    const double sign = trial.N_trial >= 0.0 ? 1.0 : -1.0;
    const double denominator = H - EA * G * sign;
    if (!(denominator > 0.0)) {
        std::ostringstream os;
        os << "return mapping denominator " << denominator
           << " is not positive (element length " << l_e << " >= EA/|H| = " << EA / -H << ")";
        throw SnapBack(os.str());
    }

    const double threshold = failure_threshold(section);
    double dgamma = 0.0;
    double phi = trial.Phi_trial;
    out.N = trial.N_trial;
    while (phi > threshold && out.passes < kMaxPasses) {
        dgamma += phi / denominator;
        out.N = trial.N_trial + EA * G * dgamma * sign;
        out.state.xi = state_n.xi + dgamma * sign;
        out.state.alpha = state_n.alpha + dgamma;
        phi = out.N - (section.N_bar() + H * out.state.alpha);
        ++out.passes;
    }
    out.loading = true;

    if (reached_rupture(out.state.alpha, section)) {
        out.state.ruptured = true;
        out.N = 0.0;
    }
    return out;
}

HingeUpdate update_hinge(double eps, const HingeState& state_n, const FiberSection& section,
                         double l_e) {
    if (state_n.ruptured) {
        HingeUpdate out;
        out.state = state_n;
        out.state.xi = l_e * eps;
        return out;
    }
    HingeUpdate out = return_map(trial_state(eps, state_n, section, l_e), state_n, section, l_e);
    if (out.state.ruptured) {
        // no axial force can be transmitted; the opening absorbs the whole axial strain
        out.state.xi = l_e * eps;
    }
    return out;
}

double hinge_dissipation(const HingeState& state, const FiberSection& section) {
    if (state.ruptured || reached_rupture(state.alpha, section)) {
        return section.G_f();
    }
    const double a = state.alpha;
    return section.N_bar() * a - 0.5 * -section.H_soft() * a * a;
}

}  // namespace fiberfrac
