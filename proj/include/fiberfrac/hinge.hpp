#pragma once

#include "fiberfrac/beam_core.hpp"

namespace fiberfrac {

/// History of the embedded axial jump at the element midpoint.
struct HingeState {
    double xi = 0.0;     ///< axial jump [mm]
    double alpha = 0.0;  ///< softening variable [mm], non-decreasing
    bool ruptured = false;

    bool operator==(const HingeState&) const = default;
};

/// Elastic predictor: N_trial = EA (eps - xi_n/l_e), Phi_trial = N_trial - (N_bar + H alpha_n).
struct TrialState {
    double N_trial = 0.0;
    double Phi_trial = 0.0;
};

/// Result of a constitutive update at the hinge.
struct HingeUpdate {
    double N = 0.0;
    HingeState state;
    bool loading = false;  ///< true when the failure surface was active (return mapping ran)
    int passes = 0;        ///< return-mapping passes taken
};

/// Jump at complete rupture, N_bar / |H| (= 2 G_f / N_bar).
double alpha_max(const FiberSection& section);

/// Tolerance on the failure function used to stop the return mapping.
double failure_threshold(const FiberSection& section);

TrialState trial_state(double eps, const HingeState& state_n, const FiberSection& section,
                       double l_e);

/**
 * @brief Plastic corrector for tension-only rupture.
 *
 * Takes the trial state and corrects it back onto Phi = 0 using the
 * consistency parameter dgamma = Phi / (H + EA/l_e). The linear softening law
 * closes in a single pass. Once alpha reaches alpha_max the state is marked
 * ruptured and N is clamped to zero.
 *
 * With Phi_trial <= 0 the elastic branch is returned unchanged, and a
 * ruptured state_n is returned with N = 0.
 *
 * @throws SnapBack when H + EA/l_e <= 0.
 */
HingeUpdate return_map(const TrialState& trial, const HingeState& state_n,
                       const FiberSection& section, double l_e);

/// Full predictor-corrector evaluation for axial strain @p eps starting from state_n.
/// Ruptured states are absorbing: N = 0 and xi follows the opening l_e * eps.
HingeUpdate update_hinge(double eps, const HingeState& state_n, const FiberSection& section,
                         double l_e);

/// Energy dissipated by the hinge: N_bar alpha - |H| alpha^2 / 2, capped at G_f.
double hinge_dissipation(const HingeState& state, const FiberSection& section);

}  // namespace fiberfrac
