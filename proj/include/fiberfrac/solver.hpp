#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fiberfrac/element.hpp"
#include "fiberfrac/hinge.hpp"
#include "fiberfrac/linear_solve.hpp"
#include "fiberfrac/model.hpp"

namespace fiberfrac {

/// Partition of the global DOFs into free and prescribed sets.
class DofMap {
public:
    explicit DofMap(const NetworkModel& model);

    int n_dofs() const { return n_dofs_; }
    int n_free() const { return static_cast<int>(free_.size()); }
    int n_prescribed() const { return static_cast<int>(prescribed_.size()); }

    /// Position in the free (or prescribed) block, -1 when the DOF is in the other set.
    int free_index(int dof) const { return free_index_[dof]; }
    int prescribed_index(int dof) const { return prescribed_index_[dof]; }

    const std::vector<int>& free_dofs() const { return free_; }
    const std::vector<int>& prescribed_dofs() const { return prescribed_; }
    /// Global u_x DOFs of the moving grip nodes.
    const std::vector<int>& loaded_dofs() const { return loaded_; }

    /// Prescribed-block values for a grip displacement @p u.
    Eigen::VectorXd prescribed_values(double u) const;

private:
    int n_dofs_ = 0;
    std::vector<int> free_;
    std::vector<int> prescribed_;
    std::vector<int> loaded_;
    std::vector<int> free_index_;
    std::vector<int> prescribed_index_;
};

/// Global system at one displacement iterate.
struct GlobalSystem {
    SparseMatrix K_ff;       ///< free-free block of the tangent
    SparseMatrix K_fp;       ///< free-prescribed coupling block
    SparseMatrix K_full;     ///< whole 6 n_nodes tangent, only when requested
    Eigen::VectorXd f_int;   ///< internal force on all DOFs
    Eigen::VectorXd r_free;  ///< residual restricted to the free DOFs
    std::vector<HingeState> states;  ///< hinge states updated for this iterate
    double stored_energy = 0.0;
    double dissipated_energy = 0.0;
    double min_beta = 1.0;
    int n_ruptured = 0;
    int n_softening = 0;  ///< elements whose failure surface is active
    int n_floored = 0;    ///< elements where the hybrid floor K_min is active
};

/**
 * @brief Assembles tangent, internal force and residual at displacement @p d.
 *
 * Every hinge is updated from @p states_n for the current iterate before its
 * stiffness is evaluated. Element errors are rethrown as ElementError.
 */
GlobalSystem assemble(const NetworkModel& model, const std::vector<ElementGeometry>& geoms,
                      const DofMap& dofs, const std::vector<HingeState>& states_n,
                      const Eigen::VectorXd& d, const SchemeConfig& scheme,
                      bool with_full_matrix = false);

struct SolveConfig {
    SchemeConfig scheme;
    int n_steps = 100;
    double delta_0 = 1.0;  ///< total grip displacement [mm]
    int max_iters = 500;
    double tol_rel = 1e-6;
    double tol_abs = 0.0;  ///< 0 selects 1e-9 N_bar sqrt(n_elements)
    bool bisect = false;
    int max_bisections = 8;
    std::vector<int> checkpoints;  ///< steps at which hinge states are stored

    /// @throws InvalidConfig
    void validate() const;
};

struct StepRecord {
    int step = 0;
    double u = 0.0;          ///< applied grip displacement [mm]
    double reaction = 0.0;   ///< total x force on the moving grip [N]
    double stress = 0.0;     ///< reaction / nominal area [MPa]
    int iterations = 0;
    int n_ruptured = 0;
    double min_beta = 1.0;
    int n_softening = 0;
    int n_floored = 0;
    int negative_pivots = 0;  ///< of the last factorization, -1 when unknown
    double external_work = 0.0;
    double stored_energy = 0.0;
    double dissipated_energy = 0.0;
};

enum class Termination { converged, step_failed };

struct StateCheckpoint {
    int step = 0;
    std::vector<HingeState> states;
};

struct SolveReport {
    SolveConfig config;
    double nominal_area = 0.0;
    int n_elements = 0;
    std::vector<StepRecord> steps;  ///< includes the unloaded step 0
    long cumulative_iterations = 0;  ///< sum over the recorded steps
    int failed_step_iterations = 0;  ///< iterations spent on the failed step
    Termination termination = Termination::converged;
    int failed_step = -1;
    std::string failure_reason;
    std::vector<StateCheckpoint> checkpoints;
    std::vector<HingeState> final_states;
    Eigen::VectorXd final_displacement;
};

/// Outcome of one load increment.
struct StepOutcome {
    bool converged = false;
    int iterations = 0;
    std::string reason;
};

/// Displacement-controlled incremental Newton solver for one model.
class Solver {
public:
    Solver(NetworkModel model, SolveConfig config);

    /// Advances the grip to @p u_target. On failure displacement and states are unchanged.
    StepOutcome solve_step(double u_target);

    SolveReport run();

    const NetworkModel& model() const { return model_; }
    const DofMap& dofs() const { return dofs_; }
    const SolveConfig& config() const { return config_; }
    double applied() const { return u_; }
    double tol_abs() const { return tol_abs_; }
    const Eigen::VectorXd& displacement() const { return d_; }
    const std::vector<HingeState>& states() const { return states_; }
    /// Converged system at the current displacement.
    const GlobalSystem& system() const { return sys_; }
    double reaction() const;
    int last_negative_pivots() const { return last_negative_pivots_; }

private:
    StepOutcome attempt(double u_target);
    StepOutcome advance(double u_from, double u_to, int depth);

    NetworkModel model_;
    SolveConfig config_;
    std::vector<ElementGeometry> geoms_;
    DofMap dofs_;
    double tol_abs_ = 0.0;
    double u_ = 0.0;
    Eigen::VectorXd d_;
    std::vector<HingeState> states_;
    GlobalSystem sys_;
    SymmetricSparseSolver linear_;
    int last_negative_pivots_ = 0;
};

/// Convenience wrapper: Solver(model, config).run().
SolveReport run(const NetworkModel& model, const SolveConfig& config);

std::string_view termination_name(Termination t);

}  // namespace fiberfrac
