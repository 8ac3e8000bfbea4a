#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "fiberfrac/model.hpp"

namespace fiberfrac {

/// Triangular edge notch: mouth on the y = 0 edge, apex at (apex_x, depth).
struct NotchSpec {
    double angle_deg = 20.0;
    double depth = 0.0;   ///< [mm]
    double apex_x = 0.0;  ///< [mm]
};

struct FiberSpec {
    FiberSection section = fiber_table_section(0.1);
    double length = 2.5;        ///< L_f [mm]
    double density = 1500.0;    ///< rho_f [kg/m^3]
    double height = 0.0;        ///< fiber height [mm]; 0 means sqrt(A)
};

struct NetworkSpec {
    double width = 18.0;             ///< [mm]
    double height = 6.0;             ///< [mm]
    double target_density = 1000.0;  ///< rho_s [kg/m^3]
    FiberSpec fiber;
    std::uint64_t seed = 42;
    std::optional<NotchSpec> notch;
    double grip_band = 1e-3;  ///< capture distance from x = 0 and x = W [mm]
    double l_min = 1e-3;      ///< node merge tolerance [mm]
    double l_e_max = 0.0;     ///< subdivision cap [mm]; 0 means L_f / 2
    bool prune_dead_ends = false;

    void validate() const;
    /// Nominal sheet thickness (the fiber height).
    double sheet_thickness() const;
};

/// round(rho_s W H t / (rho_f A L_f)).
int fiber_count(const NetworkSpec& spec);

/// A straight fiber clipped to the domain.
struct FiberSegment {
    Eigen::Vector2d a;
    Eigen::Vector2d b;
};

/// Deposits fiber_count(spec) fibers with uniform midpoints and orientations,
/// clipped to the domain. Deterministic for a fixed seed.
std::vector<FiberSegment> deposit_fibers(const NetworkSpec& spec);

/**
 * @brief Meshes the given fibers into a bonded beam network.
 *
 * Fibers are split at pairwise intersections into elements sharing a rigid
 * bond node; intersections closer than l_min to an existing node snap to it.
 * Spans longer than l_e_max are subdivided and components that do not
 * connect both grips are removed.
 *
 * @throws GenerationFailed when no component connects the grips.
 */
NetworkModel mesh_fibers(const std::vector<FiberSegment>& fibers, const NetworkSpec& spec);

/// deposit_fibers + mesh_fibers (+ apply_notch when the spec has one).
NetworkModel generate(const NetworkSpec& spec);

/// Removes every element crossing the open notch triangle and re-prunes.
/// @throws GenerationFailed when the notch disconnects the specimen.
NetworkModel apply_notch(const NetworkModel& model, const NotchSpec& notch);

/// Nodes within grip_band of x = 0 (fixed) and x = W (moving).
/// @throws GenerationFailed when a set is empty or the sets overlap.
BoundarySets boundary_sets(const NetworkModel& model, double grip_band);

/// Keeps only elements in components touching both grip sets; renumbers nodes
/// and elements in their original order. Returns the number of removed elements.
int prune_to_load_path(NetworkModel& model, bool prune_dead_ends = false);

}  // namespace fiberfrac
