#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "fiberfrac/beam_core.hpp"
#include "fiberfrac/element.hpp"

namespace fiberfrac {

struct BeamElement {
    int id = 0;
    std::array<int, 2> nodes{0, 0};
    int section = 0;  ///< index into NetworkModel::sections
    int fiber = 0;    ///< parent fiber id

    bool operator==(const BeamElement&) const = default;
};

/// Grip node sets. Fixed nodes are clamped in all six DOFs; moving nodes get
/// the prescribed u_x ramp with u_y and theta_z held at zero.
struct BoundarySets {
    std::vector<int> fixed;
    std::vector<int> moving;

    bool operator==(const BoundarySets&) const = default;
};

/// Bookkeeping from network generation, exported in run reports.
struct GenerationReport {
    int fibers_requested = 0;
    int fibers_deposited = 0;       ///< fibers with an in-domain part longer than l_min
    double deposited_length = 0.0;  ///< total fiber length inside the domain [mm]
    double meshed_length = 0.0;     ///< total element length before pruning [mm]
    int intersections = 0;
    int elements_before_pruning = 0;
    int elements_pruned = 0;
    int elements_removed_by_notch = 0;
    int components = 0;

    bool operator==(const GenerationReport&) const = default;
};

struct NetworkModel {
    double width = 0.0;      ///< extent in x [mm]
    double height = 0.0;     ///< extent in y [mm]
    double thickness = 0.0;  ///< nominal sheet thickness used for stress [mm]
    std::vector<Eigen::Vector3d> nodes;
    std::vector<BeamElement> elements;
    std::vector<FiberSection> sections;
    BoundarySets bcs;
    /// Holds u_z, theta_x, theta_y at zero on every node.
    bool plane_constraint = true;
    GenerationReport generation;

    double nominal_area() const { return height * thickness; }

    bool operator==(const NetworkModel&) const = default;
};

/// Geometry of every element, in element order.
std::vector<ElementGeometry> element_geometries(const NetworkModel& model);

/// Checks indices, grip sets and element lengths; throws InvalidGeometry.
void validate_model(const NetworkModel& model);

}  // namespace fiberfrac
