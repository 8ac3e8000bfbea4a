#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "fiberfrac/beam_core.hpp"
#include "fiberfrac/hinge.hpp"

namespace fiberfrac {

/**
 * @brief Length and orientation of a two-node beam.
 *
 * Lambda holds the local triad {e_x, e_y, e_z} as rows, expressed in global
 * axes, so that a local vector is Lambda times the global one.
 */
struct ElementGeometry {
    std::array<int, 2> node_ids{0, 0};
    double l_e = 0.0;
    Eigen::Matrix3d Lambda = Eigen::Matrix3d::Identity();

    /// Geometry of the segment x1 -> x2 with the default local triad.
    static ElementGeometry from_points(int n1, int n2, const Eigen::Vector3d& x1,
                                       const Eigen::Vector3d& x2);
    /// Validates l_e > 0 and that Lambda is a proper rotation (to 1e-12).
    static ElementGeometry with_triad(int n1, int n2, double l_e, const Eigen::Matrix3d& Lambda);
};

/// Local triad for a beam along @p axis: e_x = axis/|axis|, e_y = z x e_x
/// (x_global replaces z_global when the two are parallel), e_z = e_x x e_y.
Eigen::Matrix3d local_triad(const Eigen::Vector3d& axis);

enum class Scheme { monolithic, staggered, hybrid };

struct SchemeConfig {
    Scheme scheme = Scheme::hybrid;
    double h_tol = 0.01;

    static SchemeConfig monolithic() { return {Scheme::monolithic, 0.01}; }
    static SchemeConfig staggered() { return {Scheme::staggered, 0.01}; }
    static SchemeConfig hybrid(double h_tol) { return {Scheme::hybrid, h_tol}; }

    /// Throws InvalidConfig when h_tol is not positive for the hybrid scheme.
    void validate() const;
    /// "monolithic", "staggered" or "hybrid(0.01)".
    std::string label() const;
};

std::string_view scheme_name(Scheme scheme);
/// Accepts "monolithic", "staggered", "hybrid"; throws InvalidConfig otherwise.
Scheme parse_scheme(std::string_view name);

/// Linearized element blocks of the displacement/jump system.
struct SubMatrices {
    Matrix12 K_dd;
    Matrix12x6 K_dxi;
    Matrix6x12 K_xid;
    Matrix6 K_xixi;
    bool hinge_active = false;
};

/// One-point quadrature of the four coupled blocks. The softening modulus
/// enters K_xixi(0,0) only while the hinge is active.
SubMatrices submatrices(const FiberSection& section, double l_e, bool hinge_active);

enum class Condensation {
    axial,  ///< condense the active axial jump only (1x1 pivot)
    full    ///< condense all six jump components (verification path)
};

/// K_dd - K_dxi K_xixi^-1 K_xid, or K_dd when the hinge is inactive.
/// @throws SingularCondensation when a pivot of K_xixi is below 1e-14 of its scale.
Matrix12 condense_monolithic(const SubMatrices& subs,
                             Condensation mode = Condensation::axial);

/// The staggered tangent is K_dd, independent of the softening state.
Matrix12 staggered_stiffness(const SubMatrices& subs);

/// h_tol * EA / l_e.
double minimum_stiffness(double h_tol, const FiberSection& section, double l_e);

/// Mixing factor so that beta*k_mono + (1-beta)*k_stagg = max(k_mono, K_min).
double hybrid_beta(double k_mono_11, double k_stagg_11, double K_min);

struct ElementTangent {
    Matrix12 K;
    double beta_used = 1.0;
    bool k_min_active = false;
};

/// beta K_mono + (1 - beta) K_stagg with beta fixed by the scheme
/// (1 monolithic, 0 staggered, K_min floor rule for hybrid).
ElementTangent hybrid_stiffness(const SubMatrices& subs, const SchemeConfig& scheme,
                                const FiberSection& section, double l_e);

/// DOF deletion for a ruptured element: axial rows/columns of K and axial
/// entries of f_int are zeroed and K(0,0) = K(6,6) = K_min.
void apply_rupture(Matrix12& K, Vector12& f_int, double K_min);

/// Block-diagonal transformation T = diag(Lambda, Lambda, Lambda, Lambda).
Matrix12 rotation_matrix(const Eigen::Matrix3d& Lambda);

/// K' = T^T K T and f' = T^T f.
std::pair<Matrix12, Vector12> to_global(const Matrix12& K_local, const Vector12& f_local,
                                        const ElementGeometry& geom);

/// Everything the global assembly needs from one element at one iterate.
struct ElementResponse {
    Matrix12 K_global;
    Vector12 f_global;
    HingeUpdate hinge;
    GeneralizedStrain strain;  ///< bulk strain B d (jump excluded)
    StressResultant sigma;
    double beta_used = 1.0;
    bool k_min_active = false;
};

/// Per-element pipeline: rotate d to local axes, update the hinge from
/// state_n, build the scheme tangent, delete axial DOFs on rupture and rotate
/// back to global axes.
ElementResponse evaluate_element(const FiberSection& section, const ElementGeometry& geom,
                                 const Vector12& d_global, const HingeState& state_n,
                                 const SchemeConfig& scheme);

}  // namespace fiberfrac
