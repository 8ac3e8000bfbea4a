#pragma once

#include <Eigen/Dense>

namespace fiberfrac {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Vector12 = Eigen::Matrix<double, 12, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix12 = Eigen::Matrix<double, 12, 12>;
using Matrix6x12 = Eigen::Matrix<double, 6, 12>;
using Matrix12x6 = Eigen::Matrix<double, 12, 6>;

/// Number of DOFs per node: (u_x, u_y, u_z, theta_x, theta_y, theta_z).
inline constexpr int kNodeDofs = 6;
/// Local element DOF index of the axial displacement at node 1 and node 2.
inline constexpr int kAxialDof1 = 0;
inline constexpr int kAxialDof2 = 6;

/// Elastic cross-section data of a beam, in the N-mm-MPa system.
struct ElasticProperties {
    double E = 0.0;        ///< Young's modulus [MPa]
    double G_shear = 0.0;  ///< shear modulus [MPa]
    double k_shear = 1.0;  ///< shear correction factor [-]
    double A = 0.0;        ///< area [mm^2]
    double J = 0.0;        ///< polar moment of inertia [mm^4]
    double I11 = 0.0;      ///< area moment of inertia [mm^4]
    double I22 = 0.0;      ///< area moment of inertia [mm^4]

    /// Square cross-section of side @p side: I = s^4/12, J = 2 I.
    static ElasticProperties square(double E, double G_shear, double k_shear, double side);

    bool operator==(const ElasticProperties&) const = default;
};

/**
 * @brief Elastic and softening parameters of a beam cross-section.
 *
 * The softening modulus H and the fracture energy G_f are tied by
 * G_f = N_bar^2 / (2 |H|); the factories take one of the two and derive the
 * other, so the pair is always consistent.
 */
class FiberSection {
public:
    static FiberSection with_fracture_energy(const ElasticProperties& elastic, double N_bar,
                                             double G_f);
    static FiberSection with_softening_modulus(const ElasticProperties& elastic, double N_bar,
                                               double H_soft);

    /// Restores a section from all stored fields; rejects an inconsistent H/G_f pair
    /// (1e-12 relative).
    static FiberSection from_parts(const ElasticProperties& elastic, double N_bar,
                                   double H_soft, double G_f);

    /// Same section with a different elastic limit force; H is kept, G_f follows.
    FiberSection with_strength(double N_bar) const;

    const ElasticProperties& elastic() const { return elastic_; }
    double E() const { return elastic_.E; }
    double G_shear() const { return elastic_.G_shear; }
    double k_shear() const { return elastic_.k_shear; }
    double A() const { return elastic_.A; }
    double J() const { return elastic_.J; }
    double I11() const { return elastic_.I11; }
    double I22() const { return elastic_.I22; }
    double N_bar() const { return N_bar_; }
    double H_soft() const { return H_soft_; }
    double G_f() const { return G_f_; }
    double EA() const { return elastic_.E * elastic_.A; }

    bool operator==(const FiberSection&) const = default;

private:
    FiberSection(const ElasticProperties& elastic, double N_bar, double H_soft, double G_f);

    ElasticProperties elastic_;
    double N_bar_;
    double H_soft_;
    double G_f_;
};

/// Fiber properties of the network benchmarks (square side sqrt(0.00028) mm).
FiberSection fiber_table_section(double G_f);

/// Generalized strains, ordered (eps, gamma_y, gamma_z, kappa_x, kappa_y, kappa_z).
struct GeneralizedStrain {
    double eps = 0.0;
    double gamma_y = 0.0;
    double gamma_z = 0.0;
    double kappa_x = 0.0;
    double kappa_y = 0.0;
    double kappa_z = 0.0;

    Vector6 as_vector() const;
    static GeneralizedStrain from_vector(const Vector6& v);
};

/// Stress resultants conjugate to GeneralizedStrain: (N, Qy, Qz, Mx, My, Mz).
struct StressResultant {
    double N = 0.0;
    double Qy = 0.0;
    double Qz = 0.0;
    double Mx = 0.0;
    double My = 0.0;
    double Mz = 0.0;

    Vector6 as_vector() const;
    static StressResultant from_vector(const Vector6& v);
};

/// Diagonal constitutive tangent diag(EA, kGA, kGA, GJ, G I11, G I22).
Matrix6 bulk_tangent(const FiberSection& section);

/// Strain-displacement matrix B sampled at the element midpoint (N1 = N2 = 1/2).
Matrix6x12 strain_displacement(double l_e);

/// Bulk strain B d without the jump contribution.
GeneralizedStrain strain_from_displacements(const Vector12& d_local, double l_e);

/// Stress resultants for the given strain and axial jump: N = EA (eps - xi/l_e);
/// the remaining components follow from C on the unenhanced strains.
StressResultant stress_resultants(const GeneralizedStrain& strain, double xi, double l_e,
                                  const FiberSection& section);

/// One-point quadrature of the internal force: l_e B^T sigma.
Vector12 internal_force(const StressResultant& sigma, double l_e);

}  // namespace fiberfrac
