#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fiberfrac/beam_core.hpp"
#include "fiberfrac/errors.hpp"
#include "test_support.hpp"

using namespace fiberfrac;

namespace {

FiberSection unit_section(double H = -0.5) {
    ElasticProperties e{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    return FiberSection::with_softening_modulus(e, 1.0, H);
}

/// B at the midpoint written out entry by entry.
Matrix6x12 hand_B(double l) {
    Matrix6x12 B = Matrix6x12::Zero();
    const double b1 = -1.0 / l, b2 = 1.0 / l, n = 0.5;
    for (int r = 0; r < 6; ++r) {
        B(r, r) = b1;
        B(r, 6 + r) = b2;
    }
    B(1, 5) = -n;
    B(1, 11) = -n;
    B(2, 4) = n;
    B(2, 10) = n;
    return B;
}

}  // namespace

TEST(BulkTangent, UnitParametersGiveIdentity) {
    EXPECT_TRUE(bulk_tangent(unit_section()).isApprox(Matrix6::Identity(), 0.0));
}

TEST(BulkTangent, FiberTableEntries) {
    const FiberSection s = fiber_table_section(0.1);
    const Matrix6 C = bulk_tangent(s);
    // EA = 6500 * 2.8e-4, kGA = 0.84 * 3250 * 2.8e-4
    EXPECT_NEAR(C(0, 0), 1.82, 1e-12);
    EXPECT_NEAR(C(1, 1), 0.7644, 1e-12);
    EXPECT_NEAR(C(2, 2), 0.7644, 1e-12);
    const double I = 2.8e-4 * 2.8e-4 / 12.0;
    EXPECT_NEAR(C(3, 3), 3250.0 * 2.0 * I, 1e-15);
    EXPECT_NEAR(C(4, 4), 3250.0 * I, 1e-15);
    EXPECT_NEAR(C(5, 5), 3250.0 * I, 1e-15);
    EXPECT_TRUE(C.isDiagonal());
}

TEST(FiberSection, FractureEnergyAndModulusAreTied) {
    const FiberSection a = fiber_table_section(0.1);
    EXPECT_NEAR(a.G_f(), a.N_bar() * a.N_bar() / (2.0 * std::abs(a.H_soft())), 1e-14);
    const FiberSection b = FiberSection::with_softening_modulus(a.elastic(), a.N_bar(), a.H_soft());
    EXPECT_NEAR(b.G_f(), 0.1, 1e-14);
    EXPECT_LT(a.H_soft(), 0.0);
}

TEST(FiberSection, RejectsInvalidParameters) {
    ElasticProperties e{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    EXPECT_THROW(FiberSection::with_fracture_energy(e, 1.0, -0.1), InvalidSection);
    EXPECT_THROW(FiberSection::with_softening_modulus(e, 1.0, 0.5), InvalidSection);
    EXPECT_THROW(FiberSection::from_parts(e, 1.0, -0.5, 1.1), InvalidSection);
    e.k_shear = 1.5;
    EXPECT_THROW(FiberSection::with_fracture_energy(e, 1.0, 0.1), InvalidSection);
    e.k_shear = 1.0;
    e.A = 0.0;
    EXPECT_THROW(FiberSection::with_fracture_energy(e, 1.0, 0.1), InvalidSection);
}

TEST(StrainDisplacement, MatchesHandWrittenMatrix) {
    for (double l : {0.3, 1.0, 2.5}) {
        EXPECT_TRUE(strain_displacement(l).isApprox(hand_B(l), 1e-15)) << "l = " << l;
    }
    EXPECT_THROW(strain_displacement(0.0), InvalidGeometry);
    EXPECT_THROW(strain_displacement(-1.0), InvalidGeometry);
}

TEST(StrainDisplacement, HandExamples) {
    Vector12 d = Vector12::Zero();
    EXPECT_TRUE(strain_from_displacements(d, 1.0).as_vector().isZero(0.0));

    d(6) = 0.1;
    EXPECT_NEAR(strain_from_displacements(d, 1.0).eps, 0.1, 1e-15);

    d.setZero();
    d(7) = 0.2;
    d(5) = 0.2;
    d(11) = 0.2;
    EXPECT_NEAR(strain_from_displacements(d, 1.0).gamma_y, 0.0, 1e-15);
}

TEST(StressResultants, HandExamples) {
    const FiberSection u = unit_section();
    EXPECT_TRUE(stress_resultants({}, 0.0, 1.0, u).as_vector().isZero(0.0));

    GeneralizedStrain s;
    s.eps = 1.2;
    EXPECT_NEAR(stress_resultants(s, 0.4, 1.0, u).N, 0.8, 1e-15);

    const FiberSection f = fiber_table_section(0.1);
    s.eps = f.N_bar() / f.EA();
    EXPECT_NEAR(s.eps, 0.12923, 1e-5);
    EXPECT_NEAR(stress_resultants(s, 0.0, 1.0, f).N, 0.2352, 1e-15);
}

TEST(InternalForce, HandExamples) {
    EXPECT_TRUE(internal_force({}, 1.0).isZero(0.0));

    StressResultant axial;
    axial.N = 1.0;
    Vector12 expected = Vector12::Zero();
    expected(0) = -1.0;
    expected(6) = 1.0;
    EXPECT_TRUE(internal_force(axial, 1.0).isApprox(expected, 1e-15));

    StressResultant shear;
    shear.Qy = 1.0;
    expected.setZero();
    expected(1) = -1.0;
    expected(7) = 1.0;
    expected(5) = -0.5;
    expected(11) = -0.5;
    EXPECT_TRUE(internal_force(shear, 1.0).isApprox(expected, 1e-15));
}

TEST(InternalForce, ConsistentWithStiffnessForRandomInput) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const FiberSection s = fiber_table_section(0.1);
    const Matrix6 C = bulk_tangent(s);
    for (int trial = 0; trial < 50; ++trial) {
        const double l = 0.05 + std::abs(u(rng));
        Vector12 d;
        for (int i = 0; i < 12; ++i) d(i) = 1e-3 * u(rng);
        const Matrix6x12 B = strain_displacement(l);
        const StressResultant sigma = StressResultant::from_vector(C * B * d);
        const Vector12 f = internal_force(sigma, l);
        const Vector12 Kd = l * B.transpose() * C * B * d;
        EXPECT_LE((f - Kd).norm(), 1e-14 * (1.0 + Kd.norm()));
    }
}

TEST(InternalForce, OrthogonalToRigidModes) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double l = 0.1 + std::abs(u(rng));
        StressResultant sigma;
        sigma.N = u(rng);
        sigma.Qy = u(rng);
        sigma.Qz = u(rng);
        sigma.Mx = u(rng);
        sigma.My = u(rng);
        sigma.Mz = u(rng);
        const Vector12 f = internal_force(sigma, l);
        for (const Vector12& mode : testing_support::rigid_modes_local(l)) {
            EXPECT_LE(std::abs(f.dot(mode)), 1e-12 * f.norm() * mode.norm());
        }
    }
}

TEST(BulkTangent, PositiveDefiniteForRandomSections) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        ElasticProperties e{u(rng), u(rng), 0.5, u(rng), u(rng), u(rng), u(rng)};
        const Matrix6 C = bulk_tangent(FiberSection::with_fracture_energy(e, 1.0, 1.0));
        EXPECT_TRUE(C.isApprox(C.transpose(), 0.0));
        EXPECT_GT(C.diagonal().minCoeff(), 0.0);
    }
}

TEST(GeneralizedStrain, VectorRoundTrip) {
    Vector6 v;
    v << 1, 2, 3, 4, 5, 6;
    EXPECT_EQ(GeneralizedStrain::from_vector(v).as_vector(), v);
    EXPECT_EQ(StressResultant::from_vector(v).as_vector(), v);
    EXPECT_EQ(GeneralizedStrain::from_vector(v).kappa_z, 6.0);
}
