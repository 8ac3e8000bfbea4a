#include "fiberfrac/beam_core.hpp"

#include <cmath>
#include <sstream>

#include "fiberfrac/errors.hpp"

namespace fiberfrac {

namespace {

void check_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "section parameter " << name << " must be positive and finite, got " << value;
        throw InvalidSection(os.str());
    }
}

void check_elastic(const ElasticProperties& p) {
    check_positive(p.E, "E");
    check_positive(p.G_shear, "G_shear");
    check_positive(p.A, "A");
    check_positive(p.J, "J");
    check_positive(p.I11, "I11");
    check_positive(p.I22, "I22");
    if (!(p.k_shear > 0.0 && p.k_shear <= 1.0)) {
        throw InvalidSection("shear correction factor must lie in (0, 1]");
    }
}

}  // namespace

ElasticProperties ElasticProperties::square(double E, double G_shear, double k_shear,
                                            double side) {
    const double I = side * side * side * side / 12.0;
    return ElasticProperties{E, G_shear, k_shear, side * side, 2.0 * I, I, I};
}

FiberSection::FiberSection(const ElasticProperties& elastic, double N_bar, double H_soft,
                           double G_f)
    : elastic_(elastic), N_bar_(N_bar), H_soft_(H_soft), G_f_(G_f) {}

FiberSection FiberSection::with_fracture_energy(const ElasticProperties& elastic, double N_bar,
                                                double G_f) {
    check_elastic(elastic);
    check_positive(N_bar, "N_bar");
    check_positive(G_f, "G_f");
    return FiberSection(elastic, N_bar, -N_bar * N_bar / (2.0 * G_f), G_f);
}

FiberSection FiberSection::with_softening_modulus(const ElasticProperties& elastic,
                                                  double N_bar, double H_soft) {
    check_elastic(elastic);
    check_positive(N_bar, "N_bar");
    if (!(H_soft < 0.0) || !std::isfinite(H_soft)) {
        throw InvalidSection("softening modulus H must be negative");
    }
    return FiberSection(elastic, N_bar, H_soft, N_bar * N_bar / (2.0 * -H_soft));
}

FiberSection FiberSection::from_parts(const ElasticProperties& elastic, double N_bar,
                                      double H_soft, double G_f) {
    const FiberSection derived = with_softening_modulus(elastic, N_bar, H_soft);
    if (!(std::abs(derived.G_f_ - G_f) <= 1e-12 * derived.G_f_)) {
        throw InvalidSection("fracture energy does not match N_bar^2 / (2|H|)");
    }
    return FiberSection(elastic, N_bar, H_soft, G_f);
}

FiberSection FiberSection::with_strength(double N_bar) const {
    return with_softening_modulus(elastic_, N_bar, H_soft_);
}

FiberSection fiber_table_section(double G_f) {
    const auto elastic = ElasticProperties::square(6500.0, 3250.0, 0.84, std::sqrt(0.00028));
    return FiberSection::with_fracture_energy(elastic, 0.2352, G_f);
}

Vector6 GeneralizedStrain::as_vector() const {
    Vector6 v;
    v << eps, gamma_y, gamma_z, kappa_x, kappa_y, kappa_z;
    return v;
}

GeneralizedStrain GeneralizedStrain::from_vector(const Vector6& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5)};
}

Vector6 StressResultant::as_vector() const {
    Vector6 v;
    v << N, Qy, Qz, Mx, My, Mz;
    return v;
}

StressResultant StressResultant::from_vector(const Vector6& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5)};
}

Matrix6 bulk_tangent(const FiberSection& s) {
    Vector6 diag;
    const double kGA = s.k_shear() * s.G_shear() * s.A();
    diag << s.EA(), kGA, kGA, s.G_shear() * s.J(), s.G_shear() * s.I11(), s.G_shear() * s.I22();
    return diag.asDiagonal();
}

Matrix6x12 strain_displacement(double l_e) {
    if (!(l_e > 0.0) || !std::isfinite(l_e)) {
        throw InvalidGeometry("element length must be positive");
    }
    const double B1 = -1.0 / l_e;
    const double B2 = 1.0 / l_e;
    const double N1 = 0.5;
    const double N2 = 0.5;

    Matrix6x12 B = Matrix6x12::Zero();
    for (int i = 0; i < 6; ++i) {
        B(i, i) = B1;
        B(i, i + 6) = B2;
    }
    // shear rows carry the rotation terms
    B(1, 5) = -N1;
    B(1, 11) = -N2;
    B(2, 4) = N1;
    B(2, 10) = N2;
    return B;
}

GeneralizedStrain strain_from_displacements(const Vector12& d_local, double l_e) {
    return GeneralizedStrain::from_vector(strain_displacement(l_e) * d_local);
}

StressResultant stress_resultants(const GeneralizedStrain& strain, double xi, double l_e,
                                  const FiberSection& section) {
    Vector6 sigma = bulk_tangent(section) * strain.as_vector();
    sigma(0) = section.EA() * (strain.eps - xi / l_e);
    return StressResultant::from_vector(sigma);
}

Vector12 internal_force(const StressResultant& sigma, double l_e) {
    return l_e * strain_displacement(l_e).transpose() * sigma.as_vector();
}

}  // namespace fiberfrac
