#include "fiberfrac/element.hpp"

#include <cmath>
#include <sstream>

#include "fiberfrac/errors.hpp"

namespace fiberfrac {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kParallelTol = 1e-8;
constexpr double kPivotTol = 1e-14;

double default_beta(Scheme scheme) { return scheme == Scheme::staggered ? 0.0 : 1.0; }

}  // namespace

Eigen::Matrix3d local_triad(const Eigen::Vector3d& axis) {
    const double length = axis.norm();
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InvalidGeometry("cannot build a local triad for a zero-length axis");
    }
    const Eigen::Vector3d ex = axis / length;
    Eigen::Vector3d ey = Eigen::Vector3d::UnitZ().cross(ex);
    if (ey.norm() < kParallelTol) {
        ey = Eigen::Vector3d::UnitX().cross(ex);
    }
    ey.normalize();
    const Eigen::Vector3d ez = ex.cross(ey);

    Eigen::Matrix3d Lambda;
    Lambda.row(0) = ex.transpose();
    Lambda.row(1) = ey.transpose();
    Lambda.row(2) = ez.transpose();
    return Lambda;
}

ElementGeometry ElementGeometry::from_points(int n1, int n2, const Eigen::Vector3d& x1,
                                             const Eigen::Vector3d& x2) {
    const Eigen::Vector3d axis = x2 - x1;
    return with_triad(n1, n2, axis.norm(), local_triad(axis));
}

ElementGeometry ElementGeometry::with_triad(int n1, int n2, double l_e,
                                            const Eigen::Matrix3d& Lambda) {
    if (!(l_e > 0.0) || !std::isfinite(l_e)) {
        std::ostringstream os;
        os << "element (" << n1 << ", " << n2 << ") has nonpositive length " << l_e;
        throw InvalidGeometry(os.str());
    }
    const double ortho_err = (Lambda * Lambda.transpose() - Eigen::Matrix3d::Identity()).norm();
    if (ortho_err > kOrthoTol || std::abs(Lambda.determinant() - 1.0) > kOrthoTol) {
        throw InvalidGeometry("direction-cosine matrix is not a proper rotation");
    }
    ElementGeometry g;
    g.node_ids = {n1, n2};
    g.l_e = l_e;
    g.Lambda = Lambda;
    return g;
}

void SchemeConfig::validate() const {
    if (scheme == Scheme::hybrid && !(h_tol > 0.0 && h_tol < 1.0)) {
        throw InvalidConfig("hybrid scheme needs 0 < h_tol < 1");
    }
    if (!(h_tol > 0.0)) {
        throw InvalidConfig("h_tol must be positive");
    }
}

std::string SchemeConfig::label() const {
    if (scheme != Scheme::hybrid) {
        return std::string(scheme_name(scheme));
    }
    std::ostringstream os;
    os << "hybrid(" << h_tol << ")";
    return os.str();
}

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::monolithic: return "monolithic";
        case Scheme::staggered: return "staggered";
        case Scheme::hybrid: return "hybrid";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "monolithic") return Scheme::monolithic;
    if (name == "staggered") return Scheme::staggered;
    if (name == "hybrid") return Scheme::hybrid;
    throw InvalidConfig("unknown scheme '" + std::string(name) +
                        "' (expected monolithic, staggered or hybrid)");
}

SubMatrices submatrices(const FiberSection& section, double l_e, bool hinge_active) {
    const Matrix6x12 B = strain_displacement(l_e);
    const Matrix6 C = bulk_tangent(section);
    const Matrix6 G = Matrix6::Identity() * (-1.0 / l_e);

    // only the axial jump is admitted, so C* carries the non-axial part of C
    Matrix6 C_star = C;
    C_star(0, 0) = 0.0;

    Matrix6 H = Matrix6::Zero();
    if (hinge_active) {
        H(0, 0) = section.H_soft();
    }

    SubMatrices s;
    s.K_dd = l_e * B.transpose() * C * B;
    s.K_dxi = l_e * B.transpose() * C * G;
    s.K_xid = l_e * G * C * B + C_star * B;
    s.K_xixi = l_e * G.transpose() * C * G + H;
    s.hinge_active = hinge_active;
    return s;
}

Matrix12 condense_monolithic(const SubMatrices& subs, Condensation mode) {
    if (!subs.hinge_active) {
        return subs.K_dd;
    }
    const double scale = subs.K_xixi.cwiseAbs().maxCoeff();
    if (mode == Condensation::axial) {
        const double pivot = subs.K_xixi(0, 0);
        if (std::abs(pivot) < kPivotTol * scale) {
            throw SingularCondensation("axial jump pivot of K_xixi is numerically zero");
        }
        return subs.K_dd - subs.K_dxi.col(0) * subs.K_xid.row(0) / pivot;
    }

    const Eigen::FullPivLU<Matrix6> lu(subs.K_xixi);
    const Vector6 pivots = lu.matrixLU().diagonal();
    if (pivots.cwiseAbs().minCoeff() < kPivotTol * scale) {
        throw SingularCondensation("K_xixi is numerically singular");
    }
    return subs.K_dd - subs.K_dxi * lu.solve(subs.K_xid);
}

Matrix12 staggered_stiffness(const SubMatrices& subs) { return subs.K_dd; }

double minimum_stiffness(double h_tol, const FiberSection& section, double l_e) {
    return h_tol * section.EA() / l_e;
}

double hybrid_beta(double k_mono_11, double k_stagg_11, double K_min) {
    if (!(K_min > 0.0) || !(k_stagg_11 > K_min)) {
        throw InvalidConfig("hybrid mixing needs 0 < K_min < EA/l_e");
    }
    if (k_mono_11 > K_min) {
        return 1.0;
    }
    return (K_min - k_stagg_11) / (k_mono_11 - k_stagg_11);
}

ElementTangent hybrid_stiffness(const SubMatrices& subs, const SchemeConfig& scheme,
                                const FiberSection& section, double l_e) {
    ElementTangent t;
    switch (scheme.scheme) {
        case Scheme::staggered:
            t.K = staggered_stiffness(subs);
            t.beta_used = 0.0;
            return t;
        case Scheme::monolithic:
            t.K = condense_monolithic(subs);
            t.beta_used = 1.0;
            return t;
        case Scheme::hybrid:
            break;
    }

    const Matrix12 K_mono = condense_monolithic(subs);
    const Matrix12 K_stagg = staggered_stiffness(subs);
    const double K_min = minimum_stiffness(scheme.h_tol, section, l_e);
    const double beta = hybrid_beta(K_mono(kAxialDof1, kAxialDof1),
                                    K_stagg(kAxialDof1, kAxialDof1), K_min);
    t.beta_used = beta;
    t.k_min_active = beta < 1.0;
    t.K = beta == 1.0 ? K_mono : Matrix12(beta * K_mono + (1.0 - beta) * K_stagg);
    return t;
}

void apply_rupture(Matrix12& K, Vector12& f_int, double K_min) {
    for (const int dof : {kAxialDof1, kAxialDof2}) {
        K.row(dof).setZero();
        K.col(dof).setZero();
        K(dof, dof) = K_min;
        f_int(dof) = 0.0;
    }
}

Matrix12 rotation_matrix(const Eigen::Matrix3d& Lambda) {
    Matrix12 T = Matrix12::Zero();
    for (int b = 0; b < 4; ++b) {
        T.block<3, 3>(3 * b, 3 * b) = Lambda;
    }
    return T;
}

std::pair<Matrix12, Vector12> to_global(const Matrix12& K_local, const Vector12& f_local,
                                        const ElementGeometry& geom) {
    const Matrix12 T = rotation_matrix(geom.Lambda);
    return {T.transpose() * K_local * T, T.transpose() * f_local};
}

ElementResponse evaluate_element(const FiberSection& section, const ElementGeometry& geom,
                                 const Vector12& d_global, const HingeState& state_n,
                                 const SchemeConfig& scheme) {
    const double l_e = geom.l_e;
    const Matrix12 T = rotation_matrix(geom.Lambda);
    const Vector12 d_local = T * d_global;

    ElementResponse r;
    r.strain = strain_from_displacements(d_local, l_e);
    r.hinge = update_hinge(r.strain.eps, state_n, section, l_e);

    Vector6 sigma = bulk_tangent(section) * r.strain.as_vector();
    sigma(0) = r.hinge.N;
    r.sigma = StressResultant::from_vector(sigma);
    Vector12 f_local = internal_force(r.sigma, l_e);

    Matrix12 K_local;
    if (state_n.ruptured) {
        K_local = submatrices(section, l_e, false).K_dd;
        r.beta_used = default_beta(scheme.scheme);
    } else {
        const ElementTangent t =
            hybrid_stiffness(submatrices(section, l_e, r.hinge.loading), scheme, section, l_e);
        K_local = t.K;
        r.beta_used = t.beta_used;
        r.k_min_active = t.k_min_active;
    }
    if (r.hinge.state.ruptured) {
        apply_rupture(K_local, f_local, minimum_stiffness(scheme.h_tol, section, l_e));
    }

    r.K_global = T.transpose() * K_local * T;
    r.f_global = T.transpose() * f_local;
    return r;
}

}  // namespace fiberfrac
