#pragma once

#include <array>
#include <random>

#include <Eigen/Dense>

#include "fiberfrac/beam_core.hpp"
#include "fiberfrac/model.hpp"

namespace testing_support {

/// Six rigid-body modes of an element lying on the x axis from 0 to l.
inline std::array<fiberfrac::Vector12, 6> rigid_modes_local(double l) {
    std::array<fiberfrac::Vector12, 6> modes;
    const Eigen::Vector3d c(0.5 * l, 0.0, 0.0);
    const std::array<Eigen::Vector3d, 2> x{Eigen::Vector3d::Zero(), Eigen::Vector3d(l, 0.0, 0.0)};
    for (int k = 0; k < 3; ++k) {
        fiberfrac::Vector12 t = fiberfrac::Vector12::Zero();
        t(k) = 1.0;
        t(6 + k) = 1.0;
        modes[k] = t;

        const Eigen::Vector3d axis = Eigen::Vector3d::Unit(k);
        fiberfrac::Vector12 r = fiberfrac::Vector12::Zero();
        for (int a = 0; a < 2; ++a) {
            r.segment<3>(6 * a) = axis.cross(x[a] - c);
            r.segment<3>(6 * a + 3) = axis;
        }
        modes[3 + k] = r;
    }
    return modes;
}

/// Rigid modes of the whole model in global DOFs (about the origin).
inline std::array<Eigen::VectorXd, 6> rigid_modes_global(const fiberfrac::NetworkModel& model) {
    std::array<Eigen::VectorXd, 6> modes;
    const int n = static_cast<int>(model.nodes.size());
    for (int k = 0; k < 3; ++k) {
        Eigen::VectorXd t = Eigen::VectorXd::Zero(6 * n);
        Eigen::VectorXd r = Eigen::VectorXd::Zero(6 * n);
        const Eigen::Vector3d axis = Eigen::Vector3d::Unit(k);
        for (int i = 0; i < n; ++i) {
            t(6 * i + k) = 1.0;
            r.segment<3>(6 * i) = axis.cross(model.nodes[i]);
            r.segment<3>(6 * i + 3) = axis;
        }
        modes[k] = t;
        modes[3 + k] = r;
    }
    return modes;
}

/// Uniformly distributed proper rotation.
inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
    q.normalize();
    return q.toRotationMatrix();
}

}  // namespace testing_support
