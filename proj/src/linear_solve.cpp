#include "fiberfrac/linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>

#include "fiberfrac/errors.hpp"

namespace fiberfrac {

namespace {

constexpr double kPivotTol = 1e-14;
constexpr double kResidualTol = 1e-10;

double residual_ratio(const SparseMatrix& K, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
    const double bn = b.norm();
    const double rn = (K * x - b).norm();
    return bn > 0.0 ? rn / bn : rn;
}

}  // namespace

bool SymmetricSparseSolver::same_pattern(const SparseMatrix& K) const {
    if (!K.isCompressed() || outer_.size() != static_cast<std::size_t>(K.outerSize() + 1) ||
        inner_.size() != static_cast<std::size_t>(K.nonZeros())) {
        return false;
    }
    return std::equal(outer_.begin(), outer_.end(), K.outerIndexPtr()) &&
           std::equal(inner_.begin(), inner_.end(), K.innerIndexPtr());
}

Eigen::VectorXd SymmetricSparseSolver::solve(const SparseMatrix& K, const Eigen::VectorXd& rhs) {
    info_ = {};
    if (K.rows() == 0) {
        return Eigen::VectorXd(0);
    }
    if (!same_pattern(K)) {
        ldlt_.analyzePattern(K);
        outer_.assign(K.outerIndexPtr(), K.outerIndexPtr() + K.outerSize() + 1);
        inner_.assign(K.innerIndexPtr(), K.innerIndexPtr() + K.nonZeros());
    }
    ldlt_.factorize(K);

    bool ldlt_ok = ldlt_.info() == Eigen::Success;
    Eigen::Index weak_pivot = -1;
    if (!ldlt_ok && ldlt_.vectorD().size() == K.rows()) {
        // factorization stops at the first exactly vanishing pivot
        const Eigen::VectorXd& D = ldlt_.vectorD();
        for (Eigen::Index k = 0; k < D.size(); ++k) {
            if (D(k) == 0.0) {
                weak_pivot = k;
                break;
            }
        }
    }
    if (ldlt_ok) {
        const Eigen::VectorXd D = ldlt_.vectorD();
        const double scale = D.cwiseAbs().maxCoeff();
        D.cwiseAbs().minCoeff(&weak_pivot);
        if (!(std::abs(D(weak_pivot)) >= kPivotTol * scale)) {
            ldlt_ok = false;
        } else {
            weak_pivot = -1;
            info_.negative_pivots = static_cast<int>((D.array() < 0.0).count());
        }
    }

    Eigen::VectorXd x;
    if (ldlt_ok) {
        x = ldlt_.solve(rhs);
        info_.residual_ratio = residual_ratio(K, x, rhs);
        if (std::isfinite(info_.residual_ratio) && info_.residual_ratio <= kResidualTol) {
            return x;
        }
    }

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success) {
        long dof = -1;
        if (weak_pivot >= 0) {
            dof = ldlt_.permutationPinv().indices()(weak_pivot);
        }
        std::ostringstream os;
        os << "stiffness matrix is singular";
        if (dof >= 0) os << " (vanishing pivot at free DOF " << dof << ")";
        throw SingularMatrix(os.str(), dof);
    }
    Eigen::VectorXd x_lu = lu.solve(rhs);
    const double lu_ratio = residual_ratio(K, x_lu, rhs);
    if (x.size() == 0 || lu_ratio < info_.residual_ratio || !std::isfinite(info_.residual_ratio)) {
        info_.lu_fallback = true;
        info_.negative_pivots = -1;
        info_.residual_ratio = lu_ratio;
        return x_lu;
    }
    return x;
}

Eigen::VectorXd linear_solve(const SparseMatrix& K, const Eigen::VectorXd& rhs,
                             LinearSolveInfo* info) {
    SymmetricSparseSolver solver;
    Eigen::VectorXd x = solver.solve(K, rhs);
    if (info) *info = solver.info();
    return x;
}

}  // namespace fiberfrac
