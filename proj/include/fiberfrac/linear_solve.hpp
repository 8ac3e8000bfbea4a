#pragma once

#include <vector>

#include <Eigen/Sparse>

namespace fiberfrac {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct LinearSolveInfo {
    /// Negative entries of D in K = L D L^T (the inertia of K); -1 after an LU fallback.
    int negative_pivots = 0;
    bool lu_fallback = false;
    double residual_ratio = 0.0;  ///< ||K x - b|| / ||b||
};

/**
 * @brief Direct solver for symmetric, possibly indefinite, sparse systems.
 *
 * Factorizes with a fill-reducing LDL^T that does not need positive
 * definiteness and reuses the symbolic analysis while the sparsity pattern
 * stays the same. Falls back to sparse LU when a pivot vanishes or the LDL^T
 * solution misses 1e-10 relative accuracy.
 */
class SymmetricSparseSolver {
public:
    /// @throws SingularMatrix carrying the row index of the offending pivot.
    Eigen::VectorXd solve(const SparseMatrix& K, const Eigen::VectorXd& rhs);

    const LinearSolveInfo& info() const { return info_; }

private:
    bool same_pattern(const SparseMatrix& K) const;

    Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
    std::vector<SparseMatrix::StorageIndex> outer_;
    std::vector<SparseMatrix::StorageIndex> inner_;
    LinearSolveInfo info_;
};

/// One-shot convenience wrapper around SymmetricSparseSolver.
Eigen::VectorXd linear_solve(const SparseMatrix& K, const Eigen::VectorXd& rhs,
                             LinearSolveInfo* info = nullptr);

}  // namespace fiberfrac
