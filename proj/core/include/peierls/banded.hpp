#pragma once

#include <Eigen/Dense>

namespace peierls {

/// Symmetric n x n matrix that is banded with half-bandwidth r plus a
/// top-right corner block (and its transpose) coupling the first r and last r
/// indices. This is exactly the shape of the Hessian of the periodic action:
/// the corner carries the cyclic wrap-around of the interaction.
///
/// For n <= 2r + 2 the band and corner would overlap; a dense fallback is
/// used instead (period lengths that small are cheap anyway).
class CyclicBanded {
public:
    CyclicBanded() = default;
    CyclicBanded(int n, int r);

    void reset(int n, int r);
    void set_zero();

    int size() const { return n_; }
    int halfband() const { return r_; }
    bool dense_mode() const { return dense_mode_; }

    /// Accumulates A(u,v) += val (and A(v,u) by symmetry for u != v).
    /// u, v must be within cyclic distance r of each other.
    void add(int u, int v, double val);

    /// Zeroes row and column `idx` and puts 1 on its diagonal; used to pin a
    /// coordinate for constrained solves.
    void pin_index(int idx);

    Eigen::MatrixXd to_dense() const;

    double max_abs_diagonal() const;

    const Eigen::MatrixXd& lower() const { return lower_; }
    const Eigen::MatrixXd& corner() const { return corner_; }
    const Eigen::MatrixXd& dense() const { return dense_; }

private:
    int n_ = 0;
    int r_ = 0;
    bool dense_mode_ = false;
    Eigen::MatrixXd lower_;   // (r+1) x n, lower(d, i) = A(i + d, i)
    Eigen::MatrixXd corner_;  // r x r,     corner(a, b) = A(a, n - r + b)
    Eigen::MatrixXd dense_;   // dense fallback storage

    friend class CyclicBandedSolver;
};

/// Factors A + mu I and solves linear systems with it. The banded part is
/// factored by an LDL^T recurrence in O(n r^2); the corner is folded in by a
/// rank-2r Woodbury correction. Factorization reports failure (caller bumps
/// mu) when a pivot or the Woodbury capacitance degenerates.
class CyclicBandedSolver {
public:
    bool factorize(const CyclicBanded& a, double mu);
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

private:
    Eigen::VectorXd solve_banded(const Eigen::VectorXd& b) const;

    int n_ = 0;
    int r_ = 0;
    bool dense_mode_ = false;
    bool has_corner_ = false;
    Eigen::MatrixXd fac_;      // banded LDL^T factors, layout as CyclicBanded::lower_
    Eigen::MatrixXd corner_;
    Eigen::MatrixXd z_;        // B^{-1} U, n x 2r
    Eigen::PartialPivLU<Eigen::MatrixXd> cap_lu_;  // I + S M
    Eigen::LDLT<Eigen::MatrixXd> dense_ldlt_;
};

} // namespace peierls
