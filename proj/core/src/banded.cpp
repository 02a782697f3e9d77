#include "peierls/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace peierls {

CyclicBanded::CyclicBanded(int n, int r) { reset(n, r); }

void CyclicBanded::reset(int n, int r) {
    n_ = n;
    r_ = r;
    dense_mode_ = n <= std::max(2 * r + 1, 8);
    if (dense_mode_) {
        dense_.setZero(n, n);
    } else {
        lower_.setZero(r + 1, n);
        corner_.setZero(r, r);
    }
}

void CyclicBanded::set_zero() {
    if (dense_mode_)
        dense_.setZero();
    else {
        lower_.setZero();
        corner_.setZero();
    }
}

void CyclicBanded::add(int u, int v, double val) {
    if (dense_mode_) {
        dense_(u, v) += val;
        if (u != v) dense_(v, u) += val;
        return;
    }
    const int lo = std::min(u, v);
    const int hi = std::max(u, v);
    const int d = hi - lo;
    if (d <= r_) {
        lower_(d, lo) += val;
    } else {
        // wrap-around entry: lo < r, hi >= n - r
        corner_(lo, hi - (n_ - r_)) += val;
    }
}

void CyclicBanded::pin_index(int idx) {
    if (dense_mode_) {
        dense_.row(idx).setZero();
        dense_.col(idx).setZero();
        dense_(idx, idx) = 1.0;
        return;
    }
    for (int d = 0; d <= r_; ++d) {
        if (idx + d < n_) lower_(d, idx) = 0.0;
        if (idx - d >= 0) lower_(d, idx - d) = 0.0;
    }
    if (idx < r_) corner_.row(idx).setZero();
    if (idx >= n_ - r_) corner_.col(idx - (n_ - r_)).setZero();
    lower_(0, idx) = 1.0;
}

Eigen::MatrixXd CyclicBanded::to_dense() const {
    if (dense_mode_) return dense_;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int d = 0; d <= r_ && i + d < n_; ++d) {
            a(i + d, i) = lower_(d, i);
            a(i, i + d) = lower_(d, i);
        }
    for (int u = 0; u < r_; ++u)
        for (int b = 0; b < r_; ++b) {
            a(u, n_ - r_ + b) += corner_(u, b);
            a(n_ - r_ + b, u) += corner_(u, b);
        }
    return a;
}

double CyclicBanded::max_abs_diagonal() const {
    if (dense_mode_) return dense_.diagonal().cwiseAbs().maxCoeff();
    return lower_.row(0).cwiseAbs().maxCoeff();
}

bool CyclicBandedSolver::factorize(const CyclicBanded& a, double mu) {
    n_ = a.n_;
    r_ = a.r_;
    dense_mode_ = a.dense_mode_;

    if (dense_mode_) {
        Eigen::MatrixXd m = a.dense_;
        m.diagonal().array() += mu;
        dense_ldlt_.compute(m);
        if (dense_ldlt_.info() != Eigen::Success) return false;
        return (dense_ldlt_.vectorD().array() > 0.0).all();
    }

    const double pivot_floor = 1e-14 * std::max(1.0, a.max_abs_diagonal() + mu);

    // LDL^T of the banded part plus mu on the diagonal.
    fac_ = a.lower_;
    fac_.row(0).array() += mu;
    for (int j = 0; j < n_; ++j) {
        double dj = fac_(0, j);
        const int k0 = std::max(0, j - r_);
        for (int k = k0; k < j; ++k) {
            const double l = fac_(j - k, k);
            dj -= l * l * fac_(0, k);
        }
        if (!(dj > pivot_floor)) return false;
        fac_(0, j) = dj;
        for (int d = 1; d <= r_ && j + d < n_; ++d) {
            const int i = j + d;
            double v = fac_(d, j);
            for (int k = std::max(0, i - r_); k < j; ++k)
                v -= fac_(i - k, k) * fac_(j - k, k) * fac_(0, k);
            fac_(d, j) = v / dj;
        }
    }

    corner_ = a.corner_;
    has_corner_ = corner_.cwiseAbs().maxCoeff() > 0.0;
    if (!has_corner_) return true;

    // Woodbury data: Z = B^{-1} U with U = [e_0..e_{r-1}, e_{n-r}..e_{n-1}].
    z_.resize(n_, 2 * r_);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_);
    for (int c = 0; c < 2 * r_; ++c) {
        const int idx = c < r_ ? c : n_ - r_ + (c - r_);
        rhs.setZero();
        rhs(idx) = 1.0;
        z_.col(c) = solve_banded(rhs);
    }
    // M = U^T Z; capacitance = I + S M with S = [[0, T], [T^T, 0]].
    Eigen::MatrixXd m(2 * r_, 2 * r_);
    m.topRows(r_) = z_.topRows(r_);
    m.bottomRows(r_) = z_.bottomRows(r_);
    Eigen::MatrixXd sm(2 * r_, 2 * r_);
    sm.topRows(r_) = corner_ * m.bottomRows(r_);
    sm.bottomRows(r_) = corner_.transpose() * m.topRows(r_);
    Eigen::MatrixXd cap = Eigen::MatrixXd::Identity(2 * r_, 2 * r_) + sm;
    cap_lu_.compute(cap);
    const Eigen::VectorXd udiag = cap_lu_.matrixLU().diagonal().cwiseAbs();
    return udiag.minCoeff() > 1e-12 * std::max(1.0, udiag.maxCoeff());
}

Eigen::VectorXd CyclicBandedSolver::solve_banded(const Eigen::VectorXd& b) const {
    Eigen::VectorXd x = b;
    // Forward substitution L y = b.
    for (int j = 0; j < n_; ++j) {
        const double xj = x(j);
        for (int d = 1; d <= r_ && j + d < n_; ++d) x(j + d) -= fac_(d, j) * xj;
    }
    // Diagonal scale.
    for (int j = 0; j < n_; ++j) x(j) /= fac_(0, j);
    // Back substitution L^T x = y.
    for (int j = n_ - 1; j >= 0; --j) {
        double xj = x(j);
        for (int d = 1; d <= r_ && j + d < n_; ++d) xj -= fac_(d, j) * x(j + d);
        x(j) = xj;
    }
    return x;
}

Eigen::VectorXd CyclicBandedSolver::solve(const Eigen::VectorXd& b) const {
    if (dense_mode_) return dense_ldlt_.solve(b);
    Eigen::VectorXd y = solve_banded(b);
    if (!has_corner_) return y;
    Eigen::VectorXd t(2 * r_);
    t.head(r_) = y.head(r_);
    t.tail(r_) = y.tail(r_);
    Eigen::VectorXd w(2 * r_);
    w.head(r_) = corner_ * t.tail(r_);
    w.tail(r_) = corner_.transpose() * t.head(r_);
    const Eigen::VectorXd v = cap_lu_.solve(w);
    return y - z_ * v;
}

} // namespace peierls
