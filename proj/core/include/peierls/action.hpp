#pragma once

#include <cstdint>

#include "peierls/banded.hpp"
#include "peierls/lattice.hpp"
#include "peierls/potential.hpp"

namespace peierls {

/// W_{[lo,hi]}(x) = sum_{j=lo..hi} S(x_j, ..., x_{j+r}). The window must cover
/// indices lo..hi+r, i.e. its own [lo, hi] range must extend r past the
/// summation range.
double segment_action(const LocalPotential& pot, const Window& w);

/// W_{p,q}(x) = W_{[0,p-1]}(x) over the periodic extension of x.
/// Accumulated in extended precision; invariant under translates.
double periodic_action(const LocalPotential& pot, const PeriodicConfiguration& x);

/// The recurrence residual R_i(x) = sum_{j=i-r..i} d_{i-j} S(x_j,...,x_{j+r}).
/// Equals dW_{p,q}/dx_i through the periodic extension.
double residual(const LocalPotential& pot, const PeriodicConfiguration& x, long long i);

/// Gradient of W_{p,q} with respect to one period x_0..x_{p-1}; component i is
/// residual(pot, x, i).
Eigen::VectorXd periodic_gradient(const LocalPotential& pot, const PeriodicConfiguration& x);

/// Hessian of W_{p,q}, assembled into the cyclic banded layout (half-bandwidth
/// r with an r x r wrap-around corner).
void periodic_hessian(const LocalPotential& pot, const PeriodicConfiguration& x, CyclicBanded& h);

struct LipschitzEstimate {
    double d = 0.0;            // (r+1) * sampled sup of max_k |d_k S| on X_K
    double sup_partial = 0.0;  // the sampled sup itself
    int samples = 0;
};

/// Samples max_k |d_k S| on X_{K_cap} (segments with steps bounded by K_cap)
/// at quasi-random points and returns D = (r+1) * sup. The raw sampled value;
/// callers wanting a safety margin inflate it themselves (paper_constants
/// does).
LipschitzEstimate lipschitz_constant(const LocalPotential& pot, double k_cap,
                                     int samples = 10000, std::uint64_t seed = 0);

struct PaperConstants {
    double l = 0.0;  // rotation-number cap
    double e = 0.0;  // near-periodicity constant, 2 r^2
    double k = 0.0;  // step cap, L + 2 + 2E
    double d = 0.0;  // Lipschitz constant (inflated 10% over the sampled sup)
    double c = 0.0;  // barrier-difference constant, 2 r D E
    int samples = 0;
};

/// E = 2r^2, K = L + 2 + 2E, D = (r+1) * 1.1 * sampled sup on X_K, C = 2rDE.
/// The 10% inflation compensates sampling undershoot of the sup.
PaperConstants paper_constants(const LocalPotential& pot, double l, int samples = 10000,
                               std::uint64_t seed = 0);

} // namespace peierls
