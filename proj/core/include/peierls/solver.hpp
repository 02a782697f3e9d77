#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "peierls/action.hpp"
#include "peierls/lattice.hpp"
#include "peierls/potential.hpp"

namespace peierls {

struct SolverOptions {
    double tol = 1e-10;      // sup-norm residual target
    int max_iters = 500;     // Newton iterations per start
    int starts = 8;          // lower bound on multi-start grid size
    double fuzz = 1e-8;      // comparison fuzz for ordering/certification
    std::uint64_t seed = 0;  // quasi-random sampler offset
};

struct MinimizerResult {
    PeriodicConfiguration configuration;
    double action = 0.0;
    double residual_norm = 0.0;     // sup-norm of the gradient; index 0 excluded
                                    // for constrained solves
    int starts_used = 0;
    double birkhoff_defect = 0.0;   // from birkhoff_certify
    double sandwich_violation = 0.0;  // constrained solves: overshoot past the
                                      // neighbor pair, 0 when sandwiched
};

/// Thrown when no start converges; carries the best iterate seen.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, PeriodicConfiguration best, double residual_norm)
        : std::runtime_error(msg), best_(std::move(best)), residual_norm_(residual_norm) {}

    const PeriodicConfiguration& best_iterate() const { return best_; }
    double residual_norm() const { return residual_norm_; }

private:
    PeriodicConfiguration best_;
    double residual_norm_;
};

struct NeighborPair {
    MinimizerResult lower;
    MinimizerResult upper;
    double gap_l1 = 0.0;     // sum_{j=1..p} |upper_j - lower_j|
    bool degenerate = false; // xi hit a minimizer's orbit; lower == upper
};

/// Global minimizer of W_{p,q} over X_{p,q}, found by damped Newton with
/// Levenberg regularization from a multi-start grid of linear configurations
/// x_i = c + i q/p. Non-reduced (p, q) is reduced first (the minimizers
/// coincide). The result is normalized to x_0 in [0,1); among equal-action
/// minima the lexicographically smallest configuration is kept.
MinimizerResult minimize_periodic(const LocalPotential& pot, long long p, long long q,
                                  const SolverOptions& opts = {});

/// Minimizer of W_{p,q} over {x in X_{p,q} : x_0 = xi}. Requires gcd(p,q)=1.
/// The constraint is enforced exactly by pinning coordinate 0.
/// `unconstrained` (if given) supplies the neighbor-pair bracket and extra
/// starts; `warm` seeds the search, which makes grid sweeps over xi cheap.
/// The result's sandwich_violation reports how far it escapes the bracket.
MinimizerResult minimize_constrained(const LocalPotential& pot, long long p, long long q,
                                     double xi, const SolverOptions& opts = {},
                                     const MinimizerResult* unconstrained = nullptr,
                                     const PeriodicConfiguration* warm = nullptr);

/// Adjacent minimizers below/above xi at index 0, obtained by translating one
/// global minimizer through its tau_{k,l} orbit (the orbit is totally ordered,
/// so the two translates bracketing xi at index 0 bracket it everywhere).
NeighborPair neighbor_pair(const LocalPotential& pot, long long p, long long q, double xi,
                           const SolverOptions& opts = {},
                           const MinimizerResult* unconstrained = nullptr);

/// Pointwise minimum and maximum of two configurations with the same (p, q).
std::pair<PeriodicConfiguration, PeriodicConfiguration>
minmax_combine(const PeriodicConfiguration& x, const PeriodicConfiguration& y);

} // namespace peierls
