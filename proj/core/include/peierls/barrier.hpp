#pragma once

#include <memory>
#include <vector>

#include "peierls/diophantine.hpp"
#include "peierls/solver.hpp"

namespace peierls {

/// The periodic Peierls barrier P_{q/p} sampled on a uniform xi grid in
/// [0, 1), together with solver health statistics for the grid sweep.
struct BarrierProfile {
    Rational rotation;
    std::vector<double> grid;
    std::vector<double> values;  // P(xi) >= 0; NaN at failed grid points
    double sup = 0.0;
    double argmax = 0.0;
    double unconstrained_action = 0.0;

    double max_birkhoff_defect = 0.0;
    double max_sandwich_violation = 0.0;
    double max_residual = 0.0;
    bool partial = false;          // some grid points failed to converge
    std::vector<int> failed;       // their indices
};

/// One instance of the fundamental barrier-difference estimate for a pair of
/// rationals (q/p, Q/P): lhs = sup_xi |P_{Q/P} - P_{q/p}| on a shared grid,
/// rhs = C (1/|p| + |p Q/P - q|), plus the near-periodicity premise of the
/// (P, Q)-minimizer measured against (p, q).
struct PairEstimate {
    Rational a;  // (p, q)
    Rational b;  // (P, Q)
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = false;

    double near_defect = 0.0;
    double near_bound = 0.0;
    bool near_pass = false;
};

struct NearPeriodicity {
    double defect = 0.0;
    long long i0 = 0;      // minimizing window start in (-|p|, 0]
    double bound = 0.0;    // E (1/|p| + |p Q/P - q|), E = 2 r^2
};

/// Barrier limit along continued-fraction convergents of an irrational
/// rotation number, with the Cauchy-type difference bounds per pair.
struct LimitReport {
    std::vector<Convergent> convergents;
    std::vector<BarrierProfile> profiles;
    std::vector<PairEstimate> pairs;        // successive convergent pairs
    std::vector<double> cauchy_bounds;      // 3 C / |p| per pair
    bool cauchy_ok = false;

    PaperConstants constants;
    std::vector<double> extrapolated;       // last convergent profile
    double error_bar = 0.0;                 // C (1/|p| + |p omega - q|)
};

struct ClassificationResult {
    enum class Verdict { Foliation, Lamination, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    double sup_barrier = 0.0;  // at the deepest evaluated rotation
    double error_bar = 0.0;    // 0 for rational rotation numbers
    double threshold = 0.0;
    Rational deepest;          // rotation number of the deciding profile
};

struct RobustnessRow {
    double delta = 0.0;
    Rational rotation;
    double sup_diff = 0.0;  // sup_xi |P^delta - P| on the shared grid
    double bound = 0.0;     // 2 |P| delta + 1e-8
    bool pass = false;
    bool condition_ok = true;  // perturbed potential passed check_conditions
};

/// P_{q/p}(xi): constrained minus unconstrained minimum of W_{p,q}.
/// Values in (-1e-9, 0) are clamped to zero; anything lower triggers one
/// retry with a denser multi-start sweep and is a hard error after that.
/// `base` may carry a precomputed unconstrained minimizer.
double barrier_rational(const LocalPotential& pot, const Rational& rot, double xi,
                        const SolverOptions& opts = {}, const MinimizerResult* base = nullptr);

/// P_{q/p} on the uniform grid xi_j = j / grid_size, warm-starting each
/// constrained solve from its neighbor. Failed points are recorded and the
/// profile marked partial instead of aborting the sweep.
BarrierProfile barrier_profile(const LocalPotential& pot, const Rational& rot, int grid_size,
                               const SolverOptions& opts = {});

/// Convergent-by-convergent approximation of P_omega with the fundamental
/// estimate verified on each successive pair. `l_cap` is the rotation-number
/// cap L entering the constants; pass 0 to derive it from the convergents.
LimitReport barrier_irrational(const LocalPotential& pot, const RotationTarget& omega,
                               int n_convergents, int grid_size, const SolverOptions& opts = {},
                               double l_cap = 0.0);

/// Near-periodicity of a Birkhoff-certified (P, Q)-minimizer against a
/// coarser rational (p, q): the best translate window of length r satisfies
/// sum |x_{j+p} - q - x_j| <= 2 r^2 (1/|p| + |p Q/P - q|).
NearPeriodicity near_periodicity_defect(const PeriodicConfiguration& x, const Rational& pq,
                                        int r, double fuzz = 1e-8);

/// The fundamental estimate over an explicit battery of rational pairs, with
/// constants from paper_constants(pot, l_cap). c_scale rescales C (negative
/// controls use c_scale < 1). Profiles are cached per rational.
std::vector<PairEstimate> verify_difference_estimate(const LocalPotential& pot,
                                                     const std::vector<std::pair<Rational, Rational>>& pairs,
                                                     double l_cap, int grid_size,
                                                     const SolverOptions& opts = {},
                                                     double c_scale = 1.0);

/// The standard battery of 20 rational pairs for the fundamental estimate:
/// the successive golden-mean convergent pairs up to 233/144 plus assorted
/// small rationals, all with |q/p| <= 2 and |p| <= 233.
std::vector<std::pair<Rational, Rational>> standard_pair_battery();

/// Foliation / lamination verdict. Rational rotation numbers compare the
/// profile sup against the threshold directly. Irrational ones walk down the
/// convergent chain: lamination once sup - C(1/|p| + |p omega - q|) clears
/// the threshold, foliation once the sup itself stays below the threshold at
/// two consecutive convergents with |p| >= 34, inconclusive past p_cap.
ClassificationResult classify(const LocalPotential& pot, const RotationTarget& rotation,
                              int grid_size, double threshold = 1e-6,
                              const SolverOptions& opts = {}, long long p_cap = 5000);

/// Barrier robustness under S -> S + delta * bump at each tested rotation
/// (the convergents of omega, or omega itself when rational): asserts the
/// rational-case bound sup_xi |P^delta - P| <= 2 |P| delta + 1e-8. Rows whose
/// perturbed potential fails check_conditions are flagged and skipped.
std::vector<RobustnessRow> robustness_sweep(std::shared_ptr<const LocalPotential> pot,
                                            std::shared_ptr<const LocalPotential> bump,
                                            const std::vector<double>& deltas,
                                            const RotationTarget& omega, int n_convergents,
                                            int grid_size, const SolverOptions& opts = {});

} // namespace peierls
