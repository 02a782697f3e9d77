#pragma once

#include <string>
#include <utility>
#include <vector>

#include "peierls/errors.hpp"

namespace peierls {

/// A rotation number q/p in lowest terms with p > 0. Note the paper's (p, q)
/// convention: p is the period (denominator), q the height (numerator).
struct Rational {
    long long p = 1;
    long long q = 0;

    Rational() = default;
    Rational(long long p_, long long q_);

    double value() const { return static_cast<double>(q) / static_cast<double>(p); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// A rotation number: exact rational, quadratic irrational (a + b sqrt(c))/d,
/// or a continued fraction with an eventually periodic coefficient list.
class RotationTarget {
public:
    enum class Kind { Rational, Quadratic, ContinuedFraction };

    static RotationTarget rational(long long p, long long q);
    /// (a + b sqrt(c)) / d with c >= 2 square-free, b != 0, d != 0.
    static RotationTarget quadratic(long long a, long long b, long long c, long long d);
    /// [head...; period repeating]. Coefficients after index 0 must be >= 1;
    /// the period must be nonempty (otherwise the value is rational).
    static RotationTarget continued_fraction(std::vector<long long> head,
                                             std::vector<long long> period);
    static RotationTarget golden_mean() { return quadratic(1, 1, 5, 2); }

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::Rational; }
    const Rational& as_rational() const;

    /// Double approximation of omega.
    double value() const;
    /// Certified enclosure [lo, hi] containing omega, width <= 1e-15.
    std::pair<double, double> value_enclosure() const;

    std::string describe() const;

    long long quad_a() const { return a_; }
    long long quad_b() const { return b_; }
    long long quad_c() const { return c_; }
    long long quad_d() const { return d_; }
    const std::vector<long long>& cf_head() const { return head_; }
    const std::vector<long long>& cf_period() const { return period_; }

private:
    RotationTarget() = default;

    Kind kind_ = Kind::Rational;
    Rational rational_{1, 0};
    long long a_ = 0, b_ = 0, c_ = 0, d_ = 1;  // (a + b sqrt(c)) / d
    std::vector<long long> head_, period_;
};

/// A continued-fraction convergent q/p of omega together with |p omega - q|,
/// computed from an exact rational enclosure of omega whose width keeps the
/// error-bound uncertainty below 1e-15 * |p|.
struct Convergent {
    Rational rational;
    double abs_err = 0.0;
};

/// First n convergents of an irrational target, by the standard recurrence
/// h_k = a_k h_{k-1} + h_{k-2} in arbitrary precision. Throws ConfigError for
/// a rational target (use the rational directly) and PreconditionError when a
/// convergent exceeds the 64-bit range.
std::vector<Convergent> convergents(const RotationTarget& omega, int n);

/// Empirical Diophantine pair (gamma, tau = 1): gamma = min over 1 <= p <=
/// p_max of p * dist(p omega, Z). The minimum over all p is attained at
/// convergent denominators, so only those are scanned; the arithmetic is
/// exact rational. For quadratic irrationals tau = 1 is genuine (Liouville).
std::pair<double, double> diophantine_bound(const RotationTarget& omega, long long p_max);

struct HolderPoint {
    double omega_dist = 0.0;    // |Omega - omega|
    double barrier_dist = 0.0;  // |P_Omega - P_omega|
};

struct HolderFit {
    std::vector<HolderPoint> table;
    double slope = 0.0;       // least-squares slope of log dP vs log dOmega
    double residual = 0.0;    // RMS residual of the fit
    bool degenerate = false;  // all barrier differences vanished
};

/// Log-log regression data for the Hoelder exponent: barrier_values[i] is the
/// barrier statistic at convergents[i], the last entry standing in for the
/// limit P_omega. Pairs with zero difference are dropped; fewer than 3 input
/// convergents is an error; an all-zero table is flagged degenerate.
HolderFit holder_exponent_data(const RotationTarget& omega,
                               const std::vector<Convergent>& convergents,
                               const std::vector<double>& barrier_values);

} // namespace peierls
