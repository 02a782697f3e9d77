#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "peierls/errors.hpp"

namespace peierls {

inline long long floor_div(long long a, long long b) {
    // b > 0
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long mod_floor(long long a, long long b) { return a - floor_div(a, b) * b; }

/// A (p,q)-periodic sequence x : Z -> R stored as one period x_0..x_{p-1}
/// with the extension rule x_{i+p} = x_i + q. Its rotation number is q/p.
class PeriodicConfiguration {
public:
    PeriodicConfiguration(long long p, long long q, std::vector<double> values);

    long long period() const { return p_; }
    long long height() const { return q_; }
    double rotation() const { return static_cast<double>(q_) / static_cast<double>(p_); }

    /// x_i for any integer i, via the periodic extension. Exact in the sense
    /// that get(i + p) == get(i) + q as floating-point identities.
    double get(long long i) const {
        return values_[static_cast<std::size_t>(mod_floor(i, p_))] +
               static_cast<double>(q_ * floor_div(i, p_));
    }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    long long p_;
    long long q_;
    std::vector<double> values_;
};

/// A finite view x_{lo}..x_{hi} of a sequence.
struct Window {
    long long lo = 0;
    long long hi = 0;
    std::vector<double> values;

    Window() = default;
    Window(long long lo_, long long hi_, std::vector<double> v);

    long long length() const { return hi - lo + 1; }
    double at(long long i) const { return values[static_cast<std::size_t>(i - lo)]; }
};

/// Extracts the window x_{lo}..x_{hi} of a periodic configuration.
Window window_of(const PeriodicConfiguration& x, long long lo, long long hi);

enum class OrderRelation {
    Equal,
    StrictLess,    // x_i < y_i everywhere
    WeakLess,      // x <= y and x != y
    LessEq,        // x <= y, strict/weak distinction lost to fuzz ties
    StrictGreater,
    WeakGreater,
    Incomparable   // the configurations cross
};

/// (tau_{k,l} x)_i = x_{i-k} + l. Period and height are preserved.
PeriodicConfiguration translate(const PeriodicConfiguration& x, long long k, long long l);

/// Classifies x against y over their common period lcm(p_x, p_y).
/// Comparisons treat |d| <= fuzz as a tie. Throws PreconditionError when the
/// rotation numbers differ (the configurations are incomparable by crossing).
OrderRelation compare(const PeriodicConfiguration& x, const PeriodicConfiguration& y,
                      double fuzz = 0.0);

/// Maximum crossing violation of x against its translates tau_{k,l} with
/// |k| <= k_max and |l| <= l_max: per translate, the smaller of the largest
/// positive and largest negative part of tau_{k,l}x - x. Zero iff no tested
/// translate crosses x.
double birkhoff_defect(const PeriodicConfiguration& x, long long k_max, long long l_max,
                       double fuzz = 0.0);

/// Defect over the finite certifying family k_max = p,
/// l_max = ceil(|q|/p) * p + 1 (periodicity makes the translate family finite).
double birkhoff_certify(const PeriodicConfiguration& x, double fuzz = 0.0);

/// (x_hi - x_lo) / (hi - lo). For a Birkhoff window the true rotation number
/// lies within 2/(hi - lo) of the estimate.
double rotation_number_estimate(const Window& w);

/// Hull-function samples {(k q/p mod 1, x_k mod 1)} of a Birkhoff
/// (p,q)-periodic configuration with gcd(p,q) = 1, sorted by argument.
/// Throws PreconditionError when birkhoff_certify(x) > fuzz.
std::vector<std::pair<double, double>> hull_function_samples(const PeriodicConfiguration& x,
                                                             double fuzz = 1e-8);

/// True when the (argument, value) circle samples are nondecreasing in circle
/// order, i.e. have at most one cyclic descent.
bool circle_monotone(const std::vector<std::pair<double, double>>& samples);

} // namespace peierls
