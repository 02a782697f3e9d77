#include "peierls/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace peierls {

PeriodicConfiguration::PeriodicConfiguration(long long p, long long q, std::vector<double> values)
    : p_(p), q_(q), values_(std::move(values)) {
    if (p_ == 0) throw PreconditionError("period p must be nonzero");
    if (p_ < 0) {
        // X_{p,q} = X_{-p,-q}; canonicalize to positive period.
        p_ = -p_;
        q_ = -q_;
    }
    if (static_cast<long long>(values_.size()) != p_)
        throw PreconditionError("values must hold exactly one period of length |p|");
}

Window::Window(long long lo_, long long hi_, std::vector<double> v)
    : lo(lo_), hi(hi_), values(std::move(v)) {
    if (length() < 1) throw PreconditionError("window length must be >= 1");
    if (static_cast<long long>(values.size()) != length())
        throw PreconditionError("window values do not match its index range");
}

Window window_of(const PeriodicConfiguration& x, long long lo, long long hi) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long long i = lo; i <= hi; ++i) v.push_back(x.get(i));
    return Window(lo, hi, std::move(v));
}

PeriodicConfiguration translate(const PeriodicConfiguration& x, long long k, long long l) {
    const long long p = x.period();
    std::vector<double> v(static_cast<std::size_t>(p));
    for (long long i = 0; i < p; ++i)
        v[static_cast<std::size_t>(i)] = x.get(i - k) + static_cast<double>(l);
    return PeriodicConfiguration(p, x.height(), std::move(v));
}

OrderRelation compare(const PeriodicConfiguration& x, const PeriodicConfiguration& y, double fuzz) {
    if (x.height() * y.period() != y.height() * x.period())
        throw PreconditionError("configurations with different rotation numbers are incomparable");
    const long long period = std::lcm(x.period(), y.period());

    bool any_less = false, any_greater = false, any_tie = false;
    for (long long i = 0; i < period; ++i) {
        const double d = y.get(i) - x.get(i);
        if (d > fuzz)
            any_less = true; // x_i < y_i
        else if (d < -fuzz)
            any_greater = true;
        else
            any_tie = true;
    }
    if (any_less && any_greater) return OrderRelation::Incomparable;
    if (!any_less && !any_greater) return OrderRelation::Equal;
    if (any_greater) return any_tie ? OrderRelation::WeakGreater : OrderRelation::StrictGreater;
    return any_tie ? OrderRelation::WeakLess : OrderRelation::StrictLess;
}

namespace {

/// Largest violation over integer l in [-l_max, l_max] for a fixed k, given
/// dmin <= x_{i-k} - x_i <= dmax over one period. The translate tau_{k,l}
/// crosses x iff dmin + l < 0 < dmax + l; the violation
/// min(dmax + l, -(dmin + l)) is a concave piecewise-linear function of l,
/// so only the integers adjacent to the real maximizer matter.
double worst_violation_over_l(double dmin, double dmax, long long l_max, double fuzz) {
    const double l_star = -0.5 * (dmin + dmax);
    double worst = 0.0;
    for (long long l : {static_cast<long long>(std::floor(l_star)),
                        static_cast<long long>(std::ceil(l_star))}) {
        l = std::clamp(l, -l_max, l_max);
        const double pos = dmax + static_cast<double>(l);
        const double neg = -(dmin + static_cast<double>(l));
        const double v = std::min(pos, neg);
        if (v > fuzz) worst = std::max(worst, v);
    }
    return worst;
}

} // namespace

double birkhoff_defect(const PeriodicConfiguration& x, long long k_max, long long l_max,
                       double fuzz) {
    if (k_max < 1 || l_max < 1) throw PreconditionError("k_max and l_max must be >= 1");
    const long long p = x.period();
    double defect = 0.0;
    for (long long k = -k_max; k <= k_max; ++k) {
        double dmin = std::numeric_limits<double>::infinity();
        double dmax = -std::numeric_limits<double>::infinity();
        for (long long i = 0; i < p; ++i) {
            const double d = x.get(i - k) - x.get(i);
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        defect = std::max(defect, worst_violation_over_l(dmin, dmax, l_max, fuzz));
    }
    return defect;
}

double birkhoff_certify(const PeriodicConfiguration& x, double fuzz) {
    const long long p = x.period();
    const long long q = std::llabs(x.height());
    const long long l_max = ((q + p - 1) / p) * p + 1;
    return birkhoff_defect(x, p, l_max, fuzz);
}

double rotation_number_estimate(const Window& w) {
    if (w.length() < 2) throw PreconditionError("rotation estimate needs a window of length >= 2");
    return (w.at(w.hi) - w.at(w.lo)) / static_cast<double>(w.hi - w.lo);
}

std::vector<std::pair<double, double>> hull_function_samples(const PeriodicConfiguration& x,
                                                             double fuzz) {
    const long long p = x.period();
    const long long q = x.height();
    if (std::gcd(p, std::llabs(q)) != 1)
        throw PreconditionError("hull samples require gcd(p, q) = 1");
    if (birkhoff_certify(x, fuzz) > fuzz)
        throw PreconditionError("hull samples require a Birkhoff configuration");

    auto frac = [](double t) {
        double f = t - std::floor(t);
        if (f >= 1.0) f = 0.0;
        return f;
    };

    std::vector<std::pair<double, double>> samples;
    samples.reserve(static_cast<std::size_t>(p));
    for (long long k = 0; k < p; ++k) {
        const double arg = frac(static_cast<double>(k) * static_cast<double>(q) /
                                static_cast<double>(p));
        const double val = frac(x.get(k));
        samples.emplace_back(arg, val);
    }
    std::sort(samples.begin(), samples.end());
    return samples;
}

bool circle_monotone(const std::vector<std::pair<double, double>>& samples) {
    const std::size_t n = samples.size();
    if (n < 3) return true;
    int descents = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = samples[i].second;
        const double b = samples[(i + 1) % n].second;
        if (b < a - 1e-12) ++descents;
    }
    return descents <= 1;
}

} // namespace peierls
