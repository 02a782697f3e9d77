#include "peierls/action.hpp"

#include <cmath>
#include <vector>

#include "peierls/sampling.hpp"

namespace peierls {

double segment_action(const LocalPotential& pot, const Window& w) {
    const int r = pot.range();
    if (w.hi - r < w.lo)
        throw PreconditionError("segment window must cover at least r + 1 indices");
    long double acc = 0.0L;
    std::vector<double> loc(static_cast<std::size_t>(r) + 1);
    for (long long j = w.lo; j <= w.hi - r; ++j) {
        for (int a = 0; a <= r; ++a) loc[static_cast<std::size_t>(a)] = w.at(j + a);
        acc += pot.value(loc);
    }
    return static_cast<double>(acc);
}

double periodic_action(const LocalPotential& pot, const PeriodicConfiguration& x) {
    const int r = pot.range();
    const long long p = x.period();
    long double acc = 0.0L;
    std::vector<double> loc(static_cast<std::size_t>(r) + 1);
    for (long long j = 0; j < p; ++j) {
        for (int a = 0; a <= r; ++a) loc[static_cast<std::size_t>(a)] = x.get(j + a);
        acc += pot.value(loc);
    }
    return static_cast<double>(acc);
}

double residual(const LocalPotential& pot, const PeriodicConfiguration& x, long long i) {
    const int r = pot.range();
    std::vector<double> loc(static_cast<std::size_t>(r) + 1);
    std::vector<double> g(static_cast<std::size_t>(r) + 1);
    double s = 0.0;
    for (long long j = i - r; j <= i; ++j) {
        for (int a = 0; a <= r; ++a) loc[static_cast<std::size_t>(a)] = x.get(j + a);
        pot.gradient(loc, g);
        s += g[static_cast<std::size_t>(i - j)];
    }
    return s;
}

Eigen::VectorXd periodic_gradient(const LocalPotential& pot, const PeriodicConfiguration& x) {
    const int r = pot.range();
    const long long p = x.period();
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(p);
    std::vector<double> loc(static_cast<std::size_t>(r) + 1);
    std::vector<double> g(static_cast<std::size_t>(r) + 1);
    for (long long j = 0; j < p; ++j) {
        for (int a = 0; a <= r; ++a) loc[static_cast<std::size_t>(a)] = x.get(j + a);
        pot.gradient(loc, g);
        for (int a = 0; a <= r; ++a) grad(mod_floor(j + a, p)) += g[static_cast<std::size_t>(a)];
    }
    return grad;
}

void periodic_hessian(const LocalPotential& pot, const PeriodicConfiguration& x, CyclicBanded& h) {
    const int r = pot.range();
    const long long p = x.period();
    h.reset(static_cast<int>(p), r);
    std::vector<double> loc(static_cast<std::size_t>(r) + 1);
    Eigen::MatrixXd hl;
    for (long long j = 0; j < p; ++j) {
        for (int a = 0; a <= r; ++a) loc[static_cast<std::size_t>(a)] = x.get(j + a);
        pot.hessian(loc, hl);
        for (int a = 0; a <= r; ++a)
            for (int b = a; b <= r; ++b) {
                const int u = static_cast<int>(mod_floor(j + a, p));
                const int v = static_cast<int>(mod_floor(j + b, p));
                double val = hl(a, b);
                // Indices that collide mod p pick up both symmetric copies.
                if (a != b && u == v) val *= 2.0;
                h.add(u, v, val);
            }
    }
}

LipschitzEstimate lipschitz_constant(const LocalPotential& pot, double k_cap, int samples,
                                     std::uint64_t seed) {
    if (!(k_cap > 0.0)) throw PreconditionError("K_cap must be positive");
    if (samples < 1) throw PreconditionError("sample count must be >= 1");
    const int r = pot.range();
    const int n = r + 1;

    HaltonSampler sampler(n, seed);
    std::vector<double> u(static_cast<std::size_t>(n));
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> g(static_cast<std::size_t>(n));

    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
        sampler.next(u.data());
        // A point of X_K: x_0 in [0,1) by periodicity, steps in [-K, K].
        x[0] = u[0];
        for (int i = 1; i < n; ++i)
            x[static_cast<std::size_t>(i)] =
                x[static_cast<std::size_t>(i - 1)] + k_cap * (2.0 * u[static_cast<std::size_t>(i)] - 1.0);
        pot.gradient(x, g);
        for (int i = 0; i < n; ++i) sup = std::max(sup, std::abs(g[static_cast<std::size_t>(i)]));
    }

    LipschitzEstimate est;
    est.sup_partial = sup;
    est.d = static_cast<double>(n) * sup;
    est.samples = samples;
    return est;
}

PaperConstants paper_constants(const LocalPotential& pot, double l, int samples,
                               std::uint64_t seed) {
    if (!(l > 0.0)) throw PreconditionError("rotation-number cap L must be positive");
    const double r = static_cast<double>(pot.range());
    PaperConstants pc;
    pc.l = l;
    pc.e = 2.0 * r * r;
    pc.k = l + 2.0 + 2.0 * pc.e;
    const LipschitzEstimate lip = lipschitz_constant(pot, pc.k, samples, seed);
    // Sampling undershoots the sup; a 10% inflation restores a safe constant.
    pc.d = 1.1 * lip.d;
    pc.c = 2.0 * r * pc.d * pc.e;
    pc.samples = lip.samples;
    return pc;
}

} // namespace peierls
