#include "peierls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <vector>

namespace peierls {

namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr double kMinStep = 1e-14;

struct NewtonOutcome {
    std::vector<double> values;
    double residual_norm = 0.0;
    bool converged = false;
};

double bump_mu(double mu, double scale) { return mu == 0.0 ? 1e-8 * scale : 10.0 * mu; }

/// Damped Newton with Levenberg regularization on W_{p,q}. With pin0 the
/// coordinate x_0 is frozen (its gradient entry and Hessian row/column are
/// masked), which solves the constrained problem exactly.
NewtonOutcome newton_minimize(const LocalPotential& pot, long long p, long long q,
                              std::vector<double> x, bool pin0, const SolverOptions& opts) {
    CyclicBanded h;
    CyclicBandedSolver fac;
    double mu = 0.0;

    auto action_of = [&](const std::vector<double>& v) {
        return periodic_action(pot, PeriodicConfiguration(p, q, v));
    };
    auto gradient_of = [&](const std::vector<double>& v) {
        Eigen::VectorXd g = periodic_gradient(pot, PeriodicConfiguration(p, q, v));
        if (pin0) g(0) = 0.0;
        return g;
    };

    NewtonOutcome out;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        const Eigen::VectorXd g = gradient_of(x);
        const double rn = g.lpNorm<Eigen::Infinity>();
        if (rn <= opts.tol) {
            out.values = std::move(x);
            out.residual_norm = rn;
            out.converged = true;
            return out;
        }

        periodic_hessian(pot, PeriodicConfiguration(p, q, x), h);
        if (pin0) h.pin_index(0);
        const double scale = std::max(1.0, h.max_abs_diagonal());

        Eigen::VectorXd d;
        bool have_direction = false;
        for (int attempt = 0; attempt < 60; ++attempt) {
            if (!fac.factorize(h, mu)) {
                mu = bump_mu(mu, scale);
                continue;
            }
            d = fac.solve(-g);
            if (pin0) d(0) = 0.0;
            if (g.dot(d) < 0.0) {
                have_direction = true;
                break;
            }
            mu = bump_mu(mu, scale);
        }
        if (!have_direction) break;

        const double f0 = action_of(x);
        const double gd = g.dot(d);
        bool accepted = false;
        std::vector<double> xn(x.size());
        for (double t = 1.0; t >= kMinStep; t *= 0.5) {
            for (std::size_t i = 0; i < x.size(); ++i)
                xn[i] = x[i] + t * d(static_cast<Eigen::Index>(i));
            if (action_of(xn) <= f0 + kArmijoC1 * t * gd) {
                accepted = true;
                break;
            }
        }
        if (accepted) {
            x.swap(xn);
            mu *= 0.25;
            if (mu < 1e-14 * scale) mu = 0.0;
        } else {
            mu = bump_mu(mu, scale);
            if (mu > 1e14 * scale) break;
        }
    }

    out.residual_norm = gradient_of(x).lpNorm<Eigen::Infinity>();
    out.converged = out.residual_norm <= opts.tol;
    out.values = std::move(x);
    return out;
}

/// Shifts a configuration by an integer so that x_0 lands in [0, 1).
void normalize_vertical(std::vector<double>& v) {
    const double shift = std::floor(v[0]);
    if (shift != 0.0)
        for (double& vi : v) vi -= shift;
}

void canonicalize(long long& p, long long& q) {
    if (p == 0) throw PreconditionError("period p must be nonzero");
    if (p < 0) {
        p = -p;
        q = -q;
    }
}

/// Deterministic reduction over multi-start results: least action, ties
/// resolved toward the lexicographically smallest configuration.
struct BestPick {
    bool has = false;
    double action = 0.0;
    std::vector<double> values;
    double residual_norm = 0.0;

    void offer(double a, std::vector<double> v, double rn) {
        if (!has) {
            has = true;
            action = a;
            values = std::move(v);
            residual_norm = rn;
            return;
        }
        const double tie = 1e-9 * (1.0 + std::abs(std::min(a, action)));
        if (a < action - tie) {
            action = a;
            values = std::move(v);
            residual_norm = rn;
        } else if (a <= action + tie && v < values) {
            action = std::min(action, a);
            values = std::move(v);
            residual_norm = rn;
        }
    }
};

struct Bracket {
    std::vector<double> lower;
    std::vector<double> upper;
    bool degenerate = false;
};

/// Translates tau_{k,l} x* have 0th coordinate x*_{-k} + l; because the orbit
/// of a Birkhoff minimizer is totally ordered, the two translates whose 0th
/// coordinates bracket xi most tightly bracket it at every index.
Bracket orbit_bracket(const PeriodicConfiguration& xstar, double xi, double fuzz) {
    const long long p = xstar.period();
    double best_low = -std::numeric_limits<double>::infinity();
    double best_up = std::numeric_limits<double>::infinity();
    long long k_low = 0, l_low = 0, k_up = 0, l_up = 0;
    for (long long k = 0; k < p; ++k) {
        const double v = xstar.get(-k);
        const long long lf = static_cast<long long>(std::floor(xi - v));
        const double below = v + static_cast<double>(lf);
        if (below > best_low) {
            best_low = below;
            k_low = k;
            l_low = lf;
        }
        const long long lc = static_cast<long long>(std::ceil(xi - v));
        const double above = v + static_cast<double>(lc);
        if (above < best_up) {
            best_up = above;
            k_up = k;
            l_up = lc;
        }
    }
    Bracket b;
    b.degenerate = best_up - best_low <= fuzz;
    if (b.degenerate && xi - best_low <= best_up - xi) {
        k_up = k_low;
        l_up = l_low;
    } else if (b.degenerate) {
        k_low = k_up;
        l_low = l_up;
    }
    b.lower = translate(xstar, k_low, l_low).values();
    b.upper = translate(xstar, k_up, l_up).values();
    return b;
}

MinimizerResult finish_result(const LocalPotential& pot, long long p, long long q,
                              std::vector<double> values, int starts_used, bool pin0) {
    PeriodicConfiguration cfg(p, q, std::move(values));
    Eigen::VectorXd g = periodic_gradient(pot, cfg);
    if (pin0) g(0) = 0.0;
    // The full certifying translate family costs O(p^2); past p = 1024 a
    // truncated family keeps solves affordable at deep convergents.
    double defect;
    if (p <= 1024) {
        defect = birkhoff_certify(cfg, 0.0);
    } else {
        const long long k_max = 1024;
        const long long l_max = ((std::llabs(q) + p) / p) * k_max + 2;
        defect = birkhoff_defect(cfg, k_max, l_max, 0.0);
    }
    MinimizerResult res{cfg, periodic_action(pot, cfg), g.lpNorm<Eigen::Infinity>(), starts_used,
                        defect, 0.0};
    return res;
}

} // namespace

MinimizerResult minimize_periodic(const LocalPotential& pot, long long p, long long q,
                                  const SolverOptions& opts) {
    canonicalize(p, q);
    const long long g = std::gcd(p, std::llabs(q));
    if (g > 1) {
        std::cerr << "warning: (p, q) = (" << p << ", " << q << ") reduced to (" << p / g << ", "
                  << q / g << "); their minimizers coincide\n";
        p /= g;
        q /= g;
    }

    const int m = std::max(opts.starts, 8);
    const double omega = static_cast<double>(q) / static_cast<double>(p);

    BestPick best;
    std::vector<double> best_fail;
    double best_fail_rn = std::numeric_limits<double>::infinity();

    for (int j = 0; j < m; ++j) {
        const double c = static_cast<double>(j) / static_cast<double>(m);
        std::vector<double> x0(static_cast<std::size_t>(p));
        for (long long i = 0; i < p; ++i)
            x0[static_cast<std::size_t>(i)] = c + omega * static_cast<double>(i);
        NewtonOutcome out = newton_minimize(pot, p, q, std::move(x0), false, opts);
        if (out.converged) {
            normalize_vertical(out.values);
            const double a =
                periodic_action(pot, PeriodicConfiguration(p, q, out.values));
            best.offer(a, std::move(out.values), out.residual_norm);
        } else if (out.residual_norm < best_fail_rn) {
            best_fail_rn = out.residual_norm;
            best_fail = std::move(out.values);
        }
    }

    if (!best.has)
        throw SolverError("no start converged for (p, q) = (" + std::to_string(p) + ", " +
                              std::to_string(q) + ")",
                          PeriodicConfiguration(p, q, std::move(best_fail)), best_fail_rn);

    return finish_result(pot, p, q, std::move(best.values), m, false);
}

MinimizerResult minimize_constrained(const LocalPotential& pot, long long p, long long q,
                                     double xi, const SolverOptions& opts,
                                     const MinimizerResult* unconstrained,
                                     const PeriodicConfiguration* warm) {
    canonicalize(p, q);
    if (std::gcd(p, std::llabs(q)) != 1)
        throw PreconditionError("constrained minimization requires gcd(p, q) = 1");

    std::optional<MinimizerResult> owned;
    if (unconstrained == nullptr) {
        owned = minimize_periodic(pot, p, q, opts);
        unconstrained = &*owned;
    }
    const Bracket bracket = orbit_bracket(unconstrained->configuration, xi, opts.fuzz);

    std::vector<std::vector<double>> starts;
    if (warm != nullptr && warm->period() == p) {
        std::vector<double> w = warm->values();
        const double shift = xi - w[0];
        for (double& wi : w) wi += shift;
        starts.push_back(std::move(w));
        if (p > 1) {
            std::vector<double> w2 = warm->values();
            w2[0] = xi;
            starts.push_back(std::move(w2));
        }
    }
    {
        std::vector<double> lin(static_cast<std::size_t>(p));
        const double omega = static_cast<double>(q) / static_cast<double>(p);
        for (long long i = 0; i < p; ++i)
            lin[static_cast<std::size_t>(i)] = xi + omega * static_cast<double>(i);
        starts.push_back(std::move(lin));
    }
    {
        std::vector<double> lo = bracket.lower, hi = bracket.upper;
        const double span = hi[0] - lo[0];
        if (span > opts.fuzz) {
            // Ordered interpolation between the neighbor pair hits xi at
            // index 0 and stays inside the bracket.
            const double t = (xi - lo[0]) / span;
            std::vector<double> mid(static_cast<std::size_t>(p));
            for (long long i = 0; i < p; ++i) {
                const std::size_t s = static_cast<std::size_t>(i);
                mid[s] = lo[s] + t * (hi[s] - lo[s]);
            }
            mid[0] = xi;  // the interpolation can land one ulp off
            starts.push_back(std::move(mid));
        }
        lo[0] = xi;
        hi[0] = xi;
        starts.push_back(std::move(lo));
        if (p > 1) starts.push_back(std::move(hi));
    }

    auto viol_of = [&](const std::vector<double>& v) {
        double viol = 0.0;
        for (long long i = 0; i < p; ++i) {
            const std::size_t s = static_cast<std::size_t>(i);
            viol = std::max(viol, bracket.lower[s] - v[s]);
            viol = std::max(viol, v[s] - bracket.upper[s]);
        }
        return std::max(0.0, viol);
    };

    // Near-degenerate local minima can tie in action while only one of them
    // is sandwiched by the neighbor pair (the true constrained minimizer
    // always is, by the crossing argument). Collect every converged
    // candidate and pick: sandwiched first, then least action, then
    // lexicographically smallest.
    struct Candidate {
        double action;
        double viol;
        double rn;
        std::vector<double> values;
    };
    std::vector<Candidate> cands;
    std::vector<double> best_fail;
    double best_fail_rn = std::numeric_limits<double>::infinity();
    for (auto& s : starts) {
        NewtonOutcome out = newton_minimize(pot, p, q, std::move(s), true, opts);
        if (out.converged) {
            const double a = periodic_action(pot, PeriodicConfiguration(p, q, out.values));
            cands.push_back({a, viol_of(out.values), out.residual_norm, std::move(out.values)});
        } else if (out.residual_norm < best_fail_rn) {
            best_fail_rn = out.residual_norm;
            best_fail = std::move(out.values);
        }
    }
    if (cands.empty())
        throw SolverError("no constrained start converged at xi = " + std::to_string(xi),
                          PeriodicConfiguration(p, q, std::move(best_fail)), best_fail_rn);

    double amin = cands.front().action;
    for (const Candidate& c : cands) amin = std::min(amin, c.action);
    const double tie = 1e-9 * (1.0 + std::abs(amin));

    auto pick = [&]() -> const Candidate* {
        const Candidate* best = nullptr;
        for (const Candidate& c : cands) {
            if (c.action > amin + tie) continue;
            if (best == nullptr) {
                best = &c;
                continue;
            }
            const bool cs = c.viol <= opts.fuzz, bs = best->viol <= opts.fuzz;
            if (cs != bs) {
                if (cs) best = &c;
                continue;
            }
            if (c.action < best->action - tie ||
                (c.action <= best->action + tie && c.values < best->values))
                best = &c;
        }
        return best;
    };

    const Candidate* chosen = pick();
    if (chosen->viol > opts.fuzz) {
        // The minimum was found outside the bracket: clamp it in and
        // re-polish. The cutting argument guarantees an interior minimizer
        // of no larger action.
        std::vector<double> cl = chosen->values;
        for (long long i = 0; i < p; ++i) {
            const std::size_t s = static_cast<std::size_t>(i);
            cl[s] = std::clamp(cl[s], bracket.lower[s], bracket.upper[s]);
        }
        cl[0] = xi;
        NewtonOutcome out = newton_minimize(pot, p, q, std::move(cl), true, opts);
        if (out.converged) {
            const double a = periodic_action(pot, PeriodicConfiguration(p, q, out.values));
            if (a <= amin + tie) {
                cands.push_back(
                    {a, viol_of(out.values), out.residual_norm, std::move(out.values)});
                amin = std::min(amin, a);
                chosen = pick();
            }
        }
    }

    MinimizerResult res = finish_result(pot, p, q, std::vector<double>(chosen->values),
                                        static_cast<int>(starts.size()), true);
    res.sandwich_violation = chosen->viol;
    return res;
}

NeighborPair neighbor_pair(const LocalPotential& pot, long long p, long long q, double xi,
                           const SolverOptions& opts, const MinimizerResult* unconstrained) {
    canonicalize(p, q);
    if (std::gcd(p, std::llabs(q)) != 1)
        throw PreconditionError("neighbor pairs require gcd(p, q) = 1");

    std::optional<MinimizerResult> owned;
    if (unconstrained == nullptr) {
        owned = minimize_periodic(pot, p, q, opts);
        unconstrained = &*owned;
    }
    Bracket b = orbit_bracket(unconstrained->configuration, xi, opts.fuzz);

    NeighborPair pair{
        finish_result(pot, p, q, std::move(b.lower), unconstrained->starts_used, false),
        finish_result(pot, p, q, std::move(b.upper), unconstrained->starts_used, false), 0.0,
        b.degenerate};
    double gap = 0.0;
    for (long long j = 1; j <= p; ++j)
        gap += std::abs(pair.upper.configuration.get(j) - pair.lower.configuration.get(j));
    pair.gap_l1 = gap;
    return pair;
}

std::pair<PeriodicConfiguration, PeriodicConfiguration>
minmax_combine(const PeriodicConfiguration& x, const PeriodicConfiguration& y) {
    if (x.period() != y.period() || x.height() != y.height())
        throw PreconditionError("min-max combination requires identical (p, q)");
    const long long p = x.period();
    std::vector<double> mn(static_cast<std::size_t>(p)), mx(static_cast<std::size_t>(p));
    for (long long i = 0; i < p; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        mn[s] = std::min(x.values()[s], y.values()[s]);
        mx[s] = std::max(x.values()[s], y.values()[s]);
    }
    return {PeriodicConfiguration(p, x.height(), std::move(mn)),
            PeriodicConfiguration(p, x.height(), std::move(mx))};
}

} // namespace peierls
