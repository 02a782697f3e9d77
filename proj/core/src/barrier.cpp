#include "peierls/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace peierls {

namespace {

constexpr double kNegTol = 1e-9;  // barrier values above -1e-9 count as zero

struct ProfileWithBase {
    BarrierProfile profile;
    MinimizerResult base;
};

/// One grid sweep with a fixed option set. Returns the raw minimum before
/// clamping so the caller can decide whether the base minimum was beaten.
ProfileWithBase sweep_profile(const LocalPotential& pot, const Rational& rot, int grid_size,
                              const SolverOptions& opts, double& raw_min) {
    MinimizerResult base = minimize_periodic(pot, rot.p, rot.q, opts);

    BarrierProfile prof;
    prof.rotation = rot;
    prof.unconstrained_action = base.action;
    prof.max_birkhoff_defect = base.birkhoff_defect;
    prof.max_residual = base.residual_norm;
    prof.grid.reserve(static_cast<std::size_t>(grid_size));
    prof.values.reserve(static_cast<std::size_t>(grid_size));

    raw_min = 0.0;
    PeriodicConfiguration warm_cfg = base.configuration;
    bool have_warm = false;
    for (int j = 0; j < grid_size; ++j) {
        const double xi = static_cast<double>(j) / static_cast<double>(grid_size);
        prof.grid.push_back(xi);
        try {
            const MinimizerResult res = minimize_constrained(
                pot, rot.p, rot.q, xi, opts, &base, have_warm ? &warm_cfg : nullptr);
            double v = res.action - base.action;
            raw_min = std::min(raw_min, v);
            if (v < 0.0 && v > -kNegTol) v = 0.0;
            prof.values.push_back(v);
            prof.max_birkhoff_defect = std::max(prof.max_birkhoff_defect, res.birkhoff_defect);
            prof.max_sandwich_violation =
                std::max(prof.max_sandwich_violation, res.sandwich_violation);
            prof.max_residual = std::max(prof.max_residual, res.residual_norm);
            warm_cfg = res.configuration;
            have_warm = true;
        } catch (const SolverError&) {
            prof.values.push_back(std::numeric_limits<double>::quiet_NaN());
            prof.failed.push_back(j);
            prof.partial = true;
        }
    }

    prof.sup = 0.0;
    for (std::size_t j = 0; j < prof.values.size(); ++j) {
        if (std::isnan(prof.values[j])) continue;
        if (prof.values[j] > prof.sup) {
            prof.sup = prof.values[j];
            prof.argmax = prof.grid[j];
        }
    }
    return {std::move(prof), std::move(base)};
}

/// Grid sweep with one densified retry when some barrier value comes out
/// below -1e-9 (meaning a constrained solve beat the unconstrained minimum,
/// so the multi-start sweep missed the global minimizer).
ProfileWithBase profile_with_base(const LocalPotential& pot, const Rational& rot, int grid_size,
                                  const SolverOptions& opts) {
    double raw_min = 0.0;
    ProfileWithBase out = sweep_profile(pot, rot, grid_size, opts, raw_min);
    if (raw_min > -kNegTol) return out;

    SolverOptions dense = opts;
    dense.starts = std::max(4 * opts.starts, 32);
    out = sweep_profile(pot, rot, grid_size, dense, raw_min);
    if (raw_min > -kNegTol) return out;
    throw EvaluationError("barrier negative beyond tolerance at rotation " +
                          std::to_string(rot.q) + "/" + std::to_string(rot.p) +
                          " even after a densified start sweep");
}

double exact_pair_gap(const Rational& a, const Rational& b) {
    // |p_a * (Q/P) - q_a| = |p_a Q - q_a P| / P, exactly in integers.
    const long long num = std::llabs(a.p * b.q - a.q * b.p);
    return static_cast<double>(num) / static_cast<double>(b.p);
}

double sup_abs_difference(const BarrierProfile& x, const BarrierProfile& y) {
    if (x.values.size() != y.values.size())
        throw PreconditionError("profiles must share one grid");
    double s = 0.0;
    for (std::size_t j = 0; j < x.values.size(); ++j) {
        if (std::isnan(x.values[j]) || std::isnan(y.values[j])) continue;
        s = std::max(s, std::abs(x.values[j] - y.values[j]));
    }
    return s;
}

PairEstimate make_pair_estimate(const LocalPotential& pot, const Rational& a, const Rational& b,
                                const BarrierProfile& pa, const BarrierProfile& pb,
                                const MinimizerResult& base_b, double c, double fuzz) {
    PairEstimate est;
    est.a = a;
    est.b = b;
    est.lhs = sup_abs_difference(pa, pb);
    est.rhs = c * (1.0 / static_cast<double>(a.p) + exact_pair_gap(a, b));
    est.slack = est.rhs + 1e-8 - est.lhs;
    est.pass = est.lhs <= est.rhs + 1e-8;

    const NearPeriodicity np =
        near_periodicity_defect(base_b.configuration, a, pot.range(), fuzz);
    est.near_defect = np.defect;
    est.near_bound = np.bound;
    est.near_pass = np.defect <= np.bound + 1e-8;
    return est;
}

} // namespace

double barrier_rational(const LocalPotential& pot, const Rational& rot, double xi,
                        const SolverOptions& opts, const MinimizerResult* base) {
    std::optional<MinimizerResult> owned;
    if (base == nullptr) {
        owned = minimize_periodic(pot, rot.p, rot.q, opts);
        base = &*owned;
    }
    auto attempt = [&](const SolverOptions& o, const MinimizerResult& b) {
        const MinimizerResult res = minimize_constrained(pot, rot.p, rot.q, xi, o, &b);
        return res.action - b.action;
    };
    double v = attempt(opts, *base);
    if (v <= -kNegTol) {
        SolverOptions dense = opts;
        dense.starts = std::max(4 * opts.starts, 32);
        owned = minimize_periodic(pot, rot.p, rot.q, dense);
        v = attempt(dense, *owned);
        if (v <= -kNegTol)
            throw EvaluationError("barrier negative beyond tolerance at xi = " +
                                  std::to_string(xi));
    }
    return v < 0.0 ? 0.0 : v;
}

BarrierProfile barrier_profile(const LocalPotential& pot, const Rational& rot, int grid_size,
                               const SolverOptions& opts) {
    if (grid_size < 2) throw PreconditionError("grid_size must be >= 2");
    return profile_with_base(pot, rot, grid_size, opts).profile;
}

NearPeriodicity near_periodicity_defect(const PeriodicConfiguration& x, const Rational& pq,
                                        int r, double fuzz) {
    const long long bigp = x.period();
    const long long bigq = x.height();
    if (std::gcd(bigp, std::llabs(bigq)) != 1)
        throw PreconditionError("near-periodicity needs gcd(P, Q) = 1");
    if (birkhoff_certify(x, fuzz) > fuzz)
        throw PreconditionError("near-periodicity needs a Birkhoff configuration");

    const long long p = pq.p;
    const long long q = pq.q;
    NearPeriodicity np;
    np.defect = std::numeric_limits<double>::infinity();
    for (long long i0 = -p + 1; i0 <= 0; ++i0) {
        double s = 0.0;
        for (int j = 0; j < r; ++j)
            s += std::abs(x.get(i0 + j + p) - static_cast<double>(q) - x.get(i0 + j));
        if (s < np.defect) {
            np.defect = s;
            np.i0 = i0;
        }
    }
    const double e = 2.0 * static_cast<double>(r) * static_cast<double>(r);
    np.bound = e * (1.0 / static_cast<double>(p) +
                    exact_pair_gap(pq, Rational(bigp, bigq)));
    return np;
}

std::vector<PairEstimate> verify_difference_estimate(
    const LocalPotential& pot, const std::vector<std::pair<Rational, Rational>>& pairs,
    double l_cap, int grid_size, const SolverOptions& opts, double c_scale) {
    const PaperConstants pc = paper_constants(pot, l_cap, 10000, opts.seed);
    const double c = c_scale * pc.c;

    std::map<std::pair<long long, long long>, ProfileWithBase> cache;
    auto get = [&](const Rational& rot) -> const ProfileWithBase& {
        const auto key = std::make_pair(rot.p, rot.q);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, profile_with_base(pot, rot, grid_size, opts)).first;
        return it->second;
    };

    std::vector<PairEstimate> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (std::abs(a.value()) > l_cap || std::abs(b.value()) > l_cap)
            throw PreconditionError("rotation numbers must satisfy |q/p| <= L");
        const ProfileWithBase& pa = get(a);
        const ProfileWithBase& pb = get(b);
        out.push_back(make_pair_estimate(pot, a, b, pa.profile, pb.profile, pb.base, c,
                                         opts.fuzz));
    }
    return out;
}

LimitReport barrier_irrational(const LocalPotential& pot, const RotationTarget& omega,
                               int n_convergents, int grid_size, const SolverOptions& opts,
                               double l_cap) {
    if (omega.is_rational())
        throw PreconditionError("barrier_irrational needs an irrational rotation target");
    if (n_convergents < 3) throw PreconditionError("need at least 3 convergents");

    LimitReport rep;
    rep.convergents = convergents(omega, n_convergents);
    if (l_cap <= 0.0) {
        for (const Convergent& c : rep.convergents)
            l_cap = std::max(l_cap, std::abs(c.rational.value()));
        l_cap = std::max(1.0, std::ceil(l_cap));
    }
    rep.constants = paper_constants(pot, l_cap, 10000, opts.seed);

    std::vector<ProfileWithBase> withbase;
    withbase.reserve(rep.convergents.size());
    for (const Convergent& c : rep.convergents) {
        withbase.push_back(profile_with_base(pot, c.rational, grid_size, opts));
        rep.profiles.push_back(withbase.back().profile);
    }

    rep.cauchy_ok = true;
    for (std::size_t i = 0; i + 1 < rep.convergents.size(); ++i) {
        const Rational& a = rep.convergents[i].rational;
        const Rational& b = rep.convergents[i + 1].rational;
        rep.pairs.push_back(make_pair_estimate(pot, a, b, rep.profiles[i], rep.profiles[i + 1],
                                               withbase[i + 1].base, rep.constants.c,
                                               opts.fuzz));
        const double cb = 3.0 * rep.constants.c / static_cast<double>(a.p);
        rep.cauchy_bounds.push_back(cb);
        if (rep.pairs.back().lhs > cb + 1e-8) rep.cauchy_ok = false;
    }

    rep.extrapolated = rep.profiles.back().values;
    const Convergent& last = rep.convergents.back();
    rep.error_bar =
        rep.constants.c * (1.0 / static_cast<double>(last.rational.p) + last.abs_err);
    return rep;
}

std::vector<std::pair<Rational, Rational>> standard_pair_battery() {
    std::vector<std::pair<Rational, Rational>> pairs;
    // Successive golden-mean convergents 1/1 .. 233/144 (11 pairs).
    const long long fib[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233};
    for (int i = 0; i + 2 <= 12; ++i)
        pairs.emplace_back(Rational(fib[i], fib[i + 1]), Rational(fib[i + 1], fib[i + 2]));
    // Assorted rationals with |q/p| <= 2.
    pairs.emplace_back(Rational(1, 0), Rational(1, 1));
    pairs.emplace_back(Rational(2, 1), Rational(13, 8));
    pairs.emplace_back(Rational(3, 1), Rational(2, 1));
    pairs.emplace_back(Rational(5, 2), Rational(2, 1));
    pairs.emplace_back(Rational(5, 3), Rational(8, 5));
    pairs.emplace_back(Rational(2, -1), Rational(5, -3));
    pairs.emplace_back(Rational(3, 2), Rational(5, 3));
    pairs.emplace_back(Rational(8, 5), Rational(13, 8));
    pairs.emplace_back(Rational(1, 1), Rational(13, 21));
    return pairs;
}

ClassificationResult classify(const LocalPotential& pot, const RotationTarget& rotation,
                              int grid_size, double threshold, const SolverOptions& opts,
                              long long p_cap) {
    if (!(threshold > 0.0)) throw PreconditionError("classification threshold must be positive");

    ClassificationResult res;
    res.threshold = threshold;

    if (rotation.is_rational()) {
        const Rational rot = rotation.as_rational();
        const BarrierProfile prof = barrier_profile(pot, rot, grid_size, opts);
        res.sup_barrier = prof.sup;
        res.error_bar = 0.0;
        res.deepest = rot;
        if (prof.sup < threshold)
            res.verdict = ClassificationResult::Verdict::Foliation;
        else
            res.verdict = ClassificationResult::Verdict::Lamination;
        return res;
    }

    const double l_cap = std::max(1.0, std::ceil(std::abs(rotation.value()))) + 1.0;
    const PaperConstants pc = paper_constants(pot, l_cap, 10000, opts.seed);

    int n = 4;
    std::vector<Convergent> chain = convergents(rotation, n);
    while (chain.back().rational.p <= p_cap && n < 64) chain = convergents(rotation, ++n);

    int foliation_streak = 0;
    for (const Convergent& c : chain) {
        if (c.rational.p > p_cap) break;
        const BarrierProfile prof = barrier_profile(pot, c.rational, grid_size, opts);
        const double bar =
            pc.c * (1.0 / static_cast<double>(c.rational.p) + c.abs_err);
        res.sup_barrier = prof.sup;
        res.error_bar = bar;
        res.deepest = c.rational;

        if (prof.sup - bar > threshold) {
            res.verdict = ClassificationResult::Verdict::Lamination;
            return res;
        }
        // Foliation is declared from the profiles alone: the error bar
        // C(1/|p| + |p omega - q|) cannot drop below the threshold at any
        // affordable depth, while P_{q/p} -> P_omega makes persistently
        // vanishing sups the meaningful zero test.
        if (prof.sup < threshold && c.rational.p >= 34) {
            if (++foliation_streak >= 2) {
                res.verdict = ClassificationResult::Verdict::Foliation;
                return res;
            }
        } else {
            foliation_streak = 0;
        }
    }
    res.verdict = ClassificationResult::Verdict::Inconclusive;
    return res;
}

std::vector<RobustnessRow> robustness_sweep(std::shared_ptr<const LocalPotential> pot,
                                            std::shared_ptr<const LocalPotential> bump,
                                            const std::vector<double>& deltas,
                                            const RotationTarget& omega, int n_convergents,
                                            int grid_size, const SolverOptions& opts) {
    if (!pot || !bump) throw PreconditionError("robustness sweep needs base and bump");

    std::vector<Rational> rotations;
    if (omega.is_rational())
        rotations.push_back(omega.as_rational());
    else
        for (const Convergent& c : convergents(omega, n_convergents))
            rotations.push_back(c.rational);

    std::vector<BarrierProfile> base_profiles;
    base_profiles.reserve(rotations.size());
    for (const Rational& rot : rotations)
        base_profiles.push_back(barrier_profile(*pot, rot, grid_size, opts));

    std::vector<RobustnessRow> rows;
    for (double delta : deltas) {
        const PerturbedPotential perturbed(pot, delta, bump);
        bool cond_ok = true;
        try {
            cond_ok = check_conditions(perturbed, 400, 2.0, opts.seed).passed();
        } catch (const EvaluationError&) {
            cond_ok = false;
        }
        for (std::size_t i = 0; i < rotations.size(); ++i) {
            RobustnessRow row;
            row.delta = delta;
            row.rotation = rotations[i];
            row.bound = 2.0 * static_cast<double>(rotations[i].p) * delta + 1e-8;
            row.condition_ok = cond_ok;
            if (cond_ok) {
                const BarrierProfile pprof =
                    barrier_profile(perturbed, rotations[i], grid_size, opts);
                row.sup_diff = sup_abs_difference(base_profiles[i], pprof);
                row.pass = row.sup_diff <= row.bound;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace peierls
