#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "peierls/potential.hpp"

using namespace peierls;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("cosine series matches the closed form for one harmonic") {
    // V(x) = lambda / (2 pi)^2 (1 - cos 2 pi x), oracle evaluated directly.
    const CosineSeries v({3.5});
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.93, 1.0, -0.25, 7.3}) {
        const double w = 2.0 * kPi;
        CHECK(v.v(x) == doctest::Approx(3.5 / (w * w) * (1.0 - std::cos(w * x))).epsilon(1e-14));
        CHECK(v.dv(x) == doctest::Approx(3.5 / w * std::sin(w * x)).epsilon(1e-13));
        CHECK(v.ddv(x) == doctest::Approx(3.5 * std::cos(w * x)).epsilon(1e-13));
    }
}

TEST_CASE("cosine series is 1-periodic, nonnegative, zero at integers") {
    const CosineSeries v({1.0, 0.5, 0.25});
    CHECK(v.v(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v.v(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    for (int i = 0; i <= 40; ++i) {
        const double x = i / 40.0;
        CHECK(v.v(x) >= -1e-15);
        CHECK(v.v(x + 1.0) == doctest::Approx(v.v(x)).epsilon(1e-12));
    }
}

TEST_CASE("FK value matches a hand-computed sum") {
    // S(x) = sum_k a_k/2 (x_k - x_0)^2 + V(x_0) with a = (2, 0.5), lambda = 4.
    const auto pot = make_fk({2.0, 0.5}, {4.0});
    const std::vector<double> x{0.2, 0.9, 1.3};
    const CosineSeries v({4.0});
    const double expect =
        1.0 * (0.9 - 0.2) * (0.9 - 0.2) + 0.25 * (1.3 - 0.2) * (1.3 - 0.2) + v.v(0.2);
    CHECK(pot->value(x) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(pot->range() == 2);
}

TEST_CASE("twist generating function closed form") {
    const TwistGeneratingFunction pot(1.7);
    const std::vector<double> x{0.3, 0.8};
    const double expect = 0.5 * 0.25 - 1.7 / (4.0 * kPi * kPi) * std::cos(2.0 * kPi * 0.3);
    CHECK(pot.value(x) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("analytic gradients and hessians agree with the finite-difference base") {
    // The base class supplies central differences; every analytic override
    // must agree with it to FD accuracy.
    struct NumericWrapper final : LocalPotential {
        const LocalPotential& inner;
        explicit NumericWrapper(const LocalPotential& p) : LocalPotential(p.range()), inner(p) {}
        double value(std::span<const double> x) const override { return inner.value(x); }
    };

    const auto fk = make_fk({1.0, 0.3}, {2.0, 1.0});
    const TwistGeneratingFunction tw(2.0);
    const OnsitePotential on(CosineSeries({3.0}), 1);
    const LocalPotential* pots[] = {fk.get(), &tw, &on};
    for (const LocalPotential* pot : pots) {
        const NumericWrapper num(*pot);
        const int n = pot->range() + 1;
        std::vector<double> x(n), ga(n), gn(n);
        for (int i = 0; i < n; ++i) x[i] = 0.17 + 0.31 * i;
        pot->gradient(x, ga);
        num.gradient(x, gn);
        for (int i = 0; i < n; ++i) CHECK(ga[i] == doctest::Approx(gn[i]).epsilon(1e-6));

        Eigen::MatrixXd ha(n, n), hn(n, n);
        pot->hessian(x, ha);
        num.hessian(x, hn);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(ha(i, j) == doctest::Approx(hn(i, j)).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("condition checks pass for valid models and flag invalid ones") {
    const auto fk = make_fk({1.0}, {4.0});
    const ConditionReport good = check_conditions(*fk, 500, 3.0, 1);
    CHECK(good.passed());
    CHECK(good.periodicity_defect <= 1e-9);
    CHECK(good.max_offdiagonal <= 1e-9);
    CHECK(good.max_twist_entry < 0.0);

    // A pure on-site potential has no coupling: the twist condition fails.
    const OnsitePotential bump(CosineSeries({1.0}), 1);
    const ConditionReport bad = check_conditions(bump, 200, 3.0, 1);
    CHECK_FALSE(bad.twist_ok);
    CHECK_FALSE(bad.passed());

    // But base + delta * bump keeps the twist for small delta.
    const PerturbedPotential mix(fk, 1e-3,
                                 std::make_shared<OnsitePotential>(CosineSeries({1.0}), 1));
    CHECK(check_conditions(mix, 200, 3.0, 1).passed());
}

TEST_CASE("FK factory rejects couplings violating monotonicity") {
    CHECK_THROWS_AS(make_fk({0.0}, {1.0}), ConfigError);
    CHECK_THROWS_AS(make_fk({1.0, -0.5}, {1.0}), ConfigError);
    CHECK_THROWS_AS(make_fk({}, {1.0}), ConfigError);
}

TEST_CASE("perturbed potential is an exact affine combination") {
    const auto base = make_fk({1.0}, {4.0});
    const auto bump = std::make_shared<OnsitePotential>(CosineSeries({2.0}), 1);
    const PerturbedPotential mix(base, 0.125, bump);
    const std::vector<double> x{0.4, 1.1};
    CHECK(mix.value(x) ==
          doctest::Approx(base->value(x) + 0.125 * bump->value(x)).epsilon(1e-15));
}
