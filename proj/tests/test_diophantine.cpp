#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "peierls/diophantine.hpp"

using namespace peierls;

TEST_CASE("rationals reduce to lowest terms with positive period") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-3, 1) == Rational(3, -1));
    CHECK(Rational(5, 0).q == 0);
    CHECK(Rational(5, 0).p == 1);
    CHECK_THROWS_AS(Rational(0, 1), PreconditionError);
}

TEST_CASE("golden mean convergents follow the Fibonacci recurrence exactly") {
    // omega = (1 + sqrt 5) / 2: convergents F_{n+2} / F_{n+1} and
    // |p_n omega - q_n| = omega^{-(n+1)}, an exact identity of the recurrence.
    const RotationTarget omega = RotationTarget::golden_mean();
    const auto convs = convergents(omega, 12);
    REQUIRE(convs.size() == 12);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    long long f1 = 1, f2 = 1;  // p_n = F_{n+1}, q_n = F_{n+2}
    for (std::size_t n = 0; n < convs.size(); ++n) {
        const long long f3 = f1 + f2;
        CHECK(convs[n].rational.p == f1);
        CHECK(convs[n].rational.q == f2);
        CHECK(convs[n].abs_err ==
              doctest::Approx(std::pow(phi, -static_cast<double>(n + 1))).epsilon(1e-12));
        f1 = f2;
        f2 = f3;
    }
}

TEST_CASE("sqrt(2) convergents match the known list") {
    const RotationTarget omega = RotationTarget::quadratic(0, 1, 2, 1);
    const auto convs = convergents(omega, 5);
    const long long p[] = {1, 2, 5, 12, 29};
    const long long q[] = {1, 3, 7, 17, 41};
    for (int i = 0; i < 5; ++i) {
        CHECK(convs[i].rational.p == p[i]);
        CHECK(convs[i].rational.q == q[i]);
        CHECK(convs[i].abs_err ==
              doctest::Approx(std::abs(p[i] * std::sqrt(2.0) - q[i])).epsilon(1e-10));
    }
}

TEST_CASE("explicit continued fractions agree with the quadratic form") {
    // [1; 2, 2, 2, ...] = sqrt 2 and [1; 1, 1, ...] = golden mean.
    const auto cf_sqrt2 = RotationTarget::continued_fraction({1}, {2});
    CHECK(cf_sqrt2.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const auto cf_phi = RotationTarget::continued_fraction({}, {1});
    CHECK(cf_phi.value() == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));

    const auto a = convergents(cf_sqrt2, 8);
    const auto b = convergents(RotationTarget::quadratic(0, 1, 2, 1), 8);
    for (int i = 0; i < 8; ++i) CHECK(a[i].rational == b[i].rational);
}

TEST_CASE("value enclosures are tight and contain the double value") {
    for (const RotationTarget& t :
         {RotationTarget::golden_mean(), RotationTarget::quadratic(0, 1, 2, 1),
          RotationTarget::continued_fraction({0, 1}, {1, 2})}) {
        const auto [lo, hi] = t.value_enclosure();
        CHECK(hi - lo <= 1e-15);
        CHECK(lo <= t.value());
        CHECK(t.value() <= hi);
    }
}

TEST_CASE("convergents are best approximations (exhaustive check)") {
    // For every convergent q/p with p <= 500, no smaller p' does better:
    // min_j |p' omega - j| > |p omega - q| for all 1 <= p' < p.
    const RotationTarget omega = RotationTarget::quadratic(0, 1, 3, 1);  // sqrt 3
    const double w = std::sqrt(3.0);
    const auto convs = convergents(omega, 12);
    for (const Convergent& c : convs) {
        const long long p = c.rational.p;
        if (p > 500) break;
        CHECK(std::gcd(std::llabs(c.rational.q), p) == 1);
        const double err = std::abs(static_cast<double>(p) * w - static_cast<double>(c.rational.q));
        CHECK(err == doctest::Approx(c.abs_err).epsilon(1e-9));
        for (long long m = 1; m < p; ++m) {
            const double t = static_cast<double>(m) * w;
            const double dist = std::abs(t - std::round(t));
            CHECK(dist > err);
        }
    }
}

TEST_CASE("convergent errors obey the classical two-sided bounds") {
    // 1 / (p_{n+1} + p_n) < |p_n omega - q_n| < 1 / p_{n+1}.
    const RotationTarget omega = RotationTarget::quadratic(1, 1, 7, 3);
    const auto convs = convergents(omega, 10);
    for (std::size_t n = 0; n + 1 < convs.size(); ++n) {
        const double pn = static_cast<double>(convs[n].rational.p);
        const double pn1 = static_cast<double>(convs[n + 1].rational.p);
        CHECK(convs[n].abs_err > 1.0 / (pn + pn1) - 1e-15);
        CHECK(convs[n].abs_err < 1.0 / pn1 + 1e-15);
    }
}

TEST_CASE("rational targets are rejected by convergents") {
    CHECK_THROWS_AS(convergents(RotationTarget::rational(3, 2), 4), ConfigError);
    CHECK(RotationTarget::rational(3, 2).as_rational() == Rational(3, 2));
    CHECK_THROWS_AS(RotationTarget::golden_mean().as_rational(), PreconditionError);
}

TEST_CASE("diophantine bound of the golden mean") {
    // gamma = min_p p * dist(p omega, Z) = dist(omega, Z) = 2 - omega
    // = 0.3819..., attained already at p = 1 (the worst-approximable number).
    const auto [gamma, tau] = diophantine_bound(RotationTarget::golden_mean(), 100000);
    CHECK(tau == 1.0);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(gamma == doctest::Approx(2.0 - phi).epsilon(1e-9));
    // Liouville lower bound for a quadratic irrational: gamma > 0.
    CHECK(gamma > 0.1);
}

TEST_CASE("diophantine bound decreases with p_max and is monotone exact") {
    const RotationTarget omega = RotationTarget::quadratic(0, 1, 2, 1);
    const double g1 = diophantine_bound(omega, 10).first;
    const double g2 = diophantine_bound(omega, 100000).first;
    CHECK(g2 <= g1 + 1e-15);
    // Oracle at small p_max: direct scan.
    double best = 1e300;
    for (long long p = 1; p <= 10; ++p) {
        const double t = static_cast<double>(p) * std::sqrt(2.0);
        best = std::min(best, static_cast<double>(p) * std::abs(t - std::round(t)));
    }
    CHECK(g1 == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("holder regression recovers a synthetic exponent of one half") {
    const RotationTarget omega = RotationTarget::golden_mean();
    const auto convs = convergents(omega, 10);
    std::vector<double> barrier(convs.size());
    for (std::size_t i = 0; i < convs.size(); ++i) {
        const double dist = std::abs(convs[i].rational.value() - omega.value());
        barrier[i] = std::sqrt(dist);
    }
    barrier.back() = 0.0;  // stands in for the limit value
    const HolderFit fit = holder_exponent_data(omega, convs, barrier);
    CHECK_FALSE(fit.degenerate);
    CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("holder regression flags degenerate all-zero data") {
    const RotationTarget omega = RotationTarget::golden_mean();
    const auto convs = convergents(omega, 5);
    const std::vector<double> zeros(convs.size(), 0.0);
    CHECK(holder_exponent_data(omega, convs, zeros).degenerate);
    CHECK_THROWS_AS(holder_exponent_data(omega, {convs[0], convs[1]}, {0.0, 0.0}),
                    PreconditionError);
}

TEST_CASE("quadratic constructor validates its arguments") {
    CHECK_THROWS_AS(RotationTarget::quadratic(1, 1, 4, 2), ConfigError);   // 4 not square-free
    CHECK_THROWS_AS(RotationTarget::quadratic(1, 0, 5, 2), ConfigError);   // rational
    CHECK_THROWS_AS(RotationTarget::quadratic(1, 1, 5, 0), ConfigError);   // zero denominator
    CHECK_THROWS_AS(RotationTarget::continued_fraction({1}, {}), ConfigError);
    CHECK_THROWS_AS(RotationTarget::continued_fraction({1, 0}, {2}), ConfigError);
}
