#include <doctest.h>

#include <cmath>
#include <vector>

#include "peierls/lattice.hpp"

using namespace peierls;

TEST_CASE("periodic extension is exact") {
    const PeriodicConfiguration x(3, 2, {0.1, 0.9, 1.4});
    CHECK(x.get(0) == 0.1);
    CHECK(x.get(3) == x.get(0) + 2.0);
    CHECK(x.get(-3) == x.get(0) - 2.0);
    CHECK(x.get(7) == x.get(1) + 4.0);
    CHECK(x.get(-5) == x.get(1) - 4.0);
    CHECK(x.rotation() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("translate composes index shift and vertical shift") {
    const PeriodicConfiguration x(3, 1, {0.0, 0.4, 0.7});
    const PeriodicConfiguration y = translate(x, 2, 5);
    for (long long i = -4; i <= 8; ++i) CHECK(y.get(i) == doctest::Approx(x.get(i - 2) + 5.0));
    CHECK(y.period() == 3);
    CHECK(y.height() == 1);
}

TEST_CASE("compare classifies order relations over the common period") {
    const PeriodicConfiguration x(2, 1, {0.0, 0.5});
    CHECK(compare(x, x) == OrderRelation::Equal);
    CHECK(compare(x, translate(x, 0, 1)) == OrderRelation::StrictLess);
    CHECK(compare(translate(x, 0, 1), x) == OrderRelation::StrictGreater);

    // One equal coordinate, the other strictly larger: weak order.
    const PeriodicConfiguration y(2, 1, {0.0, 0.7});
    CHECK(compare(x, y) == OrderRelation::WeakLess);
    CHECK(compare(y, x) == OrderRelation::WeakGreater);

    // Crossing configurations.
    const PeriodicConfiguration z(2, 1, {-0.1, 0.7});
    CHECK(compare(x, z) == OrderRelation::Incomparable);

    // Different rotation numbers always cross eventually.
    const PeriodicConfiguration w(2, 0, {0.0, 0.5});
    CHECK_THROWS_AS(compare(x, w), PreconditionError);

    // Same rotation number, different periods: compared over the lcm.
    const PeriodicConfiguration x2(4, 2, {0.0, 0.5, 1.0, 1.5});
    CHECK(compare(x, x2) == OrderRelation::Equal);
}

TEST_CASE("birkhoff defect vanishes exactly for linear configurations") {
    // x_i = i q / p + c is Birkhoff for any (p, q): translates never cross.
    for (auto [p, q] : {std::pair<long long, long long>{5, 3}, {7, -2}, {4, 0}, {1, 1}}) {
        std::vector<double> v(static_cast<std::size_t>(p));
        for (long long i = 0; i < p; ++i)
            v[static_cast<std::size_t>(i)] = 0.3 + static_cast<double>(q * i) / static_cast<double>(p);
        const PeriodicConfiguration x(p, q, v);
        CHECK(birkhoff_certify(x) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("birkhoff defect detects a crossing") {
    // Oracle: x = (0, 0.9, 0.1, ...) with rotation 1/3 crosses tau_{1,0} x.
    // tau_{1,0}x - x at i = 0,1,2 is (x_{-1}-x_0, x_0-x_1, x_1-x_2)
    // = (-0.9+1, -0.9, 0.8): mixed signs, crossing of size min(0.8, 0.9).
    const PeriodicConfiguration x(3, 1, {0.0, 0.9, 0.1});
    const double defect = birkhoff_certify(x);
    CHECK(defect >= 0.8 - 1e-12);
}

TEST_CASE("rotation number estimate converges at rate 2/(hi - lo)") {
    const PeriodicConfiguration x(5, 3, {0.0, 0.6, 1.2, 1.8, 2.4});
    const Window w = window_of(x, -50, 50);
    CHECK(std::abs(rotation_number_estimate(w) - 0.6) <= 2.0 / 100.0);
}

TEST_CASE("hull samples of a Birkhoff configuration are circle monotone") {
    std::vector<double> v(5);
    for (int i = 0; i < 5; ++i) v[i] = 0.11 + 3.0 * i / 5.0;
    const PeriodicConfiguration x(5, 3, v);
    const auto samples = hull_function_samples(x);
    CHECK(samples.size() == 5);
    CHECK(circle_monotone(samples));
    // Sorted by argument.
    for (std::size_t i = 1; i < samples.size(); ++i)
        CHECK(samples[i - 1].first <= samples[i].first);
}

TEST_CASE("hull sampling refuses non-Birkhoff input") {
    const PeriodicConfiguration x(3, 1, {0.0, 0.9, 0.1});
    CHECK_THROWS_AS(hull_function_samples(x), PreconditionError);
}

TEST_CASE("circle monotone allows exactly one cyclic descent") {
    CHECK(circle_monotone({{0.0, 0.7}, {0.3, 0.9}, {0.6, 0.1}, {0.9, 0.4}}));
    CHECK_FALSE(circle_monotone({{0.0, 0.7}, {0.3, 0.1}, {0.6, 0.9}, {0.9, 0.2}}));
}

TEST_CASE("floor arithmetic helpers") {
    CHECK(floor_div(7, 3) == 2);
    CHECK(floor_div(-7, 3) == -3);
    CHECK(floor_div(-6, 3) == -2);
    CHECK(mod_floor(-7, 3) == 2);
    CHECK(mod_floor(7, 3) == 1);
    CHECK(mod_floor(-6, 3) == 0);
}
