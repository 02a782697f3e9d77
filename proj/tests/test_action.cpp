#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "peierls/action.hpp"
#include "peierls/potential.hpp"

using namespace peierls;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("periodic action of a p = 1 FK configuration has a closed form") {
    // W_{1,q}(xi) = sum_k a_k q^2 k^2 / 2 + V(xi).
    const auto pot = make_fk({1.5, 0.25}, {4.0});
    const CosineSeries v({4.0});
    for (long long q : {0LL, 1LL, -2LL}) {
        for (double xi : {0.0, 0.21, 0.5, 0.87}) {
            const PeriodicConfiguration x(1, q, {xi});
            const double expect =
                0.75 * static_cast<double>(q * q) + 0.125 * static_cast<double>(4 * q * q) + v.v(xi);
            CHECK(periodic_action(*pot, x) == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("twist action closed forms") {
    const TwistGeneratingFunction pot(1.3);
    // S(0, 1) = 1/2 - K / 4 pi^2.
    const PeriodicConfiguration x(1, 1, {0.0});
    CHECK(periodic_action(pot, x) ==
          doctest::Approx(0.5 - 1.3 / (4.0 * kPi * kPi)).epsilon(1e-14));

    // Linear configuration x_j = j q / p: each term is (q/p)^2/2 - K/4pi^2 cos(2 pi j q / p).
    const long long p = 5, q = 2;
    std::vector<double> v(5);
    for (int j = 0; j < 5; ++j) v[j] = static_cast<double>(j) * 0.4;
    const PeriodicConfiguration lin(p, q, v);
    double expect = 0.0;
    for (int j = 0; j < 5; ++j)
        expect += 0.5 * 0.16 - 1.3 / (4.0 * kPi * kPi) * std::cos(2.0 * kPi * v[j]);
    CHECK(periodic_action(pot, lin) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("periodic action is invariant under translates") {
    const auto pot = make_fk({1.0, 0.5}, {3.0, 1.0});
    const PeriodicConfiguration x(4, 3, {0.1, 0.95, 1.6, 2.3});
    const double w = periodic_action(*pot, x);
    for (long long k : {1LL, 2LL, -3LL})
        for (long long l : {0LL, 1LL, -2LL})
            CHECK(periodic_action(*pot, translate(x, k, l)) == doctest::Approx(w).epsilon(1e-12));
}

TEST_CASE("segment action equals the sum of potential evaluations") {
    const TwistGeneratingFunction pot(2.0);
    const std::vector<double> v{0.1, 0.5, 0.7, 1.2};
    const Window w(0, 3, v);  // summation over j = 0..2, window extends r = 1 past
    double expect = 0.0;
    for (int j = 0; j < 3; ++j) {
        const std::vector<double> seg{v[j], v[j + 1]};
        expect += pot.value(seg);
    }
    CHECK(segment_action(pot, w) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("gradient matches central differences of the action") {
    const auto pot = make_fk({1.0, 0.3}, {2.5});
    const PeriodicConfiguration x(5, 2, {0.05, 0.5, 0.9, 1.3, 1.7});
    const Eigen::VectorXd g = periodic_gradient(*pot, x);
    const double h = 1e-6;
    for (int i = 0; i < 5; ++i) {
        PeriodicConfiguration xp = x, xm = x;
        xp.values()[i] += h;
        xm.values()[i] -= h;
        const double fd = (periodic_action(*pot, xp) - periodic_action(*pot, xm)) / (2.0 * h);
        CHECK(g(i) == doctest::Approx(fd).epsilon(1e-5));
        CHECK(residual(*pot, x, i) == doctest::Approx(g(i)).epsilon(1e-13));
    }
}

TEST_CASE("FK residual reproduces the discrete recurrence") {
    // dW/dx_i = sum_k a_k (2 x_i - x_{i-k} - x_{i+k}) + V'(x_i).
    const auto pot = make_fk({2.0, 0.5}, {3.0});
    const CosineSeries v({3.0});
    const PeriodicConfiguration x(4, 1, {0.02, 0.3, 0.55, 0.8});
    for (long long i = 0; i < 4; ++i) {
        const double expect = 2.0 * (2.0 * x.get(i) - x.get(i - 1) - x.get(i + 1)) +
                              0.5 * (2.0 * x.get(i) - x.get(i - 2) - x.get(i + 2)) +
                              v.dv(x.get(i));
        CHECK(residual(*pot, x, i) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("hessian matches central differences of the gradient") {
    const auto pot = make_fk({1.0, 0.4}, {2.0, 0.5});
    const PeriodicConfiguration x(6, 1, {0.0, 0.2, 0.35, 0.5, 0.7, 0.9});
    CyclicBanded hess;
    periodic_hessian(*pot, x, hess);
    const Eigen::MatrixXd hd = hess.to_dense();
    const double h = 1e-6;
    for (int j = 0; j < 6; ++j) {
        PeriodicConfiguration xp = x, xm = x;
        xp.values()[j] += h;
        xm.values()[j] -= h;
        const Eigen::VectorXd fd =
            (periodic_gradient(*pot, xp) - periodic_gradient(*pot, xm)) / (2.0 * h);
        for (int i = 0; i < 6; ++i)
            CHECK(hd(i, j) == doctest::Approx(fd(i)).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("hessian handles periods shorter than the interaction range") {
    const auto pot = make_fk({1.0, 0.4}, {2.0});
    const PeriodicConfiguration x(2, 1, {0.1, 0.55});
    CyclicBanded hess;
    periodic_hessian(*pot, x, hess);
    const Eigen::MatrixXd hd = hess.to_dense();
    const double h = 1e-6;
    for (int j = 0; j < 2; ++j) {
        PeriodicConfiguration xp = x, xm = x;
        xp.values()[j] += h;
        xm.values()[j] -= h;
        const Eigen::VectorXd fd =
            (periodic_gradient(*pot, xp) - periodic_gradient(*pot, xm)) / (2.0 * h);
        for (int i = 0; i < 2; ++i)
            CHECK(hd(i, j) == doctest::Approx(fd(i)).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("lipschitz constant of the free FK chain is exact") {
    // S = (x_1 - x_0)^2 / 2: max |d_k S| on X_K is K, so D = (r+1) K = 2 K.
    const auto pot = make_fk({1.0}, {0.0});
    const LipschitzEstimate est = lipschitz_constant(*pot, 2.0, 20000, 1);
    CHECK(est.d == doctest::Approx(4.0).epsilon(0.02));
    CHECK(est.sup_partial == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("lipschitz constant of the standard twist map") {
    // max |d_0 S| = K_cap + kick / 2 pi, attained at a full step; D = 2 * that.
    const TwistGeneratingFunction pot(1.0);
    const LipschitzEstimate est = lipschitz_constant(pot, 3.0, 20000, 1);
    CHECK(est.d == doctest::Approx(2.0 * (3.0 + 1.0 / (2.0 * kPi))).epsilon(0.05));
}

TEST_CASE("paper constants assemble as documented") {
    const TwistGeneratingFunction pot(1.0);
    const double l = 2.0;
    const LipschitzEstimate raw = lipschitz_constant(pot, l + 2.0 + 4.0, 10000, 0);
    const PaperConstants pc = paper_constants(pot, l, 10000, 0);
    CHECK(pc.e == 2.0);                                   // 2 r^2, r = 1
    CHECK(pc.k == doctest::Approx(l + 2.0 + 4.0));        // L + 2 + 2E
    CHECK(pc.d == doctest::Approx(1.1 * raw.d).epsilon(1e-12));
    CHECK(pc.c == doctest::Approx(2.0 * 1.0 * pc.d * pc.e).epsilon(1e-12));
}
