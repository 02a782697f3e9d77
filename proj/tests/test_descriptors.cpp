#include <doctest.h>

#include <cmath>
#include <vector>

#include "peierls/descriptors.hpp"

using namespace peierls;

TEST_CASE("model descriptors build the declared potentials") {
    const auto fk = model_from_json(R"({"type":"frenkel_kontorova","a":[1.0,0.5],"lambda":[4.0]})");
    CHECK(fk->range() == 2);
    const std::vector<double> x{0.1, 0.4, 0.9};
    CHECK(fk->value(x) > 0.0);

    const auto tw = model_from_json(R"({"type":"twist_standard","K":1.5})");
    CHECK(tw->range() == 1);

    const auto on = model_from_json(R"({"type":"onsite_cosine","lambda":[1.0],"range":2})");
    CHECK(on->range() == 2);

    const auto pert = model_from_json(
        R"({"type":"perturbed","base":{"type":"twist_standard","K":1.0},
            "delta":0.01,"bump":{"type":"onsite_cosine","lambda":[2.0]}})");
    CHECK(pert->range() == 1);
    const std::vector<double> y{0.2, 0.6};
    const auto base = model_from_json(R"({"type":"twist_standard","K":1.0})");
    const auto bump = model_from_json(R"({"type":"onsite_cosine","lambda":[2.0]})");
    CHECK(pert->value(y) ==
          doctest::Approx(base->value(y) + 0.01 * bump->value(y)).epsilon(1e-15));
}

TEST_CASE("schema violations are config errors") {
    CHECK_THROWS_AS(model_from_json("not json at all"), ConfigError);
    CHECK_THROWS_AS(model_from_json(R"({"type":"unknown_model"})"), ConfigError);
    CHECK_THROWS_AS(model_from_json(R"({"type":"twist_standard"})"), ConfigError);
    CHECK_THROWS_AS(model_from_json(R"({"type":"twist_standard","K":"big"})"), ConfigError);
    // Unknown keys are rejected, not ignored.
    CHECK_THROWS_AS(model_from_json(R"({"type":"twist_standard","K":1.0,"zzz":3})"), ConfigError);
    CHECK_THROWS_AS(model_from_json(R"({"type":"frenkel_kontorova","a":[0.0],"lambda":[1.0]})"),
                    ConfigError);
}

TEST_CASE("rotation descriptors cover all three kinds") {
    const RotationTarget rat = rotation_from_json(R"({"kind":"rational","p":5,"q":3})");
    CHECK(rat.is_rational());
    CHECK(rat.as_rational() == Rational(5, 3));

    const RotationTarget quad =
        rotation_from_json(R"({"kind":"quadratic","num":[1,1,5],"den":2})");
    CHECK(quad.value() == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));

    const RotationTarget cf = rotation_from_json(R"({"kind":"cf","head":[1],"period":[2]})");
    CHECK(cf.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(rotation_from_json(R"({"kind":"quadratic","num":[1,1],"den":2})"), ConfigError);
    CHECK_THROWS_AS(rotation_from_json(R"({"kind":"rational","p":5})"), ConfigError);
    CHECK_THROWS_AS(rotation_from_json(R"({"kind":"cf","period":[]})"), ConfigError);
}

TEST_CASE("solver options parse with defaults and validation") {
    const SolverOptions def = solver_options_from_json("{}");
    CHECK(def.tol == 1e-10);
    CHECK(def.max_iters == 500);
    CHECK(def.starts == 8);
    CHECK(def.fuzz == 1e-8);

    const SolverOptions s =
        solver_options_from_json(R"({"tol":1e-9,"max_iters":100,"starts":4,"fuzz":1e-7,"seed":9})");
    CHECK(s.tol == 1e-9);
    CHECK(s.max_iters == 100);
    CHECK(s.starts == 4);
    CHECK(s.seed == 9);

    CHECK_THROWS_AS(solver_options_from_json(R"({"tol":-1.0})"), ConfigError);
    CHECK_THROWS_AS(solver_options_from_json(R"({"bogus":1})"), ConfigError);
}

TEST_CASE("experiment config round-trips every field") {
    const ExperimentConfig cfg = config_from_json(R"({
        "model": {"type":"twist_standard","K":2.0},
        "bump": {"type":"onsite_cosine","lambda":[1.0]},
        "rotation": {"kind":"quadratic","num":[1,1,5],"den":2},
        "solver": {"tol":1e-9},
        "grid": 64,
        "convergents": 6,
        "threshold": 1e-5,
        "L": 3.0,
        "c_scale": 0.5,
        "deltas": [1e-4, 1e-3],
        "pairs": [[[2,1],[3,2]], [[3,2],[5,3]]]
    })");
    CHECK(cfg.model->range() == 1);
    CHECK(cfg.bump != nullptr);
    REQUIRE(cfg.rotation.has_value());
    CHECK_FALSE(cfg.rotation->is_rational());
    CHECK(cfg.grid == 64);
    CHECK(cfg.convergents == 6);
    CHECK(cfg.threshold == 1e-5);
    CHECK(cfg.l_cap == 3.0);
    CHECK(cfg.c_scale == 0.5);
    CHECK(cfg.deltas == std::vector<double>{1e-4, 1e-3});
    REQUIRE(cfg.pairs.size() == 2);
    CHECK(cfg.pairs[0].first == Rational(2, 1));
    CHECK(cfg.pairs[1].second == Rational(5, 3));

    CHECK_THROWS_AS(config_from_json(R"({"grid":64})"), ConfigError);  // model missing
    CHECK_THROWS_AS(config_from_json(R"({"model":{"type":"twist_standard","K":1.0},"grid":1})"),
                    ConfigError);
    CHECK_THROWS_AS(
        config_from_json(R"({"model":{"type":"twist_standard","K":1.0},"pairs":[[1,2]]})"),
        ConfigError);
    CHECK_THROWS_AS(
        config_from_json(R"({"model":{"type":"twist_standard","K":1.0},"mystery":0})"),
        ConfigError);
}
