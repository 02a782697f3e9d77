#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peierls/diophantine.hpp"
#include "peierls/potential.hpp"
#include "peierls/solver.hpp"

namespace peierls {

/// Builds a potential from its JSON descriptor:
///   {"type":"frenkel_kontorova","a":[...],"lambda":[...]}
///   {"type":"twist_standard","K":...}
///   {"type":"onsite_cosine","lambda":[...],"range":r}
///   {"type":"perturbed","base":{...},"delta":...,"bump":{...}}
/// Unknown keys are rejected. Throws ConfigError on any schema violation.
std::shared_ptr<const LocalPotential> model_from_json(const std::string& text);

/// Rotation descriptor:
///   {"kind":"rational","p":...,"q":...}
///   {"kind":"quadratic","num":[a,b,c],"den":d}   for (a + b sqrt(c)) / d
///   {"kind":"cf","head":[...],"period":[...]}
RotationTarget rotation_from_json(const std::string& text);

/// Solver options, all fields optional:
///   {"tol":1e-10,"max_iters":500,"starts":8,"fuzz":1e-8,"seed":0}
SolverOptions solver_options_from_json(const std::string& text);

/// A full experiment configuration as consumed by the command-line driver.
struct ExperimentConfig {
    std::shared_ptr<const LocalPotential> model;
    std::shared_ptr<const LocalPotential> bump;  // robustness sweeps
    std::optional<RotationTarget> rotation;
    SolverOptions solver;
    int grid = 128;
    int convergents = 8;
    double threshold = 1e-6;
    double l_cap = 2.0;
    double c_scale = 1.0;  // constant override for negative controls
    std::vector<double> deltas;
    std::vector<std::pair<Rational, Rational>> pairs;  // verify battery
};

/// Parses {"model":..., "rotation":..., "solver":..., "grid":..., ...};
/// only "model" is mandatory. Unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text);

} // namespace peierls
