// Command-line front end: barrier profiles, classification, the verification
// battery, robustness sweeps, and constant reports. JSON config in, CSV/JSON
// out. Exit codes: 0 pass, 1 failed inequality, 2 config error, 3 solver
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "peierls/barrier.hpp"
#include "peierls/descriptors.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace peierls;

constexpr int kExitPass = 0;
constexpr int kExitInequality = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    out << content;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    int grid = 0;         // 0 keeps the config value
    int convergents = 0;
    long long seed = -1;  // -1 keeps the config value
    int threads = 1;      // accepted for interface stability; solves are
                          // serial and deterministic regardless
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required = true) {
    auto* c = cmd->add_option("--config", flags.config_path, "experiment config JSON");
    if (config_required) c->required();
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--grid", flags.grid, "xi grid size override");
    cmd->add_option("--convergents", flags.convergents, "convergent count override");
    cmd->add_option("--seed", flags.seed, "quasi-random sampler seed override");
    cmd->add_option("--threads", flags.threads, "worker count (outputs are identical for any value)")
        ->check(CLI::PositiveNumber);
}

ExperimentConfig resolve(const CommonFlags& flags) {
    ExperimentConfig cfg = load_config(flags.config_path);
    if (flags.grid > 0) cfg.grid = flags.grid;
    if (flags.convergents > 0) cfg.convergents = flags.convergents;
    if (flags.seed >= 0) cfg.solver.seed = static_cast<std::uint64_t>(flags.seed);
    return cfg;
}

json constants_json(const PaperConstants& pc) {
    return json{{"L", pc.l}, {"E", pc.e}, {"K", pc.k}, {"D", pc.d},
                {"C", pc.c}, {"samples", pc.samples}};
}

json rational_json(const Rational& r) { return json{{"p", r.p}, {"q", r.q}}; }

json pair_json(const PairEstimate& e) {
    return json{{"a", rational_json(e.a)},
                {"b", rational_json(e.b)},
                {"lhs", e.lhs},
                {"rhs", e.rhs},
                {"slack", e.slack},
                {"pass", e.pass},
                {"near_defect", e.near_defect},
                {"near_bound", e.near_bound},
                {"near_pass", e.near_pass}};
}

std::string profile_csv(const BarrierProfile& prof) {
    std::string csv = "xi,P\n";
    for (std::size_t j = 0; j < prof.grid.size(); ++j)
        csv += fmt(prof.grid[j]) + "," + fmt(prof.values[j]) + "\n";
    return csv;
}

json profile_json(const BarrierProfile& prof) {
    return json{{"rotation", rational_json(prof.rotation)},
                {"sup", prof.sup},
                {"argmax", prof.argmax},
                {"unconstrained_action", prof.unconstrained_action},
                {"max_birkhoff_defect", prof.max_birkhoff_defect},
                {"max_sandwich_violation", prof.max_sandwich_violation},
                {"max_residual", prof.max_residual},
                {"partial", prof.partial},
                {"failed", prof.failed}};
}

int cmd_constants(const CommonFlags& flags) {
    const ExperimentConfig cfg = resolve(flags);
    const PaperConstants pc =
        paper_constants(*cfg.model, cfg.l_cap, 10000, cfg.solver.seed);
    const json out = constants_json(pc);
    std::cout << out.dump(2) << "\n";
    write_file(flags.out_dir, "constants.json", out.dump(2) + "\n");
    return kExitPass;
}

int cmd_barrier(const CommonFlags& flags) {
    const ExperimentConfig cfg = resolve(flags);
    if (!cfg.rotation) throw ConfigError("barrier needs a \"rotation\" in the config");

    if (cfg.rotation->is_rational()) {
        const BarrierProfile prof =
            barrier_profile(*cfg.model, cfg.rotation->as_rational(), cfg.grid, cfg.solver);
        write_file(flags.out_dir, "profile.csv", profile_csv(prof));
        json summary = profile_json(prof);
        summary["constants"] =
            constants_json(paper_constants(*cfg.model, cfg.l_cap, 10000, cfg.solver.seed));
        write_file(flags.out_dir, "summary.json", summary.dump(2) + "\n");
        std::cout << "sup = " << fmt(prof.sup) << " at xi = " << fmt(prof.argmax) << "\n";
        return prof.partial ? kExitSolver : kExitPass;
    }

    const LimitReport rep = barrier_irrational(*cfg.model, *cfg.rotation, cfg.convergents,
                                               cfg.grid, cfg.solver, cfg.l_cap);
    write_file(flags.out_dir, "profile.csv", profile_csv(rep.profiles.back()));
    json out;
    out["constants"] = constants_json(rep.constants);
    out["error_bar"] = rep.error_bar;
    out["cauchy_ok"] = rep.cauchy_ok;
    out["pairs"] = json::array();
    bool all_pass = rep.cauchy_ok;
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
        json p = pair_json(rep.pairs[i]);
        p["cauchy_bound"] = rep.cauchy_bounds[i];
        out["pairs"].push_back(p);
        if (!rep.pairs[i].pass || !rep.pairs[i].near_pass) all_pass = false;
    }
    out["profiles"] = json::array();
    for (const BarrierProfile& prof : rep.profiles) out["profiles"].push_back(profile_json(prof));
    write_file(flags.out_dir, "limit.json", out.dump(2) + "\n");
    std::cout << "sup = " << fmt(rep.profiles.back().sup) << " +/- " << fmt(rep.error_bar)
              << "\n";
    return all_pass ? kExitPass : kExitInequality;
}

const char* verdict_name(ClassificationResult::Verdict v) {
    switch (v) {
        case ClassificationResult::Verdict::Foliation: return "foliation";
        case ClassificationResult::Verdict::Lamination: return "lamination";
        default: return "inconclusive";
    }
}

int cmd_classify(const CommonFlags& flags) {
    const ExperimentConfig cfg = resolve(flags);
    if (!cfg.rotation) throw ConfigError("classify needs a \"rotation\" in the config");
    const ClassificationResult res =
        classify(*cfg.model, *cfg.rotation, cfg.grid, cfg.threshold, cfg.solver);
    std::cout << verdict_name(res.verdict) << "\n";
    const json out{{"verdict", verdict_name(res.verdict)},
                   {"sup_barrier", res.sup_barrier},
                   {"error_bar", res.error_bar},
                   {"threshold", res.threshold},
                   {"deepest", rational_json(res.deepest)}};
    write_file(flags.out_dir, "classify.json", out.dump(2) + "\n");
    return kExitPass;
}

int cmd_sweep(const CommonFlags& flags) {
    const ExperimentConfig cfg = resolve(flags);
    if (!cfg.bump) throw ConfigError("sweep needs a \"bump\" in the config");
    if (cfg.deltas.empty()) throw ConfigError("sweep needs nonempty \"deltas\"");
    if (!cfg.rotation) throw ConfigError("sweep needs a \"rotation\" in the config");

    const std::vector<RobustnessRow> rows = robustness_sweep(
        cfg.model, cfg.bump, cfg.deltas, *cfg.rotation, cfg.convergents, cfg.grid, cfg.solver);

    std::string csv = "delta,p,q,sup_diff,bound,pass,condition_ok\n";
    json jrows = json::array();
    bool all_pass = true;
    for (const RobustnessRow& row : rows) {
        csv += fmt(row.delta) + "," + std::to_string(row.rotation.p) + "," +
               std::to_string(row.rotation.q) + "," + fmt(row.sup_diff) + "," + fmt(row.bound) +
               "," + (row.pass ? "1" : "0") + "," + (row.condition_ok ? "1" : "0") + "\n";
        jrows.push_back(json{{"delta", row.delta},
                             {"rotation", rational_json(row.rotation)},
                             {"sup_diff", row.sup_diff},
                             {"bound", row.bound},
                             {"pass", row.pass},
                             {"condition_ok", row.condition_ok}});
        if (row.condition_ok && !row.pass) all_pass = false;
    }
    write_file(flags.out_dir, "sweep.csv", csv);
    write_file(flags.out_dir, "sweep.json", jrows.dump(2) + "\n");
    return all_pass ? kExitPass : kExitInequality;
}

// ---- the verify battery -------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = true;
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    json detail;
};

CheckResult check_lipschitz(const LocalPotential& pot, const PaperConstants& pc,
                            std::mt19937_64& rng) {
    const int r = pot.range();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> seg_len(1, 50);

    CheckResult res{"lipschitz", true, 0.0, 0.0, {}};
    double worst_slack = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = seg_len(rng);
        const long long hi = n - 1 + r;
        std::vector<double> xv(static_cast<std::size_t>(hi) + 1), yv(xv.size());
        xv[0] = unit(rng);
        yv[0] = unit(rng);
        for (std::size_t i = 1; i < xv.size(); ++i) {
            xv[i] = xv[i - 1] + pc.k * (2.0 * unit(rng) - 1.0);
            yv[i] = yv[i - 1] + pc.k * (2.0 * unit(rng) - 1.0);
        }
        const Window wx(0, hi, xv), wy(0, hi, yv);
        const double lhs = std::abs(segment_action(pot, wx) - segment_action(pot, wy));
        double sum = 0.0;
        for (std::size_t i = 0; i < xv.size(); ++i) sum += std::abs(xv[i] - yv[i]);
        const double rhs = pc.d * sum + 1e-9;
        if (rhs - lhs < worst_slack) {
            worst_slack = rhs - lhs;
            res.worst_lhs = lhs;
            res.worst_rhs = rhs;
        }
        if (lhs > rhs) res.pass = false;
    }
    return res;
}

CheckResult check_minmax(const LocalPotential& pot, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<long long> period(1, 24);

    CheckResult res{"minmax", true, 0.0, 0.0, {}};
    double worst_slack = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
        const long long p = period(rng);
        const long long q =
            std::uniform_int_distribution<long long>(-2 * p, 2 * p)(rng);
        const double omega = static_cast<double>(q) / static_cast<double>(p);
        std::vector<double> xv(static_cast<std::size_t>(p)), yv(xv.size());
        for (long long i = 0; i < p; ++i) {
            xv[static_cast<std::size_t>(i)] = omega * static_cast<double>(i) + 2.0 * unit(rng) - 1.0;
            yv[static_cast<std::size_t>(i)] = omega * static_cast<double>(i) + 2.0 * unit(rng) - 1.0;
        }
        const PeriodicConfiguration x(p, q, xv), y(p, q, yv);
        const auto [m, M] = minmax_combine(x, y);
        const double lhs = periodic_action(pot, M) + periodic_action(pot, m);
        const double rhs = periodic_action(pot, x) + periodic_action(pot, y) + 1e-9;
        if (rhs - lhs < worst_slack) {
            worst_slack = rhs - lhs;
            res.worst_lhs = lhs;
            res.worst_rhs = rhs;
        }
        if (lhs > rhs) res.pass = false;
    }
    return res;
}

CheckResult check_gap(const LocalPotential& pot, const SolverOptions& opts) {
    CheckResult res{"gap_l1", true, 0.0, 1.0 + 1e-6, {}};
    const long long fib[] = {1, 1, 2, 3, 5, 8, 13, 21, 34};
    for (int i = 0; i + 1 < 9; ++i) {
        const Rational rot(fib[i], fib[i + 1]);
        const MinimizerResult base = minimize_periodic(pot, rot.p, rot.q, opts);
        for (int j = 0; j < 8; ++j) {
            const double xi = (static_cast<double>(j) + 0.5) / 8.0;
            const NeighborPair np = neighbor_pair(pot, rot.p, rot.q, xi, opts, &base);
            res.worst_lhs = std::max(res.worst_lhs, np.gap_l1);
            if (np.gap_l1 > 1.0 + 1e-6) res.pass = false;
        }
    }
    return res;
}

int cmd_verify(const CommonFlags& flags) {
    const ExperimentConfig cfg = resolve(flags);
    const LocalPotential& pot = *cfg.model;

    json report;
    bool all_pass = true;
    auto record = [&](const CheckResult& c) {
        report["checks"].push_back(json{{"name", c.name},
                                        {"pass", c.pass},
                                        {"worst_lhs", c.worst_lhs},
                                        {"worst_rhs", c.worst_rhs}});
        if (!c.pass) {
            all_pass = false;
            std::cout << "FAIL " << c.name << ": lhs " << fmt(c.worst_lhs) << " > rhs "
                      << fmt(c.worst_rhs) << "\n";
        } else {
            std::cout << "pass " << c.name << "\n";
        }
    };

    const ConditionReport cond = check_conditions(pot, 2000, 3.0, cfg.solver.seed);
    record({"conditions", cond.passed(), cond.max_offdiagonal, 0.0, {}});

    const PaperConstants pc = paper_constants(pot, cfg.l_cap, 10000, cfg.solver.seed);
    report["constants"] = constants_json(pc);

    std::mt19937_64 rng(cfg.solver.seed);
    record(check_lipschitz(pot, pc, rng));
    record(check_minmax(pot, rng));
    record(check_gap(pot, cfg.solver));

    const auto pairs = cfg.pairs.empty() ? standard_pair_battery() : cfg.pairs;
    const std::vector<PairEstimate> estimates =
        verify_difference_estimate(pot, pairs, cfg.l_cap, cfg.grid, cfg.solver, cfg.c_scale);
    report["pairs"] = json::array();
    CheckResult fe{"fundamental_estimate", true, 0.0, 0.0, {}};
    CheckResult np{"near_periodicity", true, 0.0, 0.0, {}};
    double worst_slack = std::numeric_limits<double>::infinity();
    for (const PairEstimate& e : estimates) {
        report["pairs"].push_back(pair_json(e));
        if (e.rhs + 1e-8 - e.lhs < worst_slack) {
            worst_slack = e.rhs + 1e-8 - e.lhs;
            fe.worst_lhs = e.lhs;
            fe.worst_rhs = e.rhs + 1e-8;
        }
        if (!e.pass) fe.pass = false;
        if (!e.near_pass) np.pass = false;
        np.worst_lhs = std::max(np.worst_lhs, e.near_defect);
        np.worst_rhs = std::max(np.worst_rhs, e.near_bound);
    }
    record(fe);
    record(np);

    if (cfg.bump && !cfg.deltas.empty() && cfg.rotation) {
        const std::vector<RobustnessRow> rows =
            robustness_sweep(cfg.model, cfg.bump, cfg.deltas, *cfg.rotation, cfg.convergents,
                             cfg.grid, cfg.solver);
        CheckResult rb{"robustness", true, 0.0, 0.0, {}};
        for (const RobustnessRow& row : rows) {
            rb.worst_lhs = std::max(rb.worst_lhs, row.sup_diff);
            rb.worst_rhs = std::max(rb.worst_rhs, row.bound);
            if (row.condition_ok && !row.pass) rb.pass = false;
        }
        record(rb);
    }

    report["pass"] = all_pass;
    write_file(flags.out_dir, "verify.json", report.dump(2) + "\n");
    return all_pass ? kExitPass : kExitInequality;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Peierls barriers and minimizers of monotone variational recurrences"};
    app.require_subcommand(1);

    CommonFlags barrier_f, classify_f, verify_f, sweep_f, constants_f;
    auto* barrier_cmd = app.add_subcommand("barrier", "barrier profile / convergent limit");
    add_common(barrier_cmd, barrier_f);
    auto* classify_cmd = app.add_subcommand("classify", "foliation vs lamination verdict");
    add_common(classify_cmd, classify_f);
    auto* verify_cmd = app.add_subcommand("verify", "run the inequality battery");
    add_common(verify_cmd, verify_f);
    auto* sweep_cmd = app.add_subcommand("sweep", "robustness sweep over deltas");
    add_common(sweep_cmd, sweep_f);
    auto* constants_cmd = app.add_subcommand("constants", "print the paper constants");
    add_common(constants_cmd, constants_f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (barrier_cmd->parsed()) return cmd_barrier(barrier_f);
        if (classify_cmd->parsed()) return cmd_classify(classify_f);
        if (verify_cmd->parsed()) return cmd_verify(verify_f);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_f);
        if (constants_cmd->parsed()) return cmd_constants(constants_f);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const EvaluationError& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitConfig;
}
