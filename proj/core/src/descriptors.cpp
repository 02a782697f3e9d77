#include "peierls/descriptors.hpp"

#include <set>

#include <json.hpp>

namespace peierls {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " descriptor must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key))
            throw ConfigError(std::string("unknown key \"") + key + "\" in " + what +
                              " descriptor");
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError(std::string("malformed JSON in ") + what);
    return j;
}

std::vector<double> doubles(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(std::string(what) + " must hold numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<long long> integers(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of integers");
    std::vector<long long> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ConfigError(std::string(what) + " must hold integers");
        out.push_back(v.get<long long>());
    }
    return out;
}

std::shared_ptr<const LocalPotential> model_from(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError("model descriptor needs a string \"type\"");
    const std::string type = j["type"].get<std::string>();

    if (type == "frenkel_kontorova") {
        require_keys(j, {"type", "a", "lambda"}, "frenkel_kontorova");
        if (!j.contains("a") || !j.contains("lambda"))
            throw ConfigError("frenkel_kontorova needs \"a\" and \"lambda\"");
        return make_fk(doubles(j["a"], "\"a\""), doubles(j["lambda"], "\"lambda\""));
    }
    if (type == "twist_standard") {
        require_keys(j, {"type", "K"}, "twist_standard");
        if (!j.contains("K") || !j["K"].is_number())
            throw ConfigError("twist_standard needs a numeric \"K\"");
        return std::make_shared<TwistGeneratingFunction>(j["K"].get<double>());
    }
    if (type == "onsite_cosine") {
        require_keys(j, {"type", "lambda", "range"}, "onsite_cosine");
        if (!j.contains("lambda")) throw ConfigError("onsite_cosine needs \"lambda\"");
        int range = 1;
        if (j.contains("range")) {
            if (!j["range"].is_number_integer())
                throw ConfigError("onsite_cosine \"range\" must be an integer");
            range = j["range"].get<int>();
        }
        return std::make_shared<OnsitePotential>(CosineSeries(doubles(j["lambda"], "\"lambda\"")),
                                                 range);
    }
    if (type == "perturbed") {
        require_keys(j, {"type", "base", "delta", "bump"}, "perturbed");
        if (!j.contains("base") || !j.contains("delta") || !j.contains("bump"))
            throw ConfigError("perturbed needs \"base\", \"delta\" and \"bump\"");
        if (!j["delta"].is_number()) throw ConfigError("perturbed \"delta\" must be numeric");
        return std::make_shared<PerturbedPotential>(model_from(j["base"]),
                                                    j["delta"].get<double>(),
                                                    model_from(j["bump"]));
    }
    throw ConfigError("unknown model type \"" + type + "\"");
}

RotationTarget rotation_from(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("rotation descriptor needs a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "rational") {
        require_keys(j, {"kind", "p", "q"}, "rational rotation");
        if (!j.contains("p") || !j.contains("q") || !j["p"].is_number_integer() ||
            !j["q"].is_number_integer())
            throw ConfigError("rational rotation needs integer \"p\" and \"q\"");
        return RotationTarget::rational(j["p"].get<long long>(), j["q"].get<long long>());
    }
    if (kind == "quadratic") {
        require_keys(j, {"kind", "num", "den"}, "quadratic rotation");
        if (!j.contains("num") || !j.contains("den") || !j["den"].is_number_integer())
            throw ConfigError("quadratic rotation needs \"num\":[a,b,c] and integer \"den\"");
        const std::vector<long long> num = integers(j["num"], "\"num\"");
        if (num.size() != 3)
            throw ConfigError("quadratic rotation \"num\" must be [a, b, c]");
        return RotationTarget::quadratic(num[0], num[1], num[2], j["den"].get<long long>());
    }
    if (kind == "cf") {
        require_keys(j, {"kind", "head", "period"}, "continued-fraction rotation");
        std::vector<long long> head, period;
        if (j.contains("head")) head = integers(j["head"], "\"head\"");
        if (j.contains("period")) period = integers(j["period"], "\"period\"");
        return RotationTarget::continued_fraction(std::move(head), std::move(period));
    }
    throw ConfigError("unknown rotation kind \"" + kind + "\"");
}

SolverOptions solver_options_from(const json& j) {
    require_keys(j, {"tol", "max_iters", "starts", "fuzz", "seed"}, "solver options");
    SolverOptions opts;
    auto num = [&](const char* key, double& slot) {
        if (!j.contains(key)) return;
        if (!j[key].is_number()) throw ConfigError(std::string("solver \"") + key + "\" must be numeric");
        slot = j[key].get<double>();
    };
    num("tol", opts.tol);
    num("fuzz", opts.fuzz);
    if (j.contains("max_iters")) {
        if (!j["max_iters"].is_number_integer())
            throw ConfigError("solver \"max_iters\" must be an integer");
        opts.max_iters = j["max_iters"].get<int>();
    }
    if (j.contains("starts")) {
        if (!j["starts"].is_number_integer())
            throw ConfigError("solver \"starts\" must be an integer");
        opts.starts = j["starts"].get<int>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw ConfigError("solver \"seed\" must be an integer");
        opts.seed = j["seed"].get<std::uint64_t>();
    }
    if (!(opts.tol > 0.0) || opts.max_iters < 1 || opts.starts < 1 || !(opts.fuzz > 0.0))
        throw ConfigError("solver options out of range");
    return opts;
}

} // namespace

std::shared_ptr<const LocalPotential> model_from_json(const std::string& text) {
    return model_from(parse(text, "model"));
}

RotationTarget rotation_from_json(const std::string& text) {
    return rotation_from(parse(text, "rotation"));
}

SolverOptions solver_options_from_json(const std::string& text) {
    return solver_options_from(parse(text, "solver options"));
}

ExperimentConfig config_from_json(const std::string& text) {
    const json j = parse(text, "experiment config");
    require_keys(j,
                 {"model", "bump", "rotation", "solver", "grid", "convergents", "threshold", "L",
                  "c_scale", "deltas", "pairs"},
                 "experiment config");
    if (!j.contains("model")) throw ConfigError("experiment config needs a \"model\"");

    ExperimentConfig cfg;
    cfg.model = model_from(j["model"]);
    if (j.contains("bump")) cfg.bump = model_from(j["bump"]);
    if (j.contains("rotation")) cfg.rotation = rotation_from(j["rotation"]);
    if (j.contains("solver")) cfg.solver = solver_options_from(j["solver"]);

    auto integer = [&](const char* key, int& slot, int lo) {
        if (!j.contains(key)) return;
        if (!j[key].is_number_integer() || j[key].get<long long>() < lo)
            throw ConfigError(std::string("config \"") + key + "\" must be an integer >= " +
                              std::to_string(lo));
        slot = j[key].get<int>();
    };
    integer("grid", cfg.grid, 2);
    integer("convergents", cfg.convergents, 1);

    auto positive = [&](const char* key, double& slot) {
        if (!j.contains(key)) return;
        if (!j[key].is_number() || !(j[key].get<double>() > 0.0))
            throw ConfigError(std::string("config \"") + key + "\" must be a positive number");
        slot = j[key].get<double>();
    };
    positive("threshold", cfg.threshold);
    positive("L", cfg.l_cap);
    positive("c_scale", cfg.c_scale);

    if (j.contains("deltas")) cfg.deltas = doubles(j["deltas"], "\"deltas\"");
    for (double d : cfg.deltas)
        if (d < 0.0) throw ConfigError("config \"deltas\" must be nonnegative");

    if (j.contains("pairs")) {
        if (!j["pairs"].is_array()) throw ConfigError("config \"pairs\" must be an array");
        for (const auto& entry : j["pairs"]) {
            if (!entry.is_array() || entry.size() != 2)
                throw ConfigError("each pair must be [[p,q],[P,Q]]");
            const std::vector<long long> a = integers(entry[0], "pair first");
            const std::vector<long long> b = integers(entry[1], "pair second");
            if (a.size() != 2 || b.size() != 2)
                throw ConfigError("each pair must be [[p,q],[P,Q]]");
            cfg.pairs.emplace_back(Rational(a[0], a[1]), Rational(b[0], b[1]));
        }
    }
    return cfg;
}

} // namespace peierls
