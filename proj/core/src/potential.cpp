#include "peierls/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "peierls/sampling.hpp"

namespace peierls {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFdStep = 1e-5;
} // namespace

LocalPotential::LocalPotential(int range) : range_(range) {
    if (range < 1) throw ConfigError("interaction range must be >= 1");
}

void LocalPotential::gradient(std::span<const double> x, std::span<double> g) const {
    const int n = range_ + 1;
    std::vector<double> xs(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
        const double xi = xs[i];
        xs[i] = xi + kFdStep;
        const double fp = value(xs);
        xs[i] = xi - kFdStep;
        const double fm = value(xs);
        xs[i] = xi;
        g[i] = (fp - fm) / (2.0 * kFdStep);
    }
}

void LocalPotential::hessian(std::span<const double> x, Eigen::MatrixXd& h) const {
    const int n = range_ + 1;
    h.resize(n, n);
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> gp(n), gm(n);
    for (int i = 0; i < n; ++i) {
        const double xi = xs[i];
        xs[i] = xi + kFdStep;
        gradient(xs, gp);
        xs[i] = xi - kFdStep;
        gradient(xs, gm);
        xs[i] = xi;
        for (int j = 0; j < n; ++j) h(i, j) = (gp[j] - gm[j]) / (2.0 * kFdStep);
    }
    // Symmetrize the finite-difference result.
    h = 0.5 * (h + h.transpose()).eval();
}

CosineSeries::CosineSeries(std::vector<double> amplitudes) : lambdas_(std::move(amplitudes)) {}

double CosineSeries::v(double x) const {
    double s = 0.0;
    for (std::size_t m = 0; m < lambdas_.size(); ++m) {
        const double w = kTwoPi * static_cast<double>(m + 1);
        s += lambdas_[m] / (w * w) * (1.0 - std::cos(w * x));
    }
    return s;
}

double CosineSeries::dv(double x) const {
    double s = 0.0;
    for (std::size_t m = 0; m < lambdas_.size(); ++m) {
        const double w = kTwoPi * static_cast<double>(m + 1);
        s += lambdas_[m] / w * std::sin(w * x);
    }
    return s;
}

double CosineSeries::ddv(double x) const {
    double s = 0.0;
    for (std::size_t m = 0; m < lambdas_.size(); ++m) {
        const double w = kTwoPi * static_cast<double>(m + 1);
        s += lambdas_[m] * std::cos(w * x);
    }
    return s;
}

FrenkelKontorovaModel::FrenkelKontorovaModel(std::vector<double> couplings, CosineSeries onsite)
    : LocalPotential(static_cast<int>(couplings.size())),
      a_(std::move(couplings)),
      onsite_(std::move(onsite)) {
    if (a_.empty() || a_[0] <= 0.0)
        throw ConfigError("Frenkel-Kontorova coupling a_1 must be positive");
    for (double ak : a_)
        if (!(ak >= 0.0)) throw ConfigError("Frenkel-Kontorova couplings must be >= 0");
}

double FrenkelKontorovaModel::value(std::span<const double> x) const {
    double s = onsite_.v(x[0]);
    for (int k = 1; k <= range_; ++k) {
        const double d = x[k] - x[0];
        s += 0.5 * a_[k - 1] * d * d;
    }
    return s;
}

void FrenkelKontorovaModel::gradient(std::span<const double> x, std::span<double> g) const {
    double g0 = onsite_.dv(x[0]);
    for (int k = 1; k <= range_; ++k) {
        const double d = x[k] - x[0];
        g[k] = a_[k - 1] * d;
        g0 -= a_[k - 1] * d;
    }
    g[0] = g0;
}

void FrenkelKontorovaModel::hessian(std::span<const double> x, Eigen::MatrixXd& h) const {
    const int n = range_ + 1;
    h.setZero(n, n);
    double diag0 = onsite_.ddv(x[0]);
    for (int k = 1; k <= range_; ++k) {
        const double ak = a_[k - 1];
        h(k, k) = ak;
        h(0, k) = h(k, 0) = -ak;
        diag0 += ak;
    }
    h(0, 0) = diag0;
}

std::string FrenkelKontorovaModel::describe() const {
    std::ostringstream os;
    os << "frenkel_kontorova(r=" << range_ << ")";
    return os.str();
}

TwistGeneratingFunction::TwistGeneratingFunction(double kick) : LocalPotential(1), k_(kick) {
    if (!(kick >= 0.0)) throw ConfigError("twist kick amplitude K must be >= 0");
}

double TwistGeneratingFunction::value(std::span<const double> x) const {
    const double d = x[1] - x[0];
    return 0.5 * d * d - k_ / (kTwoPi * kTwoPi) * std::cos(kTwoPi * x[0]);
}

void TwistGeneratingFunction::gradient(std::span<const double> x, std::span<double> g) const {
    const double d = x[1] - x[0];
    g[0] = -d + k_ / kTwoPi * std::sin(kTwoPi * x[0]);
    g[1] = d;
}

void TwistGeneratingFunction::hessian(std::span<const double> x, Eigen::MatrixXd& h) const {
    h.resize(2, 2);
    h(0, 0) = 1.0 + k_ * std::cos(kTwoPi * x[0]);
    h(0, 1) = h(1, 0) = -1.0;
    h(1, 1) = 1.0;
}

std::string TwistGeneratingFunction::describe() const {
    std::ostringstream os;
    os << "twist_standard(K=" << k_ << ")";
    return os.str();
}

OnsitePotential::OnsitePotential(CosineSeries onsite, int range)
    : LocalPotential(range), onsite_(std::move(onsite)) {}

double OnsitePotential::value(std::span<const double> x) const { return onsite_.v(x[0]); }

void OnsitePotential::gradient(std::span<const double> x, std::span<double> g) const {
    for (int i = 0; i <= range_; ++i) g[i] = 0.0;
    g[0] = onsite_.dv(x[0]);
}

void OnsitePotential::hessian(std::span<const double> x, Eigen::MatrixXd& h) const {
    h.setZero(range_ + 1, range_ + 1);
    h(0, 0) = onsite_.ddv(x[0]);
}

std::string OnsitePotential::describe() const {
    std::ostringstream os;
    os << "onsite_cosine(m=" << onsite_.amplitudes().size() << ")";
    return os.str();
}

PerturbedPotential::PerturbedPotential(std::shared_ptr<const LocalPotential> base, double delta,
                                       std::shared_ptr<const LocalPotential> bump)
    : LocalPotential(base ? base->range() : 1),
      base_(std::move(base)),
      bump_(std::move(bump)),
      delta_(delta) {
    if (!base_ || !bump_) throw ConfigError("perturbed potential needs base and bump");
    if (base_->range() != bump_->range())
        throw ConfigError("perturbation bump must have the same interaction range as the base");
}

double PerturbedPotential::value(std::span<const double> x) const {
    return base_->value(x) + delta_ * bump_->value(x);
}

void PerturbedPotential::gradient(std::span<const double> x, std::span<double> g) const {
    base_->gradient(x, g);
    std::vector<double> gb(range_ + 1);
    bump_->gradient(x, gb);
    for (int i = 0; i <= range_; ++i) g[i] += delta_ * gb[i];
}

void PerturbedPotential::hessian(std::span<const double> x, Eigen::MatrixXd& h) const {
    base_->hessian(x, h);
    Eigen::MatrixXd hb;
    bump_->hessian(x, hb);
    h += delta_ * hb;
}

std::string PerturbedPotential::describe() const {
    std::ostringstream os;
    os << base_->describe() << " + " << delta_ << " * " << bump_->describe();
    return os.str();
}

ConditionReport check_conditions(const LocalPotential& pot, int sample_count, double box_width,
                                 std::uint64_t seed) {
    if (sample_count < 1) throw PreconditionError("sample_count must be >= 1");
    if (!(box_width > 0.0)) throw PreconditionError("box_width must be positive");

    const int n = pot.range() + 1;
    ConditionReport rep;
    rep.samples = sample_count;
    rep.max_twist_entry = -std::numeric_limits<double>::infinity();

    HaltonSampler sampler(n, seed);
    std::vector<double> x(n), shifted(n), ga(n), gfd(n);
    Eigen::MatrixXd h;

    for (int s = 0; s < sample_count; ++s) {
        sampler.next(x.data());
        for (double& xi : x) xi *= box_width;

        const double f = pot.value(x);
        if (!std::isfinite(f)) {
            std::ostringstream os;
            os << "potential is non-finite at (";
            for (int i = 0; i < n; ++i) os << (i ? ", " : "") << x[i];
            os << ")";
            throw EvaluationError(os.str());
        }

        for (int i = 0; i < n; ++i) shifted[i] = x[i] + 1.0;
        rep.periodicity_defect = std::max(rep.periodicity_defect, std::abs(pot.value(shifted) - f));

        pot.hessian(x, h);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (i != k) rep.max_offdiagonal = std::max(rep.max_offdiagonal, h(i, k));
                rep.hessian_asymmetry = std::max(rep.hessian_asymmetry, std::abs(h(i, k) - h(k, i)));
            }
        rep.max_twist_entry = std::max(rep.max_twist_entry, h(0, 1));

        pot.gradient(x, ga);
        std::vector<double> xs = x;
        for (int i = 0; i < n; ++i) {
            const double xi = xs[i];
            xs[i] = xi + 1e-5;
            const double fp = pot.value(xs);
            xs[i] = xi - 1e-5;
            const double fm = pot.value(xs);
            xs[i] = xi;
            gfd[i] = (fp - fm) / 2e-5;
        }
        double scale = 1.0;
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(ga[i]));
        for (int i = 0; i < n; ++i)
            rep.max_gradient_relerr =
                std::max(rep.max_gradient_relerr, std::abs(ga[i] - gfd[i]) / scale);
    }

    rep.periodicity_ok = rep.periodicity_defect <= 1e-12 * (1.0 + box_width);
    rep.monotonicity_ok = rep.max_offdiagonal <= 1e-12;
    rep.twist_ok = rep.max_twist_entry < 0.0;
    rep.gradient_ok = rep.max_gradient_relerr <= 1e-6;
    rep.coercivity = pot.coercive() ? "declared (not checkable)" : "not declared";
    return rep;
}

std::shared_ptr<LocalPotential> make_fk(std::vector<double> couplings,
                                        std::vector<double> lambdas) {
    return std::make_shared<FrenkelKontorovaModel>(std::move(couplings),
                                                   CosineSeries(std::move(lambdas)));
}

} // namespace peierls
