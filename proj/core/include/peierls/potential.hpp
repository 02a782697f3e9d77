#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "peierls/errors.hpp"

namespace peierls {

/// Local interaction potential S : R^{r+1} -> R of a monotone variational
/// recurrence relation. Required properties:
///   A (periodicity)  S(x + 1) = S(x) for the all-ones shift,
///   B (monotonicity) off-diagonal second partials <= 0, d01 S < 0,
///   C (coercivity)   declared by the constructor, not sampled.
///
/// Built-in models supply analytic derivatives; user subclasses inherit
/// central-difference fallbacks with step 1e-5.
class LocalPotential {
public:
    explicit LocalPotential(int range);
    virtual ~LocalPotential() = default;

    int range() const { return range_; }

    /// S(x_0, ..., x_r). x.size() must be range()+1.
    virtual double value(std::span<const double> x) const = 0;

    /// Gradient of S into g (size range()+1). Default: central differences.
    virtual void gradient(std::span<const double> x, std::span<double> g) const;

    /// Hessian of S into h ((r+1) x (r+1)). Default: central differences.
    virtual void hessian(std::span<const double> x, Eigen::MatrixXd& h) const;

    /// Condition C is a statement about unbounded-domain limits and is
    /// declared, never verified numerically.
    virtual bool coercive() const { return true; }

    virtual std::string describe() const { return "local potential"; }

protected:
    int range_;
};

/// Finite cosine series V(x) = sum_m lambda_m / (2 pi m)^2 * (1 - cos 2 pi m x).
/// V(x+1) = V(x), V(0) = 0, and V >= 0 whenever every lambda_m >= 0.
class CosineSeries {
public:
    CosineSeries() = default;
    explicit CosineSeries(std::vector<double> amplitudes);

    double v(double x) const;
    double dv(double x) const;
    double ddv(double x) const;

    const std::vector<double>& amplitudes() const { return lambdas_; }

private:
    std::vector<double> lambdas_;
};

/// S(x_0,...,x_r) = sum_k (a_k / 2)(x_k - x_0)^2 + V(x_0), so that the
/// recurrence residual reproduces
///   sum_k a_k (x_{i-k} - 2 x_i + x_{i+k}) = V'(x_i)
/// up to a global sign. Requires a_1 > 0 and a_k >= 0.
class FrenkelKontorovaModel final : public LocalPotential {
public:
    FrenkelKontorovaModel(std::vector<double> couplings, CosineSeries onsite);

    double value(std::span<const double> x) const override;
    void gradient(std::span<const double> x, std::span<double> g) const override;
    void hessian(std::span<const double> x, Eigen::MatrixXd& h) const override;
    std::string describe() const override;

    const std::vector<double>& couplings() const { return a_; }
    const CosineSeries& onsite() const { return onsite_; }

private:
    std::vector<double> a_;
    CosineSeries onsite_;
};

/// Generating function of the standard twist map with kick amplitude K:
///   S(x, x') = (x' - x)^2 / 2 - (K / 4 pi^2) cos(2 pi x),   range 1.
class TwistGeneratingFunction final : public LocalPotential {
public:
    explicit TwistGeneratingFunction(double kick);

    double value(std::span<const double> x) const override;
    void gradient(std::span<const double> x, std::span<double> g) const override;
    void hessian(std::span<const double> x, Eigen::MatrixXd& h) const override;
    std::string describe() const override;

    double kick() const { return k_; }

private:
    double k_;
};

/// Pure on-site potential S(x_0,...,x_r) = V(x_0) of a chosen range, used as
/// a perturbation bump. It has no coupling, so it satisfies condition B only
/// in combination with a twist-carrying base.
class OnsitePotential final : public LocalPotential {
public:
    explicit OnsitePotential(CosineSeries onsite, int range = 1);

    double value(std::span<const double> x) const override;
    void gradient(std::span<const double> x, std::span<double> g) const override;
    void hessian(std::span<const double> x, Eigen::MatrixXd& h) const override;
    std::string describe() const override;

    const CosineSeries& onsite() const { return onsite_; }

private:
    CosineSeries onsite_;
};

/// base + delta * bump, both of the same interaction range.
class PerturbedPotential final : public LocalPotential {
public:
    PerturbedPotential(std::shared_ptr<const LocalPotential> base, double delta,
                       std::shared_ptr<const LocalPotential> bump);

    double value(std::span<const double> x) const override;
    void gradient(std::span<const double> x, std::span<double> g) const override;
    void hessian(std::span<const double> x, Eigen::MatrixXd& h) const override;
    std::string describe() const override;

    const LocalPotential& base() const { return *base_; }
    const LocalPotential& bump() const { return *bump_; }
    double delta() const { return delta_; }

private:
    std::shared_ptr<const LocalPotential> base_;
    std::shared_ptr<const LocalPotential> bump_;
    double delta_;
};

/// Outcome of the numerical checks of conditions A and B plus a gradient
/// consistency probe. Coercivity is reported as declared only.
struct ConditionReport {
    double periodicity_defect = 0.0;   // max |S(x + 1) - S(x)|
    double max_offdiagonal = 0.0;      // max over i != k of d2_{i,k} S
    double max_twist_entry = 0.0;      // max of d2_{0,1} S (want <= -c < 0)
    double max_gradient_relerr = 0.0;  // analytic vs central differences
    double hessian_asymmetry = 0.0;    // max |H - H^T|
    int samples = 0;

    bool periodicity_ok = false;
    bool monotonicity_ok = false;
    bool twist_ok = false;
    bool gradient_ok = false;
    std::string coercivity = "declared (not checkable)";

    bool passed() const { return periodicity_ok && monotonicity_ok && twist_ok && gradient_ok; }
};

/// Samples quasi-random points in [0, box_width]^{r+1} and reports the worst
/// violations of conditions A and B. Throws EvaluationError on a non-finite
/// potential value, naming the point.
ConditionReport check_conditions(const LocalPotential& pot, int sample_count, double box_width,
                                 std::uint64_t seed = 0);

/// Frenkel-Kontorova factory. Throws ConfigError when a_1 <= 0 or any a_k < 0
/// (condition B would fail).
std::shared_ptr<LocalPotential> make_fk(std::vector<double> couplings,
                                        std::vector<double> lambdas);

} // namespace peierls
