#include "peierls/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <gmpxx.h>

namespace peierls {

Rational::Rational(long long p_, long long q_) : p(p_), q(q_) {
    if (p == 0) throw PreconditionError("rational rotation number needs p != 0");
    if (p < 0) {
        p = -p;
        q = -q;
    }
    const long long g = std::gcd(p, std::llabs(q));
    p /= g;
    q /= g;
}

namespace {

// gmpxx predates long long constructors on this toolchain; long is 64-bit here.
inline mpz_class zz(long long v) { return mpz_class(static_cast<long>(v)); }

bool square_free(long long c) {
    for (long long i = 2; i * i <= c; ++i)
        if (c % (i * i) == 0) return false;
    return true;
}

/// Continued-fraction digits of the quadratic surd (P + sqrt(N)) / Q by the
/// exact integer recurrence; N must not be a perfect square.
class SurdDigits {
public:
    SurdDigits(long long a, long long b, long long c, long long d) {
        n_ = zz(b) * zz(b) * zz(c);
        if (b > 0) {
            p_ = zz(a);
            q_ = zz(d);
        } else {
            // (a - sqrt(N)) / d = (-a + sqrt(N)) / (-d)
            p_ = zz(-a);
            q_ = zz(-d);
        }
        // Invariant for the recurrence: Q divides N - P^2.
        if ((n_ - p_ * p_) % q_ != 0) {
            const mpz_class qa = abs(q_);
            p_ *= qa;
            n_ *= q_ * q_;
            q_ *= qa;
        }
    }

    mpz_class next() {
        mpz_class s = sqrt(n_);  // floor square root
        mpz_class a;
        if (q_ > 0) {
            mpz_fdiv_q(a.get_mpz_t(), mpz_class(p_ + s).get_mpz_t(), q_.get_mpz_t());
        } else {
            // sqrt(N) in (s, s+1) strictly, so floor((P + sqrt(N)) / Q) for
            // Q < 0 equals floor((-P - s - 1) / (-Q)).
            mpz_fdiv_q(a.get_mpz_t(), mpz_class(-p_ - s - 1).get_mpz_t(),
                       mpz_class(-q_).get_mpz_t());
        }
        const mpz_class pm = p_ - a * q_;
        p_ = -pm;
        q_ = (n_ - pm * pm) / q_;
        return a;
    }

private:
    mpz_class p_, q_, n_;
};

/// Digits of an irrational RotationTarget, count of them.
std::vector<mpz_class> cf_digits(const RotationTarget& t, int count) {
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(count));
    if (t.kind() == RotationTarget::Kind::Quadratic) {
        SurdDigits s(t.quad_a(), t.quad_b(), t.quad_c(), t.quad_d());
        for (int i = 0; i < count; ++i) out.push_back(s.next());
    } else {
        const auto& head = t.cf_head();
        const auto& period = t.cf_period();
        for (int i = 0; i < count; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            if (k < head.size())
                out.push_back(zz(head[k]));
            else
                out.push_back(zz(period[(k - head.size()) % period.size()]));
        }
    }
    return out;
}

/// Exact rational enclosure [lo, hi] of an irrational target, width < 1e-30.
void omega_enclosure(const RotationTarget& t, mpq_class& lo, mpq_class& hi) {
    if (t.kind() == RotationTarget::Kind::Quadratic) {
        constexpr int kBits = 140;
        mpz_class scaled = zz(t.quad_c());
        scaled <<= 2 * kBits;
        const mpz_class s = sqrt(scaled);
        const mpz_class pow2 = mpz_class(1) << kBits;
        const mpq_class root_lo(s, pow2), root_hi(mpz_class(s + 1), pow2);
        const mpq_class qa(zz(t.quad_a())), qb(zz(t.quad_b())), qd(zz(t.quad_d()));
        mpq_class e1 = (qa + qb * root_lo) / qd;
        mpq_class e2 = (qa + qb * root_hi) / qd;
        e1.canonicalize();
        e2.canonicalize();
        lo = std::min(e1, e2);
        hi = std::max(e1, e2);
        return;
    }
    // Continued fraction: omega lies strictly between successive convergents
    // whose interval has width 1/(p_m p_{m+1}).
    mpz_class target = 1;
    for (int i = 0; i < 31; ++i) target *= 10;
    mpz_class hm1 = 1, hm2 = 0;  // numerators
    mpz_class km1 = 0, km2 = 1;  // denominators
    int m = 0;
    const auto& head = t.cf_head();
    const auto& period = t.cf_period();
    auto digit = [&](int k) -> mpz_class {
        const std::size_t u = static_cast<std::size_t>(k);
        return zz(u < head.size() ? head[u] : period[(u - head.size()) % period.size()]);
    };
    mpq_class prev, cur;
    while (true) {
        const mpz_class a = digit(m);
        const mpz_class h = a * hm1 + hm2;
        const mpz_class k = a * km1 + km2;
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
        ++m;
        prev = cur;
        cur = mpq_class(h, k);
        cur.canonicalize();
        if (m >= 2 && km1 * km2 > target) break;
    }
    lo = std::min(prev, cur);
    hi = std::max(prev, cur);
}

long long to_ll(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p())
        throw PreconditionError(std::string(what) + " exceeds the 64-bit integer range");
    return static_cast<long long>(z.get_si());
}

} // namespace

RotationTarget RotationTarget::rational(long long p, long long q) {
    RotationTarget t;
    t.kind_ = Kind::Rational;
    t.rational_ = Rational(p, q);
    return t;
}

RotationTarget RotationTarget::quadratic(long long a, long long b, long long c, long long d) {
    if (d == 0) throw ConfigError("quadratic irrational needs a nonzero denominator");
    if (b == 0) throw ConfigError("quadratic irrational needs b != 0 (otherwise it is rational)");
    if (c < 2 || !square_free(c))
        throw ConfigError("quadratic irrational needs square-free c >= 2");
    RotationTarget t;
    t.kind_ = Kind::Quadratic;
    t.a_ = a;
    t.b_ = b;
    t.c_ = c;
    t.d_ = d;
    return t;
}

RotationTarget RotationTarget::continued_fraction(std::vector<long long> head,
                                                  std::vector<long long> period) {
    if (period.empty())
        throw ConfigError("continued fraction needs a nonempty periodic tail (else rational)");
    for (std::size_t i = 1; i < head.size(); ++i)
        if (head[i] < 1) throw ConfigError("continued-fraction coefficients after index 0 must be >= 1");
    for (long long a : period)
        if (a < 1) throw ConfigError("continued-fraction period coefficients must be >= 1");
    if (head.empty() && period[0] < 1)
        throw ConfigError("leading continued-fraction coefficient of the period must be >= 1");
    RotationTarget t;
    t.kind_ = Kind::ContinuedFraction;
    t.head_ = std::move(head);
    t.period_ = std::move(period);
    return t;
}

const Rational& RotationTarget::as_rational() const {
    if (kind_ != Kind::Rational) throw PreconditionError("rotation target is not rational");
    return rational_;
}

double RotationTarget::value() const {
    if (kind_ == Kind::Rational) return rational_.value();
    mpq_class lo, hi;
    omega_enclosure(*this, lo, hi);
    return mpq_class((lo + hi) / 2).get_d();
}

std::pair<double, double> RotationTarget::value_enclosure() const {
    if (kind_ == Kind::Rational) return {rational_.value(), rational_.value()};
    mpq_class lo, hi;
    omega_enclosure(*this, lo, hi);
    return {lo.get_d(), hi.get_d()};
}

std::string RotationTarget::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Rational:
            os << rational_.q << "/" << rational_.p;
            break;
        case Kind::Quadratic:
            os << "(" << a_ << " + " << b_ << " sqrt(" << c_ << ")) / " << d_;
            break;
        case Kind::ContinuedFraction: {
            os << "[";
            for (std::size_t i = 0; i < head_.size(); ++i) os << (i ? "," : "") << head_[i];
            os << "; (";
            for (std::size_t i = 0; i < period_.size(); ++i) os << (i ? "," : "") << period_[i];
            os << ")...]";
            break;
        }
    }
    return os.str();
}

std::vector<Convergent> convergents(const RotationTarget& omega, int n) {
    if (omega.is_rational())
        throw ConfigError("convergents need an irrational target; use the rational directly");
    if (n < 1) throw PreconditionError("convergent count must be >= 1");

    mpq_class lo, hi;
    omega_enclosure(omega, lo, hi);
    const std::vector<mpz_class> digits = cf_digits(omega, n);

    std::vector<Convergent> out;
    out.reserve(static_cast<std::size_t>(n));
    mpz_class hm1 = 1, hm2 = 0, km1 = 0, km2 = 1;
    for (const mpz_class& a : digits) {
        const mpz_class h = a * hm1 + hm2;
        const mpz_class k = a * km1 + km2;
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;

        Convergent c;
        c.rational = Rational(to_ll(k, "convergent denominator"),
                              to_ll(h, "convergent numerator"));
        mpq_class e1 = k * lo - h;
        mpq_class e2 = k * hi - h;
        e1 = abs(e1);
        e2 = abs(e2);
        c.abs_err = mpq_class((e1 + e2) / 2).get_d();
        out.push_back(c);
    }
    return out;
}

std::pair<double, double> diophantine_bound(const RotationTarget& omega, long long p_max) {
    if (omega.is_rational())
        throw PreconditionError("Diophantine data needs an irrational target");
    if (p_max < 1) throw PreconditionError("p_max must be >= 1");

    mpq_class lo, hi;
    omega_enclosure(omega, lo, hi);
    const mpq_class mid = (lo + hi) / 2;

    // min_p p * dist(p omega, Z) over p <= p_max is attained at convergent
    // denominators: any p in [p_n, p_{n+1}) has dist(p omega, Z) >= |p_n
    // omega - q_n|, hence p * dist >= the p_n candidate.
    double gamma = std::numeric_limits<double>::infinity();
    int needed = 8;
    while (true) {
        const std::vector<mpz_class> digits = cf_digits(omega, needed);
        mpz_class hm1 = 1, hm2 = 0, km1 = 0, km2 = 1;
        bool covered = false;
        gamma = std::numeric_limits<double>::infinity();
        for (const mpz_class& a : digits) {
            const mpz_class h = a * hm1 + hm2;
            const mpz_class k = a * km1 + km2;
            hm2 = hm1;
            hm1 = h;
            km2 = km1;
            km1 = k;
            if (k > zz(p_max)) {
                covered = true;
                break;
            }
            mpq_class err = abs(mpq_class(k * mid - h));
            gamma = std::min(gamma, mpq_class(k * err).get_d());
        }
        // Denominators grow at least like Fibonacci numbers, so a few hundred
        // digits always pass any 64-bit p_max.
        if (covered || needed > 512) break;
        needed *= 2;
    }
    return {gamma, 1.0};
}

HolderFit holder_exponent_data(const RotationTarget& omega,
                               const std::vector<Convergent>& convs,
                               const std::vector<double>& barrier_values) {
    if (convs.size() < 3) throw PreconditionError("Hoelder regression needs at least 3 convergents");
    if (convs.size() != barrier_values.size())
        throw PreconditionError("one barrier value per convergent is required");
    (void)omega;

    HolderFit fit;
    const double p_ref = barrier_values.back();
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i + 1 < convs.size(); ++i) {
        const double dx = convs[i].abs_err / static_cast<double>(convs[i].rational.p);
        const double dp = std::abs(barrier_values[i] - p_ref);
        fit.table.push_back({dx, dp});
        if (dx > 0.0 && dp > 0.0) {
            lx.push_back(std::log(dx));
            ly.push_back(std::log(dp));
        }
    }
    if (lx.size() < 2) {
        fit.degenerate = true;
        return fit;
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        fit.degenerate = true;
        return fit;
    }
    fit.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double pred = my + fit.slope * (lx[i] - mx);
        rss += (ly[i] - pred) * (ly[i] - pred);
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

} // namespace peierls
