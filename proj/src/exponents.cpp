#include "infotherm/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "infotherm/errors.hpp"
#include "infotherm/logspace.hpp"
#include "infotherm/quadrature.hpp"

namespace infotherm {

namespace {

constexpr double kZeroClamp = 1e-14;

std::vector<double> mixed_log_weights(const TiltedFamily& f, double lambda) {
    const std::size_t m = f.size();
    std::vector<double> lw(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double l0 = f.p0().log_prob(i), l1 = f.p1().log_prob(i);
        if (lambda == 0.0) lw[i] = l0;
        else if (lambda == 1.0) lw[i] = l1;
        else lw[i] = (1.0 - lambda) * l0 + lambda * l1;
    }
    return lw;
}

void require_tilt(double lambda) {
    if (!(lambda >= 0.0) || !(lambda <= 1.0))
        throw DomainError("tilt: lambda must lie in [0, 1]");
}

} // namespace

TiltedFamily::TiltedFamily(DiscreteDistribution p0, DiscreteDistribution p1)
    : p0_(std::move(p0)), p1_(std::move(p1)), degenerate_(false) {
    if (p0_.size() != p1_.size())
        throw DomainError("tilt: laws must share an alphabet");
    bool equal = true;
    for (std::size_t i = 0; i < p0_.size(); ++i) {
        if (p0_.log_prob(i) == kNegInf || p1_.log_prob(i) == kNegInf)
            throw DomainError("tilt: both laws must charge every state");
        if (std::fabs(p0_.prob(i) - p1_.prob(i)) > 1e-15) equal = false;
    }
    degenerate_ = equal;
}

double TiltedFamily::log_partition(double lambda) const {
    require_tilt(lambda);
    if (lambda == 0.0 || lambda == 1.0) return 0.0;
    return log_sum_exp(mixed_log_weights(*this, lambda));
}

double TiltedFamily::log_partition_derivative(double lambda) const {
    require_tilt(lambda);
    const DiscreteDistribution q = tilted(lambda);
    StableSum s;
    for (std::size_t i = 0; i < size(); ++i) {
        const double lq = q.log_prob(i);
        if (lq == kNegInf) continue;
        s.add(static_cast<long double>(std::exp(lq)) *
              (static_cast<long double>(p1_.log_prob(i)) - p0_.log_prob(i)));
    }
    return s.value();
}

DiscreteDistribution TiltedFamily::tilted(double lambda) const {
    require_tilt(lambda);
    return DiscreteDistribution::from_log_weights(mixed_log_weights(*this, lambda));
}

ExponentPair exponent_pair(const TiltedFamily& f, double lambda) {
    require_tilt(lambda);
    const double lnz = f.log_partition(lambda);
    const double slope = f.log_partition_derivative(lambda);
    // e0 = lambda lnZ' - lnZ and e1 = (lambda-1) lnZ' - lnZ: the two
    // Legendre readings of the same tangent line
    ExponentPair e;
    e.e0 = lambda * slope - lnz;
    e.e1 = (lambda - 1.0) * slope - lnz;
    if (std::fabs(e.e0) < kZeroClamp) e.e0 = 0.0;
    if (std::fabs(e.e1) < kZeroClamp) e.e1 = 0.0;
    return e;
}

ChernoffPoint chernoff_point(const TiltedFamily& f) {
    ChernoffPoint c;
    if (f.degenerate()) {
        c.lambda_star = std::nan("");
        c.exponent = 0.0;
        c.degenerate = true;
        return c;
    }
    c.degenerate = false;
    double lo = 0.0, hi = 1.0;
    double dlo = f.log_partition_derivative(0.0); // -D(P0||P1) < 0
    double dhi = f.log_partition_derivative(1.0); //  D(P1||P0) > 0
    if (!(dlo < 0.0) || !(dhi > 0.0))
        throw NumericError("tilt: derivative endpoints have unexpected signs");
    double mid = 0.5, dm = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        dm = f.log_partition_derivative(mid);
        if (std::fabs(dm) < 1e-12) break;
        if (dm < 0.0) { lo = mid; dlo = dm; }
        else { hi = mid; dhi = dm; }
        if (hi - lo < 1e-17) break;
    }
    (void)dlo;
    (void)dhi;
    c.lambda_star = mid;
    c.exponent = -f.log_partition(mid);
    return c;
}

AreaEquality area_equality(const TiltedFamily& f) {
    const auto integrate = [&](auto pick) {
        return adaptive_simpson(
                   [&](double lambda) { return pick(exponent_pair(f, lambda)); }, 0.0, 1.0,
                   1e-10, 60)
            .value;
    };
    AreaEquality a;
    a.area_e0 = integrate([](const ExponentPair& e) { return e.e0; });
    a.area_e1 = integrate([](const ExponentPair& e) { return e.e1; });
    a.gap = a.area_e0 - a.area_e1;
    return a;
}

ErrorOracle exact_error_oracle(const TiltedFamily& f, std::int64_t n, double lambda) {
    require_tilt(lambda);
    if (n < 1) throw DomainError("oracle: block length must be >= 1");
    if (f.degenerate())
        throw DomainError("oracle: identical laws admit no discriminating test");

    std::vector<double> l0(f.size()), l1(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        l0[i] = f.p0().log_prob(i);
        l1[i] = f.p1().log_prob(i);
    }
    const std::size_t m = l0.size();
    if (m > 3) throw UnsupportedError("oracle: alphabets beyond three symbols are not enumerated");
    if (m == 2 && n > 100000)
        throw UnsupportedError("oracle: block length capped at 100000 for binary alphabets");
    if (m == 3 && n > 2000)
        throw UnsupportedError("oracle: block length capped at 2000 for ternary alphabets");

    // threshold: per-symbol mean of ln(p0/p1) under the tilted law
    const DiscreteDistribution q = f.tilted(lambda);
    long double theta = 0.0L;
    {
        StableSum s;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double lq = q.log_prob(i);
            if (lq == kNegInf) continue;
            s.add(static_cast<long double>(std::exp(lq)) *
                  (static_cast<long double>(f.p0().log_prob(i)) - f.p1().log_prob(i)));
        }
        theta = s.value_l();
    }

    // enumerate compositions (k_1, ..., k_m) of n; each contributes
    // multinomial mass to exactly one error event
    std::vector<double> err0_terms, err1_terms;
    const long double nd = static_cast<long double>(n);
    const auto classify = [&](const std::vector<std::int64_t>& k) {
        long double logc = std::lgamma(static_cast<long double>(n) + 1.0L);
        long double lp0 = 0.0L, lp1 = 0.0L, llr = 0.0L;
        for (std::size_t j = 0; j < m; ++j) {
            logc -= std::lgamma(static_cast<long double>(k[j]) + 1.0L);
            lp0 += k[j] * static_cast<long double>(l0[j]);
            lp1 += k[j] * static_cast<long double>(l1[j]);
            llr += k[j] * (static_cast<long double>(l0[j]) - l1[j]);
        }
        const long double slop = 1e-9L * std::max<long double>(1.0L, std::fabs(llr));
        const bool accept0 = llr >= nd * theta - slop;
        if (accept0) err1_terms.push_back(static_cast<double>(logc + lp1));
        else err0_terms.push_back(static_cast<double>(logc + lp0));
    };

    if (m == 2) {
        std::vector<std::int64_t> k(2);
        for (std::int64_t k0 = 0; k0 <= n; ++k0) {
            k[0] = k0;
            k[1] = n - k0;
            classify(k);
        }
    } else {
        std::vector<std::int64_t> k(3);
        for (std::int64_t k0 = 0; k0 <= n; ++k0)
            for (std::int64_t k1 = 0; k1 + k0 <= n; ++k1) {
                k[0] = k0;
                k[1] = k1;
                k[2] = n - k0 - k1;
                classify(k);
            }
    }

    ErrorOracle o;
    o.log_p_err0 = log_sum_exp(err0_terms);
    o.log_p_err1 = log_sum_exp(err1_terms);
    o.slope0 = -o.log_p_err0 / static_cast<double>(n);
    o.slope1 = -o.log_p_err1 / static_cast<double>(n);
    const ExponentPair e = exponent_pair(f, lambda);
    const double scale = static_cast<double>(n) / std::max(std::log(static_cast<double>(n)), 1.0);
    o.c0 = std::fabs(o.slope0 - e.e0) * scale;
    o.c1 = std::fabs(o.slope1 - e.e1) * scale;
    return o;
}

} // namespace infotherm
