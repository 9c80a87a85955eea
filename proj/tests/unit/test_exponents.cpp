#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "infotherm/ensemble.hpp"
#include "infotherm/errors.hpp"
#include "infotherm/exponents.hpp"
#include "infotherm/quadrature.hpp"

using namespace infotherm;

namespace {

TiltedFamily reference_family() {
    return TiltedFamily(
        DiscreteDistribution::from_probs(std::vector<double>{0.9, 0.1}),
        DiscreteDistribution::from_probs(std::vector<double>{0.6, 0.4}));
}

// independent composition enumeration with the same threshold and tie
// conventions as the library
struct BruteErrors {
    double log_p_err0;
    double log_p_err1;
};

BruteErrors brute_errors(const std::vector<double>& p0, const std::vector<double>& p1,
                         std::int64_t n, double lambda) {
    const std::size_t m = p0.size();
    std::vector<long double> l0(m), l1(m), mixed(m);
    for (std::size_t i = 0; i < m; ++i) {
        l0[i] = std::log(static_cast<long double>(p0[i]));
        l1[i] = std::log(static_cast<long double>(p1[i]));
        mixed[i] = (1.0L - lambda) * l0[i] + lambda * l1[i];
    }
    long double z = 0.0L;
    for (std::size_t i = 0; i < m; ++i) z += std::exp(mixed[i]);
    long double theta = 0.0L;
    for (std::size_t i = 0; i < m; ++i)
        theta += std::exp(mixed[i]) / z * (l0[i] - l1[i]);

    long double err0 = 0.0L, err1 = 0.0L;
    std::vector<std::int64_t> k(m, 0);
    const auto visit = [&](const std::vector<std::int64_t>& kk) {
        long double logc = std::lgamma(static_cast<long double>(n) + 1.0L);
        long double lp0 = 0.0L, lp1 = 0.0L, llr = 0.0L;
        for (std::size_t j = 0; j < m; ++j) {
            logc -= std::lgamma(static_cast<long double>(kk[j]) + 1.0L);
            lp0 += kk[j] * l0[j];
            lp1 += kk[j] * l1[j];
            llr += kk[j] * (l0[j] - l1[j]);
        }
        const long double slop = 1e-9L * std::max<long double>(1.0L, std::fabs(llr));
        if (llr >= static_cast<long double>(n) * theta - slop)
            err1 += std::exp(logc + lp1);
        else
            err0 += std::exp(logc + lp0);
    };
    if (m == 2) {
        for (std::int64_t k0 = 0; k0 <= n; ++k0) {
            k[0] = k0;
            k[1] = n - k0;
            visit(k);
        }
    } else {
        for (std::int64_t k0 = 0; k0 <= n; ++k0)
            for (std::int64_t k1 = 0; k1 + k0 <= n; ++k1) {
                k[0] = k0;
                k[1] = k1;
                k[2] = n - k0 - k1;
                visit(k);
            }
    }
    return {static_cast<double>(std::log(err0)), static_cast<double>(std::log(err1))};
}

} // namespace

TEST_CASE("log partition endpoints are exactly zero and the midpoint matches") {
    const auto f = reference_family();
    CHECK(f.log_partition(0.0) == 0.0);
    CHECK(f.log_partition(1.0) == 0.0);
    CHECK(f.log_partition(0.5) ==
          doctest::Approx(-0.067372481989948914759).epsilon(1e-14));
    CHECK(std::exp(f.log_partition(0.5)) ==
          doctest::Approx(0.93484692283495342946).epsilon(1e-14));
    CHECK(f.tilted(0.5).prob(1) ==
          doctest::Approx(0.21393876913398137178).epsilon(1e-14));
    CHECK_THROWS_AS(f.log_partition(1.2), DomainError);
    CHECK_THROWS_AS(f.log_partition(-0.2), DomainError);
}

TEST_CASE("exponents at the endpoints are the two divergences") {
    const auto f = reference_family();
    const auto at0 = exponent_pair(f, 0.0);
    CHECK(at0.e0 == 0.0);
    CHECK(at0.e1 == doctest::Approx(0.2262891611853588819).epsilon(1e-14));
    const auto at1 = exponent_pair(f, 1.0);
    CHECK(at1.e1 == 0.0);
    CHECK(at1.e0 == doctest::Approx(0.31123867958305761835).epsilon(1e-14));
}

TEST_CASE("midpoint exponents and the slope identity") {
    const auto f = reference_family();
    const auto e = exponent_pair(f, 0.5);
    CHECK(e.e0 == doctest::Approx(0.056303335651269653136).epsilon(1e-13));
    CHECK(e.e1 == doctest::Approx(0.078441628328628176382).epsilon(1e-13));

    for (const double lam : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto p = exponent_pair(f, lam);
        CHECK(p.e1 - p.e0 ==
              doctest::Approx(-f.log_partition_derivative(lam)).epsilon(1e-12));
        CHECK(p.e0 >= 0.0);
        CHECK(p.e1 >= 0.0);
    }
}

TEST_CASE("log partition derivative agrees with finite differences") {
    const auto f = reference_family();
    const double h = 1e-6;
    for (const double lam : {0.2, 0.5, 0.8}) {
        const double fd = (f.log_partition(lam + h) - f.log_partition(lam - h)) / (2.0 * h);
        CHECK(f.log_partition_derivative(lam) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("log partition is nonpositive and convex on a fine grid") {
    const auto f = reference_family();
    std::vector<double> v(1001);
    for (int i = 0; i <= 1000; ++i) {
        v[i] = f.log_partition(i / 1000.0);
        CHECK(v[i] <= 1e-15);
    }
    for (int i = 1; i < 1000; ++i)
        CHECK(v[i] <= 0.5 * (v[i - 1] + v[i + 1]) + 1e-12);
}

TEST_CASE("equalizing tilt matches the reference point") {
    const auto f = reference_family();
    const auto c = chernoff_point(f);
    CHECK_FALSE(c.degenerate);
    CHECK(c.lambda_star == doctest::Approx(0.54017845490000199345).epsilon(1e-9));
    CHECK(c.exponent == doctest::Approx(0.067820210467178491929).epsilon(1e-12));
    CHECK(c.exponent == doctest::Approx(-f.log_partition(c.lambda_star)).epsilon(1e-15));
    const auto e = exponent_pair(f, c.lambda_star);
    CHECK(std::fabs(e.e0 - e.e1) < 1e-9);
    CHECK(e.e0 == doctest::Approx(c.exponent).epsilon(1e-9));
}

TEST_CASE("the two exponent areas coincide") {
    const auto f = reference_family();
    const auto a = area_equality(f);
    CHECK(a.area_e0 == doctest::Approx(0.08979163023985878273).epsilon(1e-8));
    CHECK(a.area_e1 == doctest::Approx(0.08979163023985878273).epsilon(1e-8));
    CHECK(std::fabs(a.gap) < 1e-8);
    CHECK(a.gap == doctest::Approx(a.area_e0 - a.area_e1).epsilon(1e-15));

    // both areas equal -2 int_0^1 lnZ
    const auto lnz_area = adaptive_simpson(
        [&](double lam) { return f.log_partition(lam); }, 0.0, 1.0, 1e-12);
    CHECK(a.area_e0 == doctest::Approx(-2.0 * lnz_area.value).epsilon(1e-8));
}

TEST_CASE("identical laws collapse the family") {
    const auto p = DiscreteDistribution::from_probs(std::vector<double>{0.3, 0.7});
    const TiltedFamily f(p, p);
    CHECK(f.degenerate());
    CHECK(std::fabs(f.log_partition(0.4)) < 1e-12);
    const auto e = exponent_pair(f, 0.4);
    CHECK(e.e0 == 0.0);
    CHECK(e.e1 == 0.0);
    const auto c = chernoff_point(f);
    CHECK(c.degenerate);
    CHECK(std::isnan(c.lambda_star));
    CHECK(c.exponent == 0.0);
    CHECK_THROWS_AS(exact_error_oracle(f, 10, 0.5), DomainError);
}

TEST_CASE("laws with a vanishing state are rejected") {
    const auto full = DiscreteDistribution::from_probs(std::vector<double>{0.5, 0.5});
    const auto gapped = DiscreteDistribution::from_probs(std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS(TiltedFamily(full, gapped), DomainError);
    CHECK_THROWS_AS(TiltedFamily(gapped, full), DomainError);
    const auto three =
        DiscreteDistribution::from_probs(std::vector<double>{0.2, 0.3, 0.5});
    CHECK_THROWS_AS(TiltedFamily(full, three), DomainError); // size mismatch
}

TEST_CASE("error oracle against an independent binary enumeration") {
    const auto f = reference_family();
    const auto o = exact_error_oracle(f, 10, 0.5);
    const auto b = brute_errors({0.9, 0.1}, {0.6, 0.4}, 10, 0.5);
    CHECK(o.log_p_err0 == doctest::Approx(b.log_p_err0).epsilon(1e-12));
    CHECK(o.log_p_err1 == doctest::Approx(b.log_p_err1).epsilon(1e-12));
    CHECK(o.slope0 == doctest::Approx(-o.log_p_err0 / 10.0).epsilon(1e-15));
    CHECK(o.slope1 == doctest::Approx(-o.log_p_err1 / 10.0).epsilon(1e-15));
}

TEST_CASE("error oracle slopes approach the exponents") {
    const auto f = reference_family();
    const auto e = exponent_pair(f, 0.5);
    const auto small = exact_error_oracle(f, 100, 0.5);
    const auto large = exact_error_oracle(f, 1000, 0.5);
    CHECK(std::fabs(large.slope0 - e.e0) < 0.05);
    CHECK(std::fabs(large.slope1 - e.e1) < 0.05);
    CHECK(std::fabs(large.slope0 - e.e0) < std::fabs(small.slope0 - e.e0));
    CHECK(std::fabs(large.slope1 - e.e1) < std::fabs(small.slope1 - e.e1));
    CHECK(large.c0 < 10.0); // polylog-corrected gap stays bounded
    CHECK(large.c1 < 10.0);
}

TEST_CASE("error oracle against an independent ternary enumeration") {
    const std::vector<double> p0{0.5, 0.3, 0.2}, p1{0.2, 0.3, 0.5};
    const TiltedFamily f(DiscreteDistribution::from_probs(p0),
                         DiscreteDistribution::from_probs(p1));
    const auto o = exact_error_oracle(f, 50, 0.5);
    const auto b = brute_errors(p0, p1, 50, 0.5);
    CHECK(o.log_p_err0 == doctest::Approx(b.log_p_err0).epsilon(1e-10));
    CHECK(o.log_p_err1 == doctest::Approx(b.log_p_err1).epsilon(1e-10));
}

TEST_CASE("error oracle enforces its enumeration limits") {
    const auto f = reference_family();
    CHECK_THROWS_AS(exact_error_oracle(f, 0, 0.5), DomainError);
    CHECK_THROWS_AS(exact_error_oracle(f, 100001, 0.5), UnsupportedError);
    CHECK_THROWS_AS(exact_error_oracle(f, 10, 1.5), DomainError);

    const TiltedFamily tern(
        DiscreteDistribution::from_probs(std::vector<double>{0.5, 0.3, 0.2}),
        DiscreteDistribution::from_probs(std::vector<double>{0.2, 0.3, 0.5}));
    CHECK_THROWS_AS(exact_error_oracle(tern, 2001, 0.5), UnsupportedError);

    const TiltedFamily quad(
        DiscreteDistribution::from_probs(std::vector<double>{0.4, 0.3, 0.2, 0.1}),
        DiscreteDistribution::from_probs(std::vector<double>{0.1, 0.2, 0.3, 0.4}));
    CHECK_THROWS_AS(exact_error_oracle(quad, 4, 0.5), UnsupportedError);
}
