#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "infotherm/ensemble.hpp"
#include "infotherm/errors.hpp"
#include "infotherm/gibbs.hpp"
#include "infotherm/logspace.hpp"

using namespace infotherm;

namespace {

DiscreteDistribution bern(double p1) {
    return DiscreteDistribution::from_probs(std::vector<double>{1.0 - p1, p1});
}

} // namespace

TEST_CASE("relative entropy matches the reference pair and its conventions") {
    const auto p = bern(0.1), q = bern(0.4);
    CHECK(relative_entropy(p, q) == doctest::Approx(0.2262891611853588819).epsilon(1e-15));
    CHECK(relative_entropy(q, p) == doctest::Approx(0.31123867958305761835).epsilon(1e-15));

    CHECK(relative_entropy(p, p) == 0.0); // clamped, not merely tiny

    const auto full = bern(0.5);
    const auto nulled =
        DiscreteDistribution::from_log_weights(std::vector<double>{0.0, kNegInf});
    CHECK(relative_entropy(full, nulled) == kPosInf);
    CHECK(relative_entropy(nulled, full) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("relative entropy is nonnegative across random pairs") {
    std::mt19937_64 gen(21);
    auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(unit() * 30.0);
        std::vector<double> a(m), b(m);
        double sa = 0.0, sb = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = 0.05 + unit();
            b[i] = 0.05 + unit();
            sa += a[i];
            sb += b[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            a[i] /= sa;
            b[i] /= sb;
        }
        const double d = relative_entropy(DiscreteDistribution::from_probs(a),
                                          DiscreteDistribution::from_probs(b));
        CHECK(d >= 0.0);

        // plain-double reference sum
        double ref = 0.0;
        for (std::size_t i = 0; i < m; ++i) ref += a[i] * std::log(a[i] / b[i]);
        CHECK(d == doctest::Approx(ref).epsilon(1e-11));
    }
}

TEST_CASE("gibbs split of the two-level switch reproduces the reference numbers") {
    const Hamiltonian h0({0.0, 0.0}), h1({0.0, 1.0});
    const auto g = gibbs_decomposition(h0, h1, InverseTemperature(1.0));
    CHECK(g.avg_work == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.delta_f == doctest::Approx(0.37988549304172247537).epsilon(1e-15));
    CHECK(g.dissipation == doctest::Approx(0.12011450695827752463).epsilon(1e-15));
    CHECK(std::fabs(g.avg_work - g.delta_f - g.dissipation) < 1e-15);

    // dissipation is kT times the divergence between the two equilibria
    const auto p0 = boltzmann(h0, InverseTemperature(1.0));
    const auto p1 = boltzmann(h1, InverseTemperature(1.0));
    CHECK(g.dissipation == doctest::Approx(relative_entropy(p0, p1)).epsilon(1e-14));
}

TEST_CASE("gibbs split holds across random instances and temperatures") {
    std::mt19937_64 gen(22);
    auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(unit() * 62.0);
        const double beta = std::exp(std::log(1e-3) + unit() * std::log(1e6));
        std::vector<double> e0(m), e1(m);
        for (std::size_t i = 0; i < m; ++i) {
            e0[i] = (2.0 * unit() - 1.0) * 2.0 / beta;
            e1[i] = (2.0 * unit() - 1.0) * 2.0 / beta;
        }
        const auto g =
            gibbs_decomposition(Hamiltonian(e0), Hamiltonian(e1), InverseTemperature(beta));
        const double scale =
            1.0 + std::max(std::fabs(g.avg_work), std::fabs(g.delta_f));
        CHECK(std::fabs(g.avg_work - g.delta_f - g.dissipation) <= 1e-12 * scale);
        CHECK(g.dissipation >= -1e-12 * scale);
    }
}

TEST_CASE("adiabatic heating step reproduces the reference numbers") {
    const Hamiltonian h({0.0, 1.0});
    const auto a = adiabatic_clausius(h, InverseTemperature(1.0), InverseTemperature(0.5));
    CHECK(a.delta_sigma == doctest::Approx(0.080644209690961443756).epsilon(1e-15));
    CHECK(a.heat_over_kT1 == doctest::Approx(0.054299623714075157306).epsilon(1e-15));
    CHECK(a.slack == doctest::Approx(0.02634458597688628645).epsilon(1e-15));
    CHECK(std::fabs(a.delta_sigma - a.heat_over_kT1 - a.slack) < 1e-15);

    // the slack is the divergence between the endpoint equilibria
    const auto p0 = boltzmann(h, InverseTemperature(1.0));
    const auto p1 = boltzmann(h, InverseTemperature(0.5));
    CHECK(a.slack == doctest::Approx(relative_entropy(p0, p1)).epsilon(1e-13));
}

TEST_CASE("cooling requires the explicit flag and keeps the slack identity") {
    const Hamiltonian h({0.0, 1.0});
    CHECK_THROWS_AS(adiabatic_clausius(h, InverseTemperature(0.5), InverseTemperature(1.0)),
                    DomainError);
    const auto a =
        adiabatic_clausius(h, InverseTemperature(0.5), InverseTemperature(1.0), true);
    CHECK(a.slack >= 0.0);
    CHECK(a.delta_sigma < 0.0); // entropy drops on cooling
    const auto p0 = boltzmann(h, InverseTemperature(0.5));
    const auto p1 = boltzmann(h, InverseTemperature(1.0));
    CHECK(a.slack == doctest::Approx(relative_entropy(p0, p1)).epsilon(1e-13));
}

TEST_CASE("adiabatic slack matches the divergence across a random sweep") {
    std::mt19937_64 gen(23);
    auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(unit() * 14.0);
        const double b1 = std::exp(std::log(1e-2) + unit() * std::log(1e3));
        const double b0 = b1 * (1.5 + 6.5 * unit());
        std::vector<double> e(m);
        for (auto& x : e) x = (2.0 * unit() - 1.0) * 2.0 / b0;
        const Hamiltonian h(e);
        const auto a = adiabatic_clausius(h, InverseTemperature(b0), InverseTemperature(b1));
        const double d = relative_entropy(boltzmann(h, InverseTemperature(b0)),
                                          boltzmann(h, InverseTemperature(b1)));
        CHECK(std::fabs(a.delta_sigma - a.heat_over_kT1 - d) <=
              1e-12 * (1.0 + std::fabs(a.delta_sigma)));
        CHECK(a.slack >= 0.0);
    }
}

TEST_CASE("log-sum inequality on the reference vectors") {
    const std::vector<double> a{1.0, 2.0}, b{2.0, 1.0};
    const auto r = log_sum_inequality(a, b);
    CHECK(r.lhs == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(r.rhs == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.slack == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("log-sum inequality conventions for zero entries") {
    // a_i = 0 contributes nothing regardless of b_i
    const auto r = log_sum_inequality(std::vector<double>{0.0, 1.0},
                                      std::vector<double>{0.0, 1.0});
    CHECK(r.lhs == 0.0);
    CHECK(r.slack == doctest::Approx(0.0).epsilon(1e-15));

    // a_i > 0 against b_i = 0 blows up
    const auto s = log_sum_inequality(std::vector<double>{1.0, 1.0},
                                      std::vector<double>{0.0, 2.0});
    CHECK(s.lhs == kPosInf);
    CHECK_THROWS_AS(log_sum_inequality(std::vector<double>{-1.0}, std::vector<double>{1.0}),
                    DomainError);
}

TEST_CASE("log-sum slack is the scaled divergence of the normalized vectors") {
    std::mt19937_64 gen(24);
    auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(unit() * 10.0);
        std::vector<double> a(m), b(m);
        double sa = 0.0, sb = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = 0.1 + 3.0 * unit();
            b[i] = 0.1 + 3.0 * unit();
            sa += a[i];
            sb += b[i];
        }
        const auto r = log_sum_inequality(a, b);
        CHECK(r.slack >= 0.0);

        std::vector<double> an(m), bn(m);
        for (std::size_t i = 0; i < m; ++i) {
            an[i] = a[i] / sa;
            bn[i] = b[i] / sb;
        }
        const double d = relative_entropy(DiscreteDistribution::from_probs(an),
                                          DiscreteDistribution::from_probs(bn));
        CHECK(r.slack == doctest::Approx(sa * d).epsilon(1e-10));
    }
}

TEST_CASE("binary entropy endpoints, symmetry, and reference value") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(binary_entropy(0.1) == doctest::Approx(0.32508297339144823951).epsilon(1e-15));
    CHECK(binary_entropy(0.3) == binary_entropy(0.7));
    CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.1), DomainError);
}
