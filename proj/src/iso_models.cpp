#include "infotherm/iso_models.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "infotherm/errors.hpp"

namespace infotherm {

namespace {

constexpr std::array<double, 2> kSpin = {-1.0, 1.0};

struct LogKernels {
    // [prev][next] log conditional probabilities
    std::array<std::array<double, 2>, 2> lp0;
    std::array<std::array<double, 2>, 2> lp1;
    double ln_z0;            // ln 2cosh(J)
    double ln_z1;            // (1/2)(ln 2cosh(J+K) + ln 2cosh(J-K))
    std::array<double, 2> ln_zeta;
    double b;                // ln cosh(J+K) - ln cosh(J-K)
};

LogKernels log_kernels(double J, double K) {
    LogKernels k;
    k.ln_z0 = ln_two_cosh(J);
    const double lp = ln_two_cosh(J + K), lm = ln_two_cosh(J - K);
    k.ln_z1 = 0.5 * (lp + lm);
    k.b = lp - lm;
    for (int s = 0; s < 2; ++s) {
        k.ln_zeta[s] = ln_two_cosh(J * kSpin[s] + K);
        for (int x = 0; x < 2; ++x) {
            k.lp0[s][x] = J * kSpin[x] * kSpin[s] - k.ln_z0;
            k.lp1[s][x] = J * kSpin[x] * kSpin[s] + K * kSpin[x] - k.ln_zeta[s];
        }
        // the per-branch normalizer must match the unified z1-based form
        const double unified = k.ln_z1 + 0.5 * kSpin[s] * k.b;
        if (std::fabs(k.ln_zeta[s] - unified) > 1e-12 * (1.0 + std::fabs(k.ln_zeta[s])))
            throw NumericError("ising: zeta branch and unified forms disagree");
    }
    return k;
}

// D(p0(.|s) || p1(.|s)) for both previous-spin branches.
std::array<long double, 2> step_divergences(const LogKernels& k) {
    std::array<long double, 2> d{};
    for (int s = 0; s < 2; ++s) {
        StableSum t;
        for (int x = 0; x < 2; ++x)
            t.add(std::exp(static_cast<long double>(k.lp0[s][x])) *
                  (static_cast<long double>(k.lp0[s][x]) - k.lp1[s][x]));
        d[s] = t.value_l();
    }
    return d;
}

} // namespace

IsingMismatch::IsingMismatch(double coupling_, double field_, std::int64_t length_)
    : coupling(coupling_), field(field_), length(length_) {
    if (!std::isfinite(coupling) || !std::isfinite(field))
        throw DomainError("ising: coupling and field must be finite");
    if (std::fabs(coupling) + std::fabs(field) > 300.0)
        throw DomainError("ising: |coupling| + |field| must be <= 300");
    if (length < 1) throw DomainError("ising: chain length must be >= 1");
}

IsingKernels ising_kernels(double coupling, double field) {
    const IsingMismatch m(coupling, field, 1); // parameter validation
    const LogKernels k = log_kernels(m.coupling, m.field);
    IsingKernels out;
    for (int s = 0; s < 2; ++s)
        for (int x = 0; x < 2; ++x) {
            out.p0[s][x] = std::exp(k.lp0[s][x]);
            out.p1[s][x] = std::exp(k.lp1[s][x]);
        }
    out.z0 = std::exp(k.ln_z0);
    out.z1 = std::exp(k.ln_z1);
    out.zeta = {std::exp(k.ln_zeta[0]), std::exp(k.ln_zeta[1])};
    return out;
}

double effective_field(double coupling, double field) {
    const IsingMismatch m(coupling, field, 1);
    return m.field + 0.5 * (ln_two_cosh(m.coupling - m.field) - ln_two_cosh(m.coupling + m.field));
}

IsingRedundancy ising_redundancy(const IsingMismatch& m) {
    const LogKernels k = log_kernels(m.coupling, m.field);
    const auto d = step_divergences(k);

    // boundary spin from the reference chain's stationary law (uniform);
    // propagate the reference marginal and add the conditional divergence
    // of each step
    std::array<long double, 2> marg = {0.5L, 0.5L};
    StableSum total;
    for (std::int64_t i = 0; i < m.length; ++i) {
        total.add(marg[0] * d[0] + marg[1] * d[1]);
        const std::array<long double, 2> next = {
            marg[0] * std::exp(static_cast<long double>(k.lp0[0][0])) +
                marg[1] * std::exp(static_cast<long double>(k.lp0[1][0])),
            marg[0] * std::exp(static_cast<long double>(k.lp0[0][1])) +
                marg[1] * std::exp(static_cast<long double>(k.lp0[1][1]))};
        marg = next;
    }

    const long double rate = 0.5L * (d[0] + d[1]);
    IsingRedundancy r;
    r.total_nats = total.value();
    r.per_symbol_rate = static_cast<double>(rate);
    r.edge_residual = static_cast<double>(total.value_l() - rate * m.length);
    return r;
}

GibbsDecomposition ising_work_decomposition(const IsingMismatch& m) {
    const LogKernels k = log_kernels(m.coupling, m.field);
    const double J = m.coupling, K = m.field;
    const std::int64_t n = m.length;

    if (n <= 20) {
        // full product space, one boundary value at a time
        const std::size_t count = std::size_t{1} << n;
        GibbsDecomposition acc{0.0, 0.0, 0.0};
        for (int s0 = 0; s0 < 2; ++s0) {
            std::vector<double> e0(count), e1(count);
            for (std::size_t mask = 0; mask < count; ++mask) {
                double coupling_sum = 0.0, spin_sum = 0.0, prev_sum = 0.0;
                double prev = kSpin[s0];
                for (std::int64_t i = 0; i < n; ++i) {
                    const double x = (mask >> i) & 1 ? 1.0 : -1.0;
                    coupling_sum += x * prev;
                    spin_sum += x;
                    prev_sum += prev;
                    prev = x;
                }
                e0[mask] = -J * coupling_sum;
                e1[mask] = -J * coupling_sum - K * spin_sum + 0.5 * k.b * prev_sum;
            }
            const GibbsDecomposition g = gibbs_decomposition(
                Hamiltonian(std::move(e0)), Hamiltonian(std::move(e1)), InverseTemperature(1.0));
            acc.avg_work += 0.5 * g.avg_work;
            acc.delta_f += 0.5 * g.delta_f;
            acc.dissipation += 0.5 * g.dissipation;
        }
        return acc;
    }

    // streaming path: reference-chain moments for the work, log-domain
    // transfer recursions for both partition functions
    std::array<long double, 2> marg = {0.5L, 0.5L};
    StableSum spin_sum, prev_sum;
    for (std::int64_t i = 0; i < n; ++i) {
        prev_sum.add(marg[1] - marg[0]);
        long double mean_next = 0.0L;
        for (int s = 0; s < 2; ++s)
            for (int x = 0; x < 2; ++x)
                mean_next += marg[s] * std::exp(static_cast<long double>(k.lp0[s][x])) * kSpin[x];
        spin_sum.add(mean_next);
        const std::array<long double, 2> next = {
            marg[0] * std::exp(static_cast<long double>(k.lp0[0][0])) +
                marg[1] * std::exp(static_cast<long double>(k.lp0[1][0])),
            marg[0] * std::exp(static_cast<long double>(k.lp0[0][1])) +
                marg[1] * std::exp(static_cast<long double>(k.lp0[1][1]))};
        marg = next;
    }
    const long double avg_work =
        -static_cast<long double>(K) * spin_sum.value_l() +
        0.5L * static_cast<long double>(k.b) * prev_sum.value_l();

    long double delta_f_acc = 0.0L;
    for (int s0 = 0; s0 < 2; ++s0) {
        // backward-map values ln sum over suffixes, per current spin
        std::array<long double, 2> la0, la1;
        for (int s = 0; s < 2; ++s) { la0[s] = 0.0L; la1[s] = 0.0L; }
        auto lse2 = [](long double a, long double b) {
            const long double m2 = a > b ? a : b;
            return m2 + std::log(std::exp(a - m2) + std::exp(b - m2));
        };
        for (std::int64_t i = 0; i < n; ++i) {
            std::array<long double, 2> n0, n1;
            for (int s = 0; s < 2; ++s) {
                n0[s] = lse2(J * kSpin[0] * kSpin[s] + la0[0], J * kSpin[1] * kSpin[s] + la0[1]);
                n1[s] = lse2(J * kSpin[0] * kSpin[s] + K * kSpin[0] -
                                 0.5L * static_cast<long double>(k.b) * kSpin[s] + la1[0],
                             J * kSpin[1] * kSpin[s] + K * kSpin[1] -
                                 0.5L * static_cast<long double>(k.b) * kSpin[s] + la1[1]);
            }
            la0 = n0;
            la1 = n1;
        }
        delta_f_acc += 0.5L * (la0[s0] - la1[s0]);
    }

    GibbsDecomposition r;
    r.avg_work = static_cast<double>(avg_work);
    r.delta_f = static_cast<double>(delta_f_acc);
    r.dissipation = ising_redundancy(m).total_nats;
    return r;
}

RunLengthLaw runlength_law(double mu) {
    if (!std::isfinite(mu) || mu >= 0.0)
        throw DomainError("runlength: chemical potential must be finite and < 0");
    RunLengthLaw r;
    r.log_partition = -std::log(-std::expm1(mu));
    r.mean_run = 1.0 / std::expm1(-mu);
    return r;
}

RunLengthRedundancy runlength_redundancy(double mu0, double mu1) {
    if (!std::isfinite(mu0) || mu0 >= 0.0 || !std::isfinite(mu1) || mu1 >= 0.0)
        throw DomainError("runlength: chemical potentials must be finite and < 0");

    const long double m0 = mu0, m1 = mu1;
    const long double ln_xi0 = -std::log(-std::expm1(m0));
    const long double ln_xi1 = -std::log(-std::expm1(m1));
    const long double mean0 = 1.0L / std::expm1(-m0);
    const long double closed = (ln_xi1 - ln_xi0) - (m1 - m0) * mean0;

    RunLengthRedundancy r;
    r.pressure_slack = static_cast<double>(closed);

    // term-by-term divergence of the two geometric laws, with a geometric
    // tail bound driving the cutoff
    constexpr std::int64_t kMaxTerms = 4'000'000;
    const long double dmu = m0 - m1, dxi = ln_xi1 - ln_xi0;
    StableSum series;
    bool converged = false;
    for (std::int64_t j = 0; j < kMaxTerms; ++j) {
        const long double lp0 = m0 * j - ln_xi0;
        series.add(std::exp(lp0) * (dmu * j + dxi));
        const long double tail =
            std::exp(m0 * (j + 1)) *
            (std::fabs(dmu) * ((j + 1) + mean0) + std::fabs(dxi));
        if (tail < 1e-17L) { converged = true; break; }
    }
    if (converged) {
        r.divergence = series.value();
        if (std::fabs(r.divergence - r.pressure_slack) >
            1e-12 * (1.0 + std::fabs(r.pressure_slack)))
            throw NumericError("runlength: series and closed-form redundancy disagree");
    } else {
        // mu0 so close to 0 that the series cap was hit; fall back to the
        // closed form (see header)
        r.divergence = r.pressure_slack;
    }
    return r;
}

} // namespace infotherm
