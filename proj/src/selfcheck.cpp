#include "infotherm/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "infotherm/adia_models.hpp"
#include "infotherm/dpt.hpp"
#include "infotherm/ensemble.hpp"
#include "infotherm/errors.hpp"
#include "infotherm/exponents.hpp"
#include "infotherm/gibbs.hpp"
#include "infotherm/iso_models.hpp"
#include "infotherm/protocol.hpp"
#include "infotherm/quadrature.hpp"

namespace infotherm {

namespace {

// scaled residual: |a - b| relative to 1 + the larger magnitude
double resid(double a, double b) {
    return std::fabs(a - b) / (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    double log_uniform(double a, double b) {
        return std::exp(uniform(std::log(a), std::log(b)));
    }
    std::size_t index(std::size_t lo, std::size_t hi) { // inclusive
        return lo + static_cast<std::size_t>(unit() * static_cast<double>(hi - lo + 1));
    }

    std::vector<double> energies(std::size_t m, double scale) {
        std::vector<double> e(m);
        for (auto& x : e) x = uniform(-scale, scale);
        return e;
    }

    DiscreteDistribution distribution(std::size_t m) {
        std::vector<double> w(m);
        double s = 0.0;
        for (auto& x : w) {
            x = uniform(0.05, 1.0);
            s += x;
        }
        for (auto& x : w) x /= s;
        return DiscreteDistribution::from_probs(w);
    }

private:
    std::mt19937_64 gen_;
};

struct Gate {
    double tol;
    double worst = 0.0;
    bool ok() const { return worst <= tol; }
    void see(double r) { worst = std::max(worst, r); }
};

double tolerance_for(const SelfcheckOptions& opts, const std::string& name, double fallback) {
    for (const auto& [n, t] : opts.tolerance_overrides)
        if (n == name) {
            if (!(t > 0.0)) throw DomainError("selfcheck: tolerance overrides must be positive");
            return t;
        }
    return fallback;
}

CheckResult finish(const std::string& name, const Gate& g, std::string detail) {
    return {name, g.ok(), g.worst, g.tol, std::move(detail)};
}

CheckResult check_ensemble_bookkeeping(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = rng.index(2, 64);
        const double beta = rng.log_uniform(1e-3, 1e3);
        const Hamiltonian h(rng.energies(m, 2.0 / beta));
        const EnsembleReport r = ensemble_report(h, InverseTemperature(beta));
        g.see(resid(r.entropy_nats, r.log_partition + beta * r.internal_energy));
        g.see(resid(r.free_energy, -r.log_partition / beta));
        g.see(resid(r.free_energy, r.internal_energy - r.entropy_nats / beta));
    }
    return finish("ensemble-bookkeeping", g,
                  "Sigma = lnZ + beta E and both free-energy readings, 200 random ensembles");
}

CheckResult check_energy_derivative(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = rng.index(2, 32);
        const double beta = rng.log_uniform(1e-2, 1e2);
        const Hamiltonian h(rng.energies(m, 2.0 / beta));
        const double e = ensemble_report(h, InverseTemperature(beta)).internal_energy;
        const double d = 1e-6 * beta;
        const double fd = (log_partition(h, InverseTemperature(beta + d)) -
                           log_partition(h, InverseTemperature(beta - d))) /
                          (2.0 * d);
        g.see(std::fabs(-fd - e) / (1.0 + std::fabs(e)));
    }
    return finish("ensemble-energy-derivative", g,
                  "E against a centered difference of lnZ in beta");
}

CheckResult check_gibbs_decomposition(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = rng.index(2, 64);
        const double beta = rng.log_uniform(1e-3, 1e3);
        const Hamiltonian h0(rng.energies(m, 2.0 / beta));
        const Hamiltonian h1(rng.energies(m, 2.0 / beta));
        const InverseTemperature b(beta);
        const GibbsDecomposition d = gibbs_decomposition(h0, h1, b);
        const double div = relative_entropy(boltzmann(h0, b), boltzmann(h1, b));
        g.see(resid(d.avg_work - d.delta_f, d.dissipation));
        g.see(resid(d.dissipation, div / beta));
        g.see(std::max(0.0, -d.dissipation));
    }
    return finish("gibbs-decomposition", g,
                  "work minus free-energy change equals kT times the divergence, and is >= 0");
}

CheckResult check_log_sum_slack(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = rng.index(2, 32);
        std::vector<double> a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = rng.uniform(0.0, 3.0);
            b[i] = rng.uniform(0.05, 3.0);
        }
        const LsiReport r = log_sum_inequality(a, b);
        g.see(resid(r.lhs - r.rhs, r.slack));
        g.see(std::max(0.0, -r.slack));
    }
    return finish("log-sum-slack", g, "log-sum inequality slack is consistent and nonnegative");
}

CheckResult check_adiabatic_slack(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = rng.index(2, 64);
        const double b1 = rng.log_uniform(1e-2, 1e1);
        const double b0 = b1 * rng.uniform(1.5, 8.0); // heating: beta drops
        const Hamiltonian h(rng.energies(m, 2.0 / b1));
        const AdiabaticReport r =
            adiabatic_clausius(h, InverseTemperature(b0), InverseTemperature(b1));
        const double div =
            relative_entropy(boltzmann(h, InverseTemperature(b0)), boltzmann(h, InverseTemperature(b1)));
        g.see(resid(r.delta_sigma - r.heat_over_kT1, r.slack));
        g.see(resid(r.slack, div));
        g.see(std::max(0.0, -r.slack));
        g.see(std::max(0.0, -r.delta_sigma)); // heating raises entropy
    }
    return finish("adiabatic-slack", g,
                  "Clausius slack equals the divergence between the two equilibria");
}

CheckResult check_dpt_gap(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t nv = rng.index(2, 5), nu = rng.index(2, 5), nx = rng.index(2, 5);
        const DiscreteDistribution pv = rng.distribution(nv);
        std::vector<double> ugv(nu * nv), xgu(nx * nu);
        // tables are stored row-per-conditioning-symbol
        for (std::size_t v = 0; v < nv; ++v) {
            double s = 0.0;
            for (std::size_t u = 0; u < nu; ++u) s += (ugv[v * nu + u] = rng.uniform(0.05, 1.0));
            for (std::size_t u = 0; u < nu; ++u) ugv[v * nu + u] /= s;
        }
        for (std::size_t u = 0; u < nu; ++u) {
            double s = 0.0;
            for (std::size_t x = 0; x < nx; ++x) s += (xgu[u * nx + x] = rng.uniform(0.05, 1.0));
            for (std::size_t x = 0; x < nx; ++x) xgu[u * nx + x] /= s;
        }
        const JointTriple j = make_markov(pv, ConditionalTable(ugv, nv, nu),
                                          ConditionalTable(xgu, nu, nx));
        const DptReport r = dpt_report(j);
        g.see(resid(r.gap, r.expected_divergence));
        g.see(std::max(0.0, -r.gap));
        g.see(std::fabs(r.markov_defect)); // the chain is built to satisfy it
        const ConditionalEntropyPair ce = conditioning_reduces_entropy(j);
        g.see(std::max(0.0, ce.h_x_given_uv - ce.h_x_given_v));
    }
    return finish("dpt-gap", g,
                  "processing gap equals the expected divergence on 200 random chains");
}

CheckResult check_fano_bound(double tol) {
    Gate g{tol};
    g.see(resid(fano_bound(100, 1.0, 0.5), 0.49));
    g.see(std::fabs(fano_bound(100, 1.0, 2.0)));       // capacity above rate: bound 0
    g.see(std::max(0.0, -fano_bound(3, 2.0, 0.1)));    // never negative
    g.see(std::max(0.0, fano_bound(5, 1.0, 0.2) - 1.0));
    const double loose = fano_bound(1000, 1.0, 0.3), tight = fano_bound(1000, 1.0, 0.6);
    g.see(std::max(0.0, tight - loose)); // more capacity, smaller bound
    return finish("fano-bound", g, "converse bound edge cases and monotonicity");
}

CheckResult check_ising(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 25; ++trial) {
        const double J = rng.uniform(-1.5, 1.5);
        const double K = rng.uniform(-1.0, 1.0);
        const std::int64_t n = static_cast<std::int64_t>(rng.index(1, 12));
        const IsingMismatch m(J, K, n);
        const IsingRedundancy r = ising_redundancy(m);
        g.see(std::fabs(r.edge_residual));
        const IsingKernels k = ising_kernels(J, K);
        g.see(resid(r.per_symbol_rate, std::log(k.z1) - std::log(k.z0)));
        const GibbsDecomposition w = ising_work_decomposition(m);
        g.see(resid(w.dissipation, r.total_nats));
        g.see(resid(w.avg_work - w.delta_f, r.total_nats));
    }
    // field = 0 removes the mismatch entirely
    g.see(std::fabs(ising_redundancy(IsingMismatch(0.7, 0.0, 50)).total_nats));
    return finish("ising-consistency", g,
                  "chain redundancy, normalizers, and the work split agree");
}

CheckResult check_runlength(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 100; ++trial) {
        const double mu0 = -rng.log_uniform(0.05, 4.0);
        const double mu1 = -rng.log_uniform(0.05, 4.0);
        const RunLengthRedundancy r = runlength_redundancy(mu0, mu1);
        g.see(resid(r.divergence, r.pressure_slack));
        g.see(std::max(0.0, -r.divergence));
    }
    g.see(std::fabs(runlength_redundancy(-0.7, -0.7).divergence));
    return finish("runlength-consistency", g,
                  "series and pressure forms of the redundancy agree and vanish at equality");
}

CheckResult check_gaussian_channel(double tol) {
    Gate g{tol};
    const double pairs[][3] = {{2.0, 1.0, 1.0}, {10.0, 0.5, 2.0}, {5.0, 0.2, 0.7}};
    for (const auto& p : pairs) {
        const double b0 = p[0], b1 = p[1], s2 = p[2];
        const double closed = gaussian_entropy_increase(b0, b1);
        const QuadCheck q = heat_capacity_check([](double) { return 0.5; }, 1.0 / b0, 1.0 / b1, closed);
        g.see(std::fabs(q.discrepancy));
        // the information difference read three ways
        const double imm = immse_entropy_increase(b0, b1, s2);
        const double idiff = gaussian_mutual_information(s2, b0) - gaussian_mutual_information(s2, b1);
        const QuadratureResult mm = adaptive_simpson(
            [&](double beta) { return 0.5 * gaussian_mmse(s2, beta); }, b1, b0, 1e-11, 60);
        g.see(resid(imm, idiff));
        g.see(resid(imm, mm.value));
    }
    g.see(std::fabs(gaussian_heat_capacity(kPosInf, 3.0) - 0.5));
    g.see(std::fabs(gaussian_heat_capacity(1e12, 1.0) - 0.5)); // saturation
    return finish("gaussian-channel", g,
                  "heating entropy, mutual-information difference, and mmse integral agree");
}

CheckResult check_bsc_channel(double tol) {
    Gate g{tol};
    const double levels[] = {0.5, 1.0, 2.0};
    for (double e0 : levels) {
        const double b0 = 2.5, b1 = 0.4;
        const double closed = bsc_entropy_increase(e0, b0, b1);
        const QuadCheck q = heat_capacity_check([e0](double t) { return bsc_heat_capacity(e0, t); },
                                                1.0 / b0, 1.0 / b1, closed);
        g.see(std::fabs(q.discrepancy));
        g.see(std::max(0.0, -closed)); // heating raises entropy
    }
    const double eps2 = degrade_crossover(0.1, 0.2);
    g.see(resid(eps2, 0.125));
    g.see(std::fabs(degrade_crossover(0.5, 0.5)));
    return finish("bsc-channel", g,
                  "Schottky integral matches the entropy change; cascade degrades exactly");
}

CheckResult check_tilted_family(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = rng.index(2, 8);
        const TiltedFamily f(rng.distribution(m), rng.distribution(m));
        g.see(std::fabs(f.log_partition(0.0)));
        g.see(std::fabs(f.log_partition(1.0)));
        for (int i = 0; i <= 20; ++i)
            g.see(std::max(0.0, f.log_partition(i / 20.0))); // lnZ <= 0 on [0,1]
        g.see(std::max(0.0, f.log_partition(0.5) -
                                0.5 * (f.log_partition(0.45) + f.log_partition(0.55))));
        const double lambda = rng.uniform(0.05, 0.95);
        const ExponentPair e = exponent_pair(f, lambda);
        g.see(resid(e.e1 - e.e0, -f.log_partition_derivative(lambda)));
        const DiscreteDistribution q = f.tilted(lambda);
        g.see(resid(e.e0, relative_entropy(q, f.p0())));
        g.see(resid(e.e1, relative_entropy(q, f.p1())));
    }
    return finish("tilted-family", g,
                  "lnZ endpoints, sign, convexity, and the exponent pair readings");
}

CheckResult check_chernoff_area(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = rng.index(2, 6);
        const TiltedFamily f(rng.distribution(m), rng.distribution(m));
        const ChernoffPoint c = chernoff_point(f);
        const ExponentPair e = exponent_pair(f, c.lambda_star);
        g.see(std::fabs(e.e0 - e.e1));
        g.see(resid(c.exponent, e.e0));
        const AreaEquality a = area_equality(f);
        g.see(std::fabs(a.gap) * 0.1); // quadrature term, held to 10x the gate
    }
    return finish("chernoff-area", g,
                  "exponents equalize at the Chernoff tilt; the two areas agree");
}

CheckResult check_error_oracle(double tol) {
    Gate g{tol};
    const TiltedFamily f(DiscreteDistribution::from_probs(std::vector<double>{0.9, 0.1}),
                         DiscreteDistribution::from_probs(std::vector<double>{0.6, 0.4}));
    const double lambda = 0.5;
    const ExponentPair e = exponent_pair(f, lambda);
    const ErrorOracle o = exact_error_oracle(f, 1000, lambda);
    g.see(std::fabs(o.slope0 - e.e0));
    g.see(std::fabs(o.slope1 - e.e1));
    return finish("error-oracle", g,
                  "finite-block error slopes sit near the asymptotic exponents at n = 1000");
}

CheckResult check_jarzynski(Rng& rng, double tol) {
    Gate g{tol};
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = rng.index(2, 32);
        const double beta = rng.log_uniform(1e-3, 1e3);
        const Hamiltonian h0(rng.energies(m, 2.0 / beta));
        const Hamiltonian h1(rng.energies(m, 2.0 / beta));
        const ProtocolSchedule s = ProtocolSchedule::uniform(rng.index(1, 16));
        const WorkReport r = protocol_work(h0, h1, InverseTemperature(beta), s);
        g.see(std::fabs(r.jarzynski_lhs - r.jarzynski_rhs));
        g.see(std::max(0.0, -r.dissipation));
        g.see(resid(r.avg_work - r.delta_f, r.dissipation));
    }
    return finish("jarzynski", g,
                  "stepwise exponential averages reproduce the free-energy ratio exactly");
}

CheckResult check_schedule_refinement(Rng& rng, double tol) {
    Gate g{tol};
    const std::size_t m = 12;
    const Hamiltonian h0(rng.energies(m, 1.5));
    const Hamiltonian h1(rng.energies(m, 1.5));
    const InverseTemperature beta(1.0);
    const std::vector<std::size_t> counts = {4, 16, 64};
    const std::vector<double> diss = dissipation_vs_steps(h0, h1, beta, counts);
    g.see(std::max(0.0, diss[1] - diss[0]));
    g.see(std::max(0.0, diss[2] - diss[1]));
    const double uniform8 = protocol_work(h0, h1, beta, ProtocolSchedule::uniform(8)).dissipation;
    const ProtocolSchedule tuned = optimize_schedule(h0, h1, beta, 8);
    const double refined = protocol_work(h0, h1, beta, tuned).dissipation;
    g.see(std::max(0.0, refined - uniform8));
    const WorkSample mc = sample_work(h0, h1, beta, tuned, 7, 4000);
    const WorkReport exact = protocol_work(h0, h1, beta, tuned);
    const double sd = std::sqrt(protocol_work_variance(h0, h1, beta, tuned) / 4000.0);
    g.see(std::max(0.0, std::fabs(mc.mean - exact.avg_work) - 5.0 * sd));
    return finish("schedule-refinement", g,
                  "finer and tuned schedules never dissipate more; sampling matches the mean");
}

} // namespace

std::vector<CheckResult> run_selfchecks(const SelfcheckOptions& opts) {
    Rng rng(opts.seed);
    std::vector<CheckResult> out;
    const auto tol = [&](const char* name, double fallback) {
        return tolerance_for(opts, name, fallback);
    };
    out.push_back(check_ensemble_bookkeeping(rng, tol("ensemble-bookkeeping", 1e-12)));
    out.push_back(check_energy_derivative(rng, tol("ensemble-energy-derivative", 1e-6)));
    out.push_back(check_gibbs_decomposition(rng, tol("gibbs-decomposition", 1e-12)));
    out.push_back(check_log_sum_slack(rng, tol("log-sum-slack", 1e-12)));
    out.push_back(check_adiabatic_slack(rng, tol("adiabatic-slack", 1e-12)));
    out.push_back(check_dpt_gap(rng, tol("dpt-gap", 1e-10)));
    out.push_back(check_fano_bound(tol("fano-bound", 1e-12)));
    out.push_back(check_ising(rng, tol("ising-consistency", 1e-9)));
    out.push_back(check_runlength(rng, tol("runlength-consistency", 1e-12)));
    out.push_back(check_gaussian_channel(tol("gaussian-channel", 1e-9)));
    out.push_back(check_bsc_channel(tol("bsc-channel", 1e-8)));
    out.push_back(check_tilted_family(rng, tol("tilted-family", 1e-12)));
    out.push_back(check_chernoff_area(rng, tol("chernoff-area", 1e-9)));
    out.push_back(check_error_oracle(tol("error-oracle", 0.05)));
    out.push_back(check_jarzynski(rng, tol("jarzynski", 1e-12)));
    out.push_back(check_schedule_refinement(rng, tol("schedule-refinement", 1e-9)));
    return out;
}

} // namespace infotherm
