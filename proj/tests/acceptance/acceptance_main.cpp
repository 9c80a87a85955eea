#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "infotherm/adia_models.hpp"
#include "infotherm/dpt.hpp"
#include "infotherm/ensemble.hpp"
#include "infotherm/exponents.hpp"
#include "infotherm/gibbs.hpp"
#include "infotherm/iso_models.hpp"
#include "infotherm/protocol.hpp"
#include "infotherm/quadrature.hpp"

using namespace infotherm;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;
int g_failures = 0;

struct Rng {
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double log_uniform(double lo, double hi) {
        return std::exp(std::log(lo) + unit() * (std::log(hi) - std::log(lo)));
    }
    std::size_t index(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(unit() * static_cast<double>(hi - lo + 1)) %
                        (hi - lo + 1);
    }
    std::vector<double> energies(std::size_t m, double scale) {
        std::vector<double> e(m);
        for (auto& x : e) x = (2.0 * unit() - 1.0) * scale;
        return e;
    }
    std::vector<double> distribution(std::size_t m) {
        std::vector<double> p(m);
        double s = 0.0;
        for (auto& x : p) { x = 0.05 + unit(); s += x; }
        for (auto& x : p) x /= s;
        return p;
    }
    std::mt19937_64 gen;
};

// Each criterion body returns an empty string on success or a failure
// description; the harness adds the timing gate.
void criterion(const std::string& name, double budget_seconds,
               const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict;
    try {
        verdict = body();
    } catch (const std::exception& e) {
        verdict = std::string("unexpected exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (verdict.empty() && elapsed > budget_seconds) {
        std::ostringstream ss;
        ss << "exceeded the " << budget_seconds << " s budget";
        verdict = ss.str();
    }
    std::printf("[%s] %s (%.2f s)%s%s\n", verdict.empty() ? "PASS" : "FAIL", name.c_str(),
                elapsed, verdict.empty() ? "" : ": ", verdict.c_str());
    std::fflush(stdout);
    if (!verdict.empty()) ++g_failures;
}

std::string fail_fmt(const char* what, double worst, double tol) {
    std::ostringstream ss;
    ss << what << ": worst " << worst << " vs tolerance " << tol;
    return ss.str();
}

// ---- abrupt switching: work split and bookkeeping ----

std::string check_work_split() {
    Rng rng(101);
    double worst_identity = 0.0, worst_negative = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = rng.index(2, 64);
        const double beta = rng.log_uniform(1e-3, 1e3);
        const Hamiltonian h0(rng.energies(m, 2.0));
        const Hamiltonian h1(rng.energies(m, 2.0));
        const InverseTemperature b(beta);
        const GibbsDecomposition g = gibbs_decomposition(h0, h1, b);
        const double kt_d = relative_entropy(boltzmann(h0, b), boltzmann(h1, b)) / beta;
        worst_identity =
            std::max(worst_identity, std::fabs(g.avg_work - g.delta_f - kt_d));
        worst_negative = std::max(worst_negative, -g.dissipation);
    }
    if (worst_identity >= 1e-12)
        return fail_fmt("work - dF - kT*D residual", worst_identity, 1e-12);
    if (worst_negative > 1e-12) return fail_fmt("negative dissipation", worst_negative, 1e-12);
    return "";
}

std::string check_bookkeeping() {
    Rng rng(102);
    double worst_sigma = 0.0, worst_free = 0.0, worst_fd = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = rng.index(2, 64);
        const double beta = rng.log_uniform(1e-3, 1e3);
        const Hamiltonian h(rng.energies(m, 2.0));
        const EnsembleReport r = ensemble_report(h, InverseTemperature(beta));
        worst_sigma = std::max(
            worst_sigma, std::fabs(r.entropy_nats - (r.log_partition + beta * r.internal_energy)) /
                             (1.0 + std::fabs(r.entropy_nats)));
        worst_free = std::max(
            worst_free, std::fabs(r.free_energy - (r.internal_energy - r.entropy_nats / beta)) /
                            (1.0 + std::fabs(r.free_energy)));

        const double d = 1e-6 * beta;
        const double fd = (log_partition(h, InverseTemperature(beta + d)) -
                           log_partition(h, InverseTemperature(beta - d))) /
                          (2.0 * d);
        worst_fd = std::max(worst_fd, std::fabs(-fd - r.internal_energy) /
                                          (1.0 + std::fabs(r.internal_energy)));
    }
    if (worst_sigma >= 1e-14) return fail_fmt("Sigma identity", worst_sigma, 1e-14);
    if (worst_free >= 1e-14) return fail_fmt("free-energy identity", worst_free, 1e-14);
    if (worst_fd >= 1e-6) return fail_fmt("energy-derivative residual", worst_fd, 1e-6);
    return "";
}

// ---- information gap against a brute-force joint-table oracle ----

std::string check_information_gap() {
    Rng rng(103);
    double worst = 0.0, most_negative = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t nv = rng.index(2, 5), nu = rng.index(2, 5), nx = rng.index(2, 5);
        auto table = [&](std::size_t rows, std::size_t cols) {
            std::vector<double> t(rows * cols);
            for (std::size_t r = 0; r < rows; ++r) {
                double s = 0.0;
                for (std::size_t c = 0; c < cols; ++c) {
                    t[r * cols + c] = 0.05 + rng.unit();
                    s += t[r * cols + c];
                }
                for (std::size_t c = 0; c < cols; ++c) t[r * cols + c] /= s;
            }
            return ConditionalTable(std::move(t), rows, cols);
        };
        const JointTriple j =
            make_markov(DiscreteDistribution::from_probs(rng.distribution(nv)),
                        table(nv, nu), table(nu, nx));
        const DptReport r = dpt_report(j);

        // expected conditional divergence straight off the joint table
        std::vector<double> puv(nu * nv, 0.0), pv(nv, 0.0), pxv(nx * nv, 0.0);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t u = 0; u < nu; ++u)
                for (std::size_t v = 0; v < nv; ++v) {
                    puv[u * nv + v] += j.p(x, u, v);
                    pv[v] += j.p(x, u, v);
                    pxv[x * nv + v] += j.p(x, u, v);
                }
        double expected = 0.0;
        for (std::size_t u = 0; u < nu; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                if (puv[u * nv + v] <= 0.0) continue;
                for (std::size_t x = 0; x < nx; ++x) {
                    const double pxuv = j.p(x, u, v);
                    if (pxuv <= 0.0) continue;
                    const double cond_uv = pxuv / puv[u * nv + v];
                    const double cond_v = pxv[x * nv + v] / pv[v];
                    expected += pxuv * std::log(cond_uv / cond_v);
                }
            }
        worst = std::max(worst, std::fabs(r.gap - expected));
        most_negative = std::max(most_negative, -r.gap);
    }
    if (worst >= 1e-10) return fail_fmt("gap vs brute-force divergence", worst, 1e-10);
    if (most_negative > 0.0) return fail_fmt("negative gap", most_negative, 0.0);
    return "";
}

// ---- chain mismatch redundancy ----

std::string check_chain_redundancy() {
    double worst = 0.0;
    for (const auto& [J, K] : std::vector<std::pair<double, double>>{{0.5, 0.3}, {-1.2, 0.8}}) {
        const IsingKernels kern = ising_kernels(J, K);
        for (int n = 1; n <= 12; ++n) {
            long double total = 0.0L;
            for (int s0 = 0; s0 < 2; ++s0) {
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                    long double l0 = 0.0L, l1 = 0.0L;
                    int prev = s0;
                    for (int i = 0; i < n; ++i) {
                        const int x = static_cast<int>((mask >> i) & 1);
                        l0 += std::log(static_cast<long double>(kern.p0[prev][x]));
                        l1 += std::log(static_cast<long double>(kern.p1[prev][x]));
                        prev = x;
                    }
                    total += 0.5L * std::exp(l0) * (l0 - l1);
                }
            }
            const IsingRedundancy r = ising_redundancy(IsingMismatch(J, K, n));
            worst = std::max(worst,
                             std::fabs(r.total_nats - static_cast<double>(total)));
        }
    }
    if (worst >= 1e-9) return fail_fmt("chain vs exhaustive divergence", worst, 1e-9);

    const IsingRedundancy zero = ising_redundancy(IsingMismatch(0.7, 0.0, 4000));
    if (zero.total_nats != 0.0) return fail_fmt("nonzero redundancy without mismatch",
                                                zero.total_nats, 0.0);

    const double r3 = ising_redundancy(IsingMismatch(0.5, 0.3, 1000)).edge_residual;
    const double r4 = ising_redundancy(IsingMismatch(0.5, 0.3, 10000)).edge_residual;
    if (std::fabs(r4 - r3) >= 1e-9)
        return fail_fmt("edge residual drift", std::fabs(r4 - r3), 1e-9);
    return "";
}

// ---- run-length pressure identity over a potential grid ----

std::string check_runlength_grid() {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double mu0 = -std::exp(std::log(0.02) + (std::log(6.9) - std::log(0.02)) *
                                                          (i / 49.0));
        for (int j = 0; j < 50; ++j) {
            const double mu1 = -std::exp(std::log(0.02) + (std::log(6.9) - std::log(0.02)) *
                                                              (j / 49.0));
            const RunLengthRedundancy r = runlength_redundancy(mu0, mu1);
            worst = std::max(worst, std::fabs(r.divergence - r.pressure_slack));
            if (r.divergence < 0.0) return fail_fmt("negative divergence", r.divergence, 0.0);
        }
    }
    if (worst >= 1e-12) return fail_fmt("series vs closed form", worst, 1e-12);
    return "";
}

// ---- gaussian stage: Clausius quadrature and I-MMSE three ways ----

std::string check_gaussian_clausius() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double worst_quad = 0.0, worst_three = 0.0, worst_limit = 0.0;
    for (const auto& [b0, b1] : std::vector<std::pair<double, double>>{
             {2.0, 1.0}, {10.0, 0.5}, {1.5, 1.2}}) {
        const QuadCheck q = heat_capacity_check(
            [](double t) { return gaussian_heat_capacity(inf, t); }, 1.0 / b0, 1.0 / b1,
            gaussian_entropy_increase(b0, b1));
        worst_quad = std::max(worst_quad, q.discrepancy);

        for (const double s2 : {0.5, 1.0, 4.0}) {
            const double closed = immse_entropy_increase(b0, b1, s2);
            const double mi_diff = gaussian_mutual_information(s2, b0) -
                                   gaussian_mutual_information(s2, b1);
            const double quad =
                adaptive_simpson([s2](double b) { return 0.5 * gaussian_mmse(s2, b); }, b1,
                                 b0, 1e-11)
                    .value;
            worst_three = std::max({worst_three, std::fabs(closed - mi_diff),
                                    std::fabs(closed - quad), std::fabs(mi_diff - quad)});
        }
    }
    for (const double t : {0.1, 1.0, 10.0}) {
        worst_limit = std::max(worst_limit, std::fabs(gaussian_heat_capacity(1e12, t) - 0.5));
        if (gaussian_heat_capacity(inf, t) != 0.5)
            return "infinite-variance capacity is not exactly one half";
    }
    if (worst_quad >= 1e-9) return fail_fmt("Clausius quadrature", worst_quad, 1e-9);
    if (worst_three >= 1e-9) return fail_fmt("integrated-mmse three-way", worst_three, 1e-9);
    if (worst_limit >= 1e-9) return fail_fmt("large-variance capacity limit", worst_limit, 1e-9);
    return "";
}

// ---- two-level stage: Schottky quadrature over a parameter grid ----

std::string check_bsc_clausius() {
    double worst = 0.0;
    for (const double e0 : {0.5, 1.0, 2.0}) {
        for (const double t0 : {0.25, 0.5, 1.0, 2.0}) {
            for (const double factor : {2.0, 4.0, 8.0}) {
                const double t1 = t0 * factor;
                const double target = bsc_entropy_increase(e0, 1.0 / t0, 1.0 / t1);
                if (target < 0.0)
                    return fail_fmt("entropy decreased on heating", target, 0.0);
                const QuadCheck q = heat_capacity_check(
                    [e0](double t) { return bsc_heat_capacity(e0, t); }, t0, t1, target);
                worst = std::max(worst, q.discrepancy);
            }
        }
    }
    if (worst >= 1e-8) return fail_fmt("Schottky quadrature", worst, 1e-8);
    return "";
}

// ---- tilted family geometry on random strictly positive pairs ----

std::string check_exponent_geometry() {
    Rng rng(108);
    double worst_endpoint = 0.0, worst_area = 0.0, worst_equalize = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = rng.index(2, 5);
        const TiltedFamily f(DiscreteDistribution::from_probs(rng.distribution(m)),
                             DiscreteDistribution::from_probs(rng.distribution(m)));

        const ExponentPair at0 = exponent_pair(f, 0.0);
        worst_endpoint = std::max(worst_endpoint, std::fabs(at0.e0));
        worst_endpoint = std::max(
            worst_endpoint, std::fabs(at0.e1 - relative_entropy(f.p0(), f.p1())));

        double prev2 = f.log_partition(0.0), prev1 = f.log_partition(0.001);
        for (int i = 2; i <= 1000; ++i) {
            const double cur = f.log_partition(i / 1000.0);
            if (cur > 1e-15) return "lnZ rose above zero inside the unit interval";
            if (prev1 > 0.5 * (prev2 + cur) + 1e-12)
                return "lnZ convexity violated on the 1001-point grid";
            prev2 = prev1;
            prev1 = cur;
        }

        if (!f.degenerate()) {
            const AreaEquality a = area_equality(f);
            worst_area = std::max(worst_area, std::fabs(a.gap));
            const ChernoffPoint c = chernoff_point(f);
            const ExponentPair at_star = exponent_pair(f, c.lambda_star);
            worst_equalize = std::max(worst_equalize, std::fabs(at_star.e0 - at_star.e1));
        }
    }
    if (worst_endpoint >= 1e-12) return fail_fmt("endpoint exponents", worst_endpoint, 1e-12);
    if (worst_area >= 1e-8) return fail_fmt("area equality", worst_area, 1e-8);
    if (worst_equalize >= 1e-9) return fail_fmt("exponent equalization", worst_equalize, 1e-9);
    return "";
}

// ---- likelihood-ratio error slopes converge to the exponents ----

std::string check_error_slopes() {
    const TiltedFamily f(
        DiscreteDistribution::from_probs(std::vector<double>{0.9, 0.1}),
        DiscreteDistribution::from_probs(std::vector<double>{0.6, 0.4}));
    const ExponentPair e = exponent_pair(f, 0.5);
    const ErrorOracle big = exact_error_oracle(f, 10000, 0.5);
    const ErrorOracle small = exact_error_oracle(f, 1000, 0.5);

    const double gap0 = std::fabs(big.slope0 - e.e0), gap1 = std::fabs(big.slope1 - e.e1);
    if (gap0 >= 0.01) return fail_fmt("first-kind slope gap", gap0, 0.01);
    if (gap1 >= 0.01) return fail_fmt("second-kind slope gap", gap1, 0.01);
    if (gap0 >= std::fabs(small.slope0 - e.e0))
        return "first-kind slope gap did not shrink with block length";
    if (gap1 >= std::fabs(small.slope1 - e.e1))
        return "second-kind slope gap did not shrink with block length";
    return "";
}

// ---- protocol accounting: exponential identity, refinement, bridge ----

std::string check_jarzynski_protocol() {
    Rng rng(110);
    double worst_identity = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = rng.index(2, 16);
        const double beta = rng.log_uniform(1e-3, 1e3);
        const Hamiltonian h0(rng.energies(m, 1.0 / beta));
        const Hamiltonian h1(rng.energies(m, 1.0 / beta));
        const std::size_t k = rng.index(1, 8);
        const WorkReport w = protocol_work(h0, h1, InverseTemperature(beta),
                                           ProtocolSchedule::uniform(k));
        worst_identity = std::max(worst_identity,
                                  std::fabs(w.jarzynski_lhs - w.jarzynski_rhs));
    }
    if (worst_identity >= 1e-12)
        return fail_fmt("exponential work identity", worst_identity, 1e-12);

    const Hamiltonian h0({0.0, 0.0}), h1({0.0, 1.0});
    const std::vector<std::size_t> counts{16, 256};
    const std::vector<double> d =
        dissipation_vs_steps(h0, h1, InverseTemperature(1.0), counts);
    const double slope = std::log(d[1] / d[0]) / std::log(256.0 / 16.0);
    if (std::fabs(slope + 1.0) >= 0.1) return fail_fmt("refinement slope vs -1", slope, 0.1);

    // a single jump reproduces the abrupt-switch dissipation
    const WorkReport one = protocol_work(h0, h1, InverseTemperature(1.0),
                                         ProtocolSchedule::uniform(1));
    const GibbsDecomposition g = gibbs_decomposition(h0, h1, InverseTemperature(1.0));
    if (one.dissipation != g.dissipation)
        return "single-jump dissipation differs from the abrupt switch on the canonical pair";
    Rng rng2(111);
    double worst_k1 = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = rng2.index(2, 16);
        const double beta = rng2.log_uniform(1e-2, 1e2);
        const Hamiltonian a(rng2.energies(m, 1.0 / beta));
        const Hamiltonian b(rng2.energies(m, 1.0 / beta));
        const WorkReport w = protocol_work(a, b, InverseTemperature(beta),
                                           ProtocolSchedule::uniform(1));
        const GibbsDecomposition gg = gibbs_decomposition(a, b, InverseTemperature(beta));
        worst_k1 = std::max(worst_k1, std::fabs(w.dissipation - gg.dissipation) /
                                          (1.0 + std::fabs(gg.dissipation)));
    }
    if (worst_k1 >= 1e-15)
        return fail_fmt("single-jump vs abrupt-switch dissipation", worst_k1, 1e-15);

    // discrete work equals the exponent-difference integral at beta = 1
    Rng rng3(112);
    double worst_bridge = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = rng3.index(2, 4);
        const TiltedFamily f(DiscreteDistribution::from_probs(rng3.distribution(m)),
                             DiscreteDistribution::from_probs(rng3.distribution(m)));
        const WorkExponentBridge br =
            work_as_exponent_integral(f, ProtocolSchedule::uniform(rng3.index(1, 8)));
        worst_bridge = std::max(worst_bridge, std::fabs(br.avg_work - br.exponent_sum));
    }
    if (worst_bridge >= 1e-12)
        return fail_fmt("work vs exponent integral", worst_bridge, 1e-12);
    return "";
}

// ---- CLI self-verification is green and byte-deterministic ----

std::string run_command(const std::string& cmd, int* exit_code) {
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (pipe == nullptr) {
        *exit_code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string check_cli_determinism() {
    if (g_cli_path.empty()) return "no --cli path given";
    const fs::path dir = fs::temp_directory_path() / "infotherm_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cmd = g_cli_path + " verify-all --out " + dir.string();

    int code = 0;
    const std::string out1 = run_command(cmd, &code);
    if (code != 0) return "first verify-all run exited with code " + std::to_string(code);
    const std::string report1 = slurp(dir / "verify_report.json");
    if (report1.empty()) return "verify-all wrote no report";

    const std::string out2 = run_command(cmd, &code);
    if (code != 0) return "second verify-all run exited with code " + std::to_string(code);
    if (slurp(dir / "verify_report.json") != report1)
        return "repeated runs produced different report bytes";
    if (out1 != out2) return "repeated runs produced different terminal output";
    return "";
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];

    const auto start = std::chrono::steady_clock::now();
    criterion("work-split-matches-divergence", 5.0, check_work_split);
    criterion("thermodynamic-bookkeeping", 5.0, check_bookkeeping);
    criterion("information-gap-oracle", 10.0, check_information_gap);
    criterion("chain-redundancy", 30.0, check_chain_redundancy);
    criterion("runlength-pressure-grid", 5.0, check_runlength_grid);
    criterion("gaussian-clausius", 5.0, check_gaussian_clausius);
    criterion("schottky-clausius", 5.0, check_bsc_clausius);
    criterion("exponent-geometry", 20.0, check_exponent_geometry);
    criterion("error-slope-convergence", 30.0, check_error_slopes);
    criterion("jarzynski-protocol", 30.0, check_jarzynski_protocol);
    criterion("cli-verify-determinism", 120.0, check_cli_determinism);

    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/11 criteria passed in %.2f s\n", 11 - g_failures, total);
    if (total > 120.0) {
        std::printf("[FAIL] total runtime exceeded the 120 s budget\n");
        return 1;
    }
    return g_failures == 0 ? 0 : 1;
}
