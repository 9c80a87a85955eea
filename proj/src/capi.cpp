#include "infotherm.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "infotherm/adia_models.hpp"
#include "infotherm/dpt.hpp"
#include "infotherm/ensemble.hpp"
#include "infotherm/errors.hpp"
#include "infotherm/exponents.hpp"
#include "infotherm/gibbs.hpp"
#include "infotherm/iso_models.hpp"
#include "infotherm/protocol.hpp"
#include "infotherm/selfcheck.hpp"

struct ith_hamiltonian {
    infotherm::Hamiltonian v;
};
struct ith_distribution {
    infotherm::DiscreteDistribution v;
};
struct ith_joint3 {
    infotherm::JointTriple v;
};
struct ith_tilted_family {
    infotherm::TiltedFamily v;
};
struct ith_schedule {
    infotherm::ProtocolSchedule v;
};

namespace {

thread_local std::string t_last_error;

template <typename F>
ith_status guarded(F&& body) {
    t_last_error.clear();
    try {
        body();
        return ITH_OK;
    } catch (const infotherm::DomainError& e) {
        t_last_error = e.what();
        return ITH_ERR_DOMAIN;
    } catch (const infotherm::NumericError& e) {
        t_last_error = e.what();
        return ITH_ERR_NUMERIC;
    } catch (const infotherm::UnsupportedError& e) {
        t_last_error = e.what();
        return ITH_ERR_UNSUPPORTED;
    } catch (const std::bad_alloc&) {
        t_last_error = "allocation failed";
        return ITH_ERR_ALLOC;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return ITH_ERR_NUMERIC;
    }
}

ith_status invalid(const char* msg) {
    t_last_error = msg;
    return ITH_ERR_INVALID_ARGUMENT;
}

bool bad(const void* p) { return p == nullptr; }

void copy_str(char* dst, size_t cap, const std::string& src) {
    const size_t n = src.size() < cap - 1 ? src.size() : cap - 1;
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

} // namespace

extern "C" {

const char* ith_status_name(ith_status status) {
    switch (status) {
        case ITH_OK: return "ok";
        case ITH_ERR_INVALID_ARGUMENT: return "invalid argument";
        case ITH_ERR_DOMAIN: return "domain error";
        case ITH_ERR_NUMERIC: return "numeric error";
        case ITH_ERR_UNSUPPORTED: return "unsupported";
        case ITH_ERR_ALLOC: return "allocation failure";
    }
    return "unknown status";
}

const char* ith_last_error(void) { return t_last_error.c_str(); }

const char* ith_version(void) { return "1.0.0"; }

/* ---- hamiltonians and distributions ---- */

ith_status ith_hamiltonian_create(const double* energies, size_t n, ith_hamiltonian** out) {
    if (bad(energies) || bad(out)) return invalid("hamiltonian_create: null pointer");
    if (n == 0) return invalid("hamiltonian_create: empty table");
    return guarded([&] {
        *out = new ith_hamiltonian{infotherm::Hamiltonian(std::vector<double>(energies, energies + n))};
    });
}

void ith_hamiltonian_destroy(ith_hamiltonian* h) { delete h; }

ith_status ith_hamiltonian_size(const ith_hamiltonian* h, size_t* out) {
    if (bad(h) || bad(out)) return invalid("hamiltonian_size: null pointer");
    *out = h->v.size();
    t_last_error.clear();
    return ITH_OK;
}

ith_status ith_distribution_from_probs(const double* probs, size_t n, ith_distribution** out) {
    if (bad(probs) || bad(out)) return invalid("distribution_from_probs: null pointer");
    if (n == 0) return invalid("distribution_from_probs: empty table");
    return guarded([&] {
        *out = new ith_distribution{
            infotherm::DiscreteDistribution::from_probs(std::span<const double>(probs, n))};
    });
}

ith_status ith_distribution_from_log_weights(const double* log_weights, size_t n,
                                             ith_distribution** out) {
    if (bad(log_weights) || bad(out)) return invalid("distribution_from_log_weights: null pointer");
    if (n == 0) return invalid("distribution_from_log_weights: empty table");
    return guarded([&] {
        *out = new ith_distribution{infotherm::DiscreteDistribution::from_log_weights(
            std::span<const double>(log_weights, n))};
    });
}

void ith_distribution_destroy(ith_distribution* p) { delete p; }

ith_status ith_distribution_size(const ith_distribution* p, size_t* out) {
    if (bad(p) || bad(out)) return invalid("distribution_size: null pointer");
    *out = p->v.size();
    t_last_error.clear();
    return ITH_OK;
}

ith_status ith_distribution_log_probs(const ith_distribution* p, double* out, size_t n) {
    if (bad(p) || bad(out)) return invalid("distribution_log_probs: null pointer");
    if (n != p->v.size()) return invalid("distribution_log_probs: buffer size mismatch");
    std::memcpy(out, p->v.log_probs().data(), n * sizeof(double));
    t_last_error.clear();
    return ITH_OK;
}

ith_status ith_distribution_entropy(const ith_distribution* p, double* out) {
    if (bad(p) || bad(out)) return invalid("distribution_entropy: null pointer");
    return guarded([&] { *out = p->v.entropy_nats(); });
}

/* ---- ensemble thermodynamics ---- */

ith_status ith_log_partition(const ith_hamiltonian* h, double beta, double* out) {
    if (bad(h) || bad(out)) return invalid("log_partition: null pointer");
    return guarded([&] { *out = infotherm::log_partition(h->v, infotherm::InverseTemperature(beta)); });
}

ith_status ith_boltzmann(const ith_hamiltonian* h, double beta, ith_distribution** out) {
    if (bad(h) || bad(out)) return invalid("boltzmann: null pointer");
    return guarded([&] {
        *out = new ith_distribution{infotherm::boltzmann(h->v, infotherm::InverseTemperature(beta))};
    });
}

ith_status ith_ensemble_report_at(const ith_hamiltonian* h, double beta,
                                  ith_ensemble_report* out) {
    if (bad(h) || bad(out)) return invalid("ensemble_report: null pointer");
    return guarded([&] {
        const infotherm::EnsembleReport r =
            infotherm::ensemble_report(h->v, infotherm::InverseTemperature(beta));
        *out = {r.log_partition, r.internal_energy, r.entropy_nats, r.free_energy};
    });
}

ith_status ith_interpolate(const ith_hamiltonian* h0, const ith_hamiltonian* h1, double lambda,
                           ith_hamiltonian** out) {
    if (bad(h0) || bad(h1) || bad(out)) return invalid("interpolate: null pointer");
    return guarded([&] {
        *out = new ith_hamiltonian{infotherm::interpolate(h0->v, h1->v, lambda)};
    });
}

/* ---- divergence as dissipated work ---- */

ith_status ith_relative_entropy(const ith_distribution* p, const ith_distribution* q,
                                double* out) {
    if (bad(p) || bad(q) || bad(out)) return invalid("relative_entropy: null pointer");
    return guarded([&] { *out = infotherm::relative_entropy(p->v, q->v); });
}

ith_status ith_log_sum_inequality(const double* a, const double* b, size_t n,
                                  ith_lsi_report* out) {
    if (bad(a) || bad(b) || bad(out)) return invalid("log_sum_inequality: null pointer");
    if (n == 0) return invalid("log_sum_inequality: empty vectors");
    return guarded([&] {
        const infotherm::LsiReport r = infotherm::log_sum_inequality(
            std::span<const double>(a, n), std::span<const double>(b, n));
        *out = {r.lhs, r.rhs, r.slack};
    });
}

ith_status ith_gibbs_decomposition_at(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                      double beta, ith_gibbs_decomposition* out) {
    if (bad(h0) || bad(h1) || bad(out)) return invalid("gibbs_decomposition: null pointer");
    return guarded([&] {
        const infotherm::GibbsDecomposition r =
            infotherm::gibbs_decomposition(h0->v, h1->v, infotherm::InverseTemperature(beta));
        *out = {r.avg_work, r.delta_f, r.dissipation};
    });
}

ith_status ith_adiabatic_clausius(const ith_hamiltonian* h, double beta0, double beta1,
                                  int allow_cooling, ith_adiabatic_report* out) {
    if (bad(h) || bad(out)) return invalid("adiabatic_clausius: null pointer");
    return guarded([&] {
        const infotherm::AdiabaticReport r = infotherm::adiabatic_clausius(
            h->v, infotherm::InverseTemperature(beta0), infotherm::InverseTemperature(beta1),
            allow_cooling != 0);
        *out = {r.delta_sigma, r.heat_over_kT1, r.slack};
    });
}

ith_status ith_binary_entropy(double p, double* out) {
    if (bad(out)) return invalid("binary_entropy: null pointer");
    return guarded([&] { *out = infotherm::binary_entropy(p); });
}

/* ---- data-processing gaps ---- */

ith_status ith_joint3_create(const double* pmf, size_t nx, size_t nu, size_t nv,
                             ith_joint3** out) {
    if (bad(pmf) || bad(out)) return invalid("joint3_create: null pointer");
    if (nx == 0 || nu == 0 || nv == 0) return invalid("joint3_create: empty axis");
    return guarded([&] {
        *out = new ith_joint3{infotherm::JointTriple(
            std::vector<double>(pmf, pmf + nx * nu * nv), nx, nu, nv)};
    });
}

ith_status ith_joint3_markov(const double* pv, size_t nv, const double* u_given_v, size_t nu,
                             const double* x_given_u, size_t nx, ith_joint3** out) {
    if (bad(pv) || bad(u_given_v) || bad(x_given_u) || bad(out))
        return invalid("joint3_markov: null pointer");
    if (nx == 0 || nu == 0 || nv == 0) return invalid("joint3_markov: empty axis");
    return guarded([&] {
        const auto dist =
            infotherm::DiscreteDistribution::from_probs(std::span<const double>(pv, nv));
        const infotherm::ConditionalTable ugv(std::vector<double>(u_given_v, u_given_v + nv * nu),
                                              nv, nu);
        const infotherm::ConditionalTable xgu(std::vector<double>(x_given_u, x_given_u + nu * nx),
                                              nu, nx);
        *out = new ith_joint3{infotherm::make_markov(dist, ugv, xgu)};
    });
}

void ith_joint3_destroy(ith_joint3* j) { delete j; }

ith_status ith_dpt_report_of(const ith_joint3* j, ith_dpt_report* out) {
    if (bad(j) || bad(out)) return invalid("dpt_report: null pointer");
    return guarded([&] {
        const infotherm::DptReport r = infotherm::dpt_report(j->v);
        *out = {r.i_xu, r.i_xv, r.gap, r.expected_divergence, r.markov_defect};
    });
}

ith_status ith_conditional_entropies(const ith_joint3* j, ith_cond_entropy_pair* out) {
    if (bad(j) || bad(out)) return invalid("conditional_entropies: null pointer");
    return guarded([&] {
        const infotherm::ConditionalEntropyPair r = infotherm::conditioning_reduces_entropy(j->v);
        *out = {r.h_x_given_v, r.h_x_given_uv};
    });
}

ith_status ith_fano_bound(int64_t n, double rate, double capacity, double* out) {
    if (bad(out)) return invalid("fano_bound: null pointer");
    return guarded([&] { *out = infotherm::fano_bound(n, rate, capacity); });
}

/* ---- mismatched Markov coding ---- */

ith_status ith_ising_kernels_of(double coupling, double field, ith_ising_kernels* out) {
    if (bad(out)) return invalid("ising_kernels: null pointer");
    return guarded([&] {
        const infotherm::IsingKernels k = infotherm::ising_kernels(coupling, field);
        for (int s = 0; s < 2; ++s)
            for (int x = 0; x < 2; ++x) {
                out->p0[s * 2 + x] = k.p0[s][x];
                out->p1[s * 2 + x] = k.p1[s][x];
            }
        out->z0 = k.z0;
        out->z1 = k.z1;
        out->zeta[0] = k.zeta[0];
        out->zeta[1] = k.zeta[1];
    });
}

ith_status ith_effective_field(double coupling, double field, double* out) {
    if (bad(out)) return invalid("effective_field: null pointer");
    return guarded([&] { *out = infotherm::effective_field(coupling, field); });
}

ith_status ith_ising_redundancy_of(double coupling, double field, int64_t length,
                                   ith_ising_redundancy* out) {
    if (bad(out)) return invalid("ising_redundancy: null pointer");
    return guarded([&] {
        const infotherm::IsingRedundancy r =
            infotherm::ising_redundancy(infotherm::IsingMismatch(coupling, field, length));
        *out = {r.total_nats, r.per_symbol_rate, r.edge_residual};
    });
}

ith_status ith_ising_work(double coupling, double field, int64_t length,
                          ith_gibbs_decomposition* out) {
    if (bad(out)) return invalid("ising_work: null pointer");
    return guarded([&] {
        const infotherm::GibbsDecomposition r =
            infotherm::ising_work_decomposition(infotherm::IsingMismatch(coupling, field, length));
        *out = {r.avg_work, r.delta_f, r.dissipation};
    });
}

ith_status ith_runlength_law_at(double mu, ith_runlength_law* out) {
    if (bad(out)) return invalid("runlength_law: null pointer");
    return guarded([&] {
        const infotherm::RunLengthLaw r = infotherm::runlength_law(mu);
        *out = {r.log_partition, r.mean_run};
    });
}

ith_status ith_runlength_redundancy_of(double mu0, double mu1, ith_runlength_redundancy* out) {
    if (bad(out)) return invalid("runlength_redundancy: null pointer");
    return guarded([&] {
        const infotherm::RunLengthRedundancy r = infotherm::runlength_redundancy(mu0, mu1);
        *out = {r.divergence, r.pressure_slack};
    });
}

/* ---- degraded broadcast stages ---- */

ith_status ith_gaussian_entropy_increase(double beta0, double beta1, double* out) {
    if (bad(out)) return invalid("gaussian_entropy_increase: null pointer");
    return guarded([&] { *out = infotherm::gaussian_entropy_increase(beta0, beta1); });
}

ith_status ith_gaussian_mutual_information(double sigma2, double beta, double* out) {
    if (bad(out)) return invalid("gaussian_mutual_information: null pointer");
    return guarded([&] { *out = infotherm::gaussian_mutual_information(sigma2, beta); });
}

ith_status ith_gaussian_mmse(double sigma2, double beta, double* out) {
    if (bad(out)) return invalid("gaussian_mmse: null pointer");
    return guarded([&] { *out = infotherm::gaussian_mmse(sigma2, beta); });
}

ith_status ith_immse_entropy_increase(double beta0, double beta1, double sigma2, double* out) {
    if (bad(out)) return invalid("immse_entropy_increase: null pointer");
    return guarded([&] { *out = infotherm::immse_entropy_increase(beta0, beta1, sigma2); });
}

ith_status ith_gaussian_heat_capacity(double sigma2, double temperature, double* out) {
    if (bad(out)) return invalid("gaussian_heat_capacity: null pointer");
    return guarded([&] { *out = infotherm::gaussian_heat_capacity(sigma2, temperature); });
}

ith_status ith_bsc_crossover(double e0, double beta, double* out) {
    if (bad(out)) return invalid("bsc_crossover: null pointer");
    return guarded([&] { *out = infotherm::bsc_crossover(e0, beta); });
}

ith_status ith_bsc_entropy_increase(double e0, double beta0, double beta1, double* out) {
    if (bad(out)) return invalid("bsc_entropy_increase: null pointer");
    return guarded([&] { *out = infotherm::bsc_entropy_increase(e0, beta0, beta1); });
}

ith_status ith_bsc_heat_capacity(double e0, double temperature, double* out) {
    if (bad(out)) return invalid("bsc_heat_capacity: null pointer");
    return guarded([&] { *out = infotherm::bsc_heat_capacity(e0, temperature); });
}

ith_status ith_degrade_crossover(double eps0, double eps1, double* out) {
    if (bad(out)) return invalid("degrade_crossover: null pointer");
    return guarded([&] { *out = infotherm::degrade_crossover(eps0, eps1); });
}

ith_status ith_heat_capacity_check(ith_capacity_fn capacity, void* ctx, double t0, double t1,
                                   double target, ith_quad_check* out) {
    if (capacity == nullptr || bad(out)) return invalid("heat_capacity_check: null pointer");
    return guarded([&] {
        const infotherm::QuadCheck r = infotherm::heat_capacity_check(
            [capacity, ctx](double t) { return capacity(t, ctx); }, t0, t1, target);
        *out = {r.integral, r.target, r.discrepancy};
    });
}

/* ---- tilted families and error exponents ---- */

ith_status ith_tilted_create(const ith_distribution* p0, const ith_distribution* p1,
                             ith_tilted_family** out) {
    if (bad(p0) || bad(p1) || bad(out)) return invalid("tilted_create: null pointer");
    return guarded([&] {
        *out = new ith_tilted_family{infotherm::TiltedFamily(p0->v, p1->v)};
    });
}

void ith_tilted_destroy(ith_tilted_family* f) { delete f; }

ith_status ith_tilted_log_partition(const ith_tilted_family* f, double lambda, double* out) {
    if (bad(f) || bad(out)) return invalid("tilted_log_partition: null pointer");
    return guarded([&] { *out = f->v.log_partition(lambda); });
}

ith_status ith_tilted_derivative(const ith_tilted_family* f, double lambda, double* out) {
    if (bad(f) || bad(out)) return invalid("tilted_derivative: null pointer");
    return guarded([&] { *out = f->v.log_partition_derivative(lambda); });
}

ith_status ith_tilted_distribution(const ith_tilted_family* f, double lambda,
                                   ith_distribution** out) {
    if (bad(f) || bad(out)) return invalid("tilted_distribution: null pointer");
    return guarded([&] { *out = new ith_distribution{f->v.tilted(lambda)}; });
}

ith_status ith_exponent_pair_at(const ith_tilted_family* f, double lambda,
                                ith_exponent_pair* out) {
    if (bad(f) || bad(out)) return invalid("exponent_pair: null pointer");
    return guarded([&] {
        const infotherm::ExponentPair e = infotherm::exponent_pair(f->v, lambda);
        *out = {e.e0, e.e1};
    });
}

ith_status ith_chernoff_point_of(const ith_tilted_family* f, ith_chernoff_point* out) {
    if (bad(f) || bad(out)) return invalid("chernoff_point: null pointer");
    return guarded([&] {
        const infotherm::ChernoffPoint c = infotherm::chernoff_point(f->v);
        *out = {c.lambda_star, c.exponent, c.degenerate ? 1 : 0};
    });
}

ith_status ith_area_equality_of(const ith_tilted_family* f, ith_area_equality* out) {
    if (bad(f) || bad(out)) return invalid("area_equality: null pointer");
    return guarded([&] {
        const infotherm::AreaEquality a = infotherm::area_equality(f->v);
        *out = {a.area_e0, a.area_e1, a.gap};
    });
}

ith_status ith_error_oracle_of(const ith_tilted_family* f, int64_t n, double lambda,
                               ith_error_oracle* out) {
    if (bad(f) || bad(out)) return invalid("error_oracle: null pointer");
    return guarded([&] {
        const infotherm::ErrorOracle o = infotherm::exact_error_oracle(f->v, n, lambda);
        *out = {o.log_p_err0, o.log_p_err1, o.slope0, o.slope1, o.c0, o.c1};
    });
}

/* ---- switching protocols ---- */

ith_status ith_schedule_create(const double* breakpoints, size_t count, ith_schedule** out) {
    if (bad(breakpoints) || bad(out)) return invalid("schedule_create: null pointer");
    if (count < 2) return invalid("schedule_create: need at least two breakpoints");
    return guarded([&] {
        *out = new ith_schedule{
            infotherm::ProtocolSchedule(std::vector<double>(breakpoints, breakpoints + count))};
    });
}

ith_status ith_schedule_uniform(size_t steps, ith_schedule** out) {
    if (bad(out)) return invalid("schedule_uniform: null pointer");
    return guarded([&] {
        *out = new ith_schedule{infotherm::ProtocolSchedule::uniform(steps)};
    });
}

void ith_schedule_destroy(ith_schedule* s) { delete s; }

ith_status ith_schedule_steps(const ith_schedule* s, size_t* out) {
    if (bad(s) || bad(out)) return invalid("schedule_steps: null pointer");
    *out = s->v.steps();
    t_last_error.clear();
    return ITH_OK;
}

ith_status ith_schedule_breakpoints(const ith_schedule* s, double* out, size_t count) {
    if (bad(s) || bad(out)) return invalid("schedule_breakpoints: null pointer");
    if (count != s->v.breakpoints().size())
        return invalid("schedule_breakpoints: buffer size mismatch");
    std::memcpy(out, s->v.breakpoints().data(), count * sizeof(double));
    t_last_error.clear();
    return ITH_OK;
}

ith_status ith_protocol_work(const ith_hamiltonian* h0, const ith_hamiltonian* h1, double beta,
                             const ith_schedule* s, ith_work_report* out) {
    if (bad(h0) || bad(h1) || bad(s) || bad(out)) return invalid("protocol_work: null pointer");
    return guarded([&] {
        const infotherm::WorkReport r =
            infotherm::protocol_work(h0->v, h1->v, infotherm::InverseTemperature(beta), s->v);
        *out = {r.avg_work, r.delta_f, r.dissipation, r.jarzynski_lhs, r.jarzynski_rhs};
    });
}

ith_status ith_dissipation_vs_steps(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                    double beta, const size_t* counts, size_t ncounts,
                                    double* out) {
    if (bad(h0) || bad(h1) || bad(counts) || bad(out))
        return invalid("dissipation_vs_steps: null pointer");
    if (ncounts == 0) return invalid("dissipation_vs_steps: empty count list");
    return guarded([&] {
        const std::vector<double> d = infotherm::dissipation_vs_steps(
            h0->v, h1->v, infotherm::InverseTemperature(beta),
            std::span<const std::size_t>(counts, ncounts));
        std::memcpy(out, d.data(), d.size() * sizeof(double));
    });
}

ith_status ith_work_exponent_bridge_of(const ith_tilted_family* f, const ith_schedule* s,
                                       ith_work_exponent_bridge* out) {
    if (bad(f) || bad(s) || bad(out)) return invalid("work_exponent_bridge: null pointer");
    return guarded([&] {
        const infotherm::WorkExponentBridge b = infotherm::work_as_exponent_integral(f->v, s->v);
        *out = {b.avg_work, b.exponent_sum};
    });
}

ith_status ith_optimize_schedule(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                 double beta, size_t steps, ith_schedule** out) {
    if (bad(h0) || bad(h1) || bad(out)) return invalid("optimize_schedule: null pointer");
    return guarded([&] {
        *out = new ith_schedule{infotherm::optimize_schedule(
            h0->v, h1->v, infotherm::InverseTemperature(beta), steps)};
    });
}

ith_status ith_protocol_work_variance(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                      double beta, const ith_schedule* s, double* out) {
    if (bad(h0) || bad(h1) || bad(s) || bad(out))
        return invalid("protocol_work_variance: null pointer");
    return guarded([&] {
        *out = infotherm::protocol_work_variance(h0->v, h1->v,
                                                 infotherm::InverseTemperature(beta), s->v);
    });
}

ith_status ith_sample_work(const ith_hamiltonian* h0, const ith_hamiltonian* h1, double beta,
                           const ith_schedule* s, uint64_t seed, size_t draws,
                           ith_work_sample* out) {
    if (bad(h0) || bad(h1) || bad(s) || bad(out)) return invalid("sample_work: null pointer");
    return guarded([&] {
        const infotherm::WorkSample w = infotherm::sample_work(
            h0->v, h1->v, infotherm::InverseTemperature(beta), s->v, seed, draws);
        *out = {w.mean, w.variance, w.draws};
    });
}

/* ---- selfcheck ---- */

ith_status ith_selfcheck(uint64_t seed, const char* const* override_names,
                         const double* override_tols, size_t n_overrides,
                         ith_check_result* results, size_t capacity, size_t* count) {
    if (bad(count)) return invalid("selfcheck: null count pointer");
    if (capacity > 0 && bad(results)) return invalid("selfcheck: null result buffer");
    if (n_overrides > 0 && (bad(override_names) || bad(override_tols)))
        return invalid("selfcheck: null override arrays");
    return guarded([&] {
        infotherm::SelfcheckOptions opts;
        opts.seed = seed;
        for (size_t i = 0; i < n_overrides; ++i) {
            if (override_names[i] == nullptr)
                throw infotherm::DomainError("selfcheck: null override name");
            opts.tolerance_overrides.emplace_back(override_names[i], override_tols[i]);
        }
        const std::vector<infotherm::CheckResult> all = infotherm::run_selfchecks(opts);
        *count = all.size();
        const size_t n = all.size() < capacity ? all.size() : capacity;
        for (size_t i = 0; i < n; ++i) {
            copy_str(results[i].name, sizeof results[i].name, all[i].name);
            results[i].pass = all[i].pass ? 1 : 0;
            results[i].worst = all[i].worst;
            results[i].tolerance = all[i].tolerance;
            copy_str(results[i].detail, sizeof results[i].detail, all[i].detail);
        }
    });
}

} /* extern "C" */
