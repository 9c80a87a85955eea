/* infotherm: equilibrium statistical-mechanics identities for information
 * theory.  Entropies and divergences are in nats, Boltzmann's constant is 1,
 * temperatures are 1/beta.
 *
 * Every fallible call returns an ith_status and writes results through out
 * pointers; on failure the out values are untouched and ith_last_error()
 * carries a thread-local message.  Objects created by *_create functions are
 * owned by the caller and released with the matching *_destroy (NULL is a
 * no-op there).
 */
#ifndef INFOTHERM_H
#define INFOTHERM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ith_status {
    ITH_OK = 0,
    ITH_ERR_INVALID_ARGUMENT = 1, /* null pointer or malformed buffer at the boundary */
    ITH_ERR_DOMAIN = 2,           /* input outside the mathematical domain */
    ITH_ERR_NUMERIC = 3,          /* internal computation failed or lost consistency */
    ITH_ERR_UNSUPPORTED = 4,      /* valid input beyond an implementation limit */
    ITH_ERR_ALLOC = 5
} ith_status;

const char* ith_status_name(ith_status status);
const char* ith_last_error(void); /* thread-local; empty after a success */
const char* ith_version(void);

typedef struct ith_hamiltonian ith_hamiltonian;
typedef struct ith_distribution ith_distribution;
typedef struct ith_joint3 ith_joint3;
typedef struct ith_tilted_family ith_tilted_family;
typedef struct ith_schedule ith_schedule;

/* ---- finite-alphabet laws and energy tables ---- */

/* Energies must be finite or +inf (excluded state); -inf and NaN are domain
 * errors. */
ith_status ith_hamiltonian_create(const double* energies, size_t n, ith_hamiltonian** out);
void ith_hamiltonian_destroy(ith_hamiltonian* h);
ith_status ith_hamiltonian_size(const ith_hamiltonian* h, size_t* out);

/* probs must sum to 1 within 1e-12; they are renormalized exactly. */
ith_status ith_distribution_from_probs(const double* probs, size_t n, ith_distribution** out);
/* log weights may be -inf (null state); the law is their normalized exp. */
ith_status ith_distribution_from_log_weights(const double* log_weights, size_t n,
                                             ith_distribution** out);
void ith_distribution_destroy(ith_distribution* p);
ith_status ith_distribution_size(const ith_distribution* p, size_t* out);
/* Copies the n log probabilities into out (n must equal the size). */
ith_status ith_distribution_log_probs(const ith_distribution* p, double* out, size_t n);
ith_status ith_distribution_entropy(const ith_distribution* p, double* out);

typedef struct ith_ensemble_report {
    double log_partition;
    double internal_energy;
    double entropy_nats; /* log_partition + beta * internal_energy */
    double free_energy;  /* -log_partition / beta */
} ith_ensemble_report;

ith_status ith_log_partition(const ith_hamiltonian* h, double beta, double* out);
ith_status ith_boltzmann(const ith_hamiltonian* h, double beta, ith_distribution** out);
ith_status ith_ensemble_report_at(const ith_hamiltonian* h, double beta,
                                  ith_ensemble_report* out);
/* Pointwise (1-lambda) h0 + lambda h1, lambda in [0,1]. */
ith_status ith_interpolate(const ith_hamiltonian* h0, const ith_hamiltonian* h1, double lambda,
                           ith_hamiltonian** out);

/* ---- divergence as dissipated work ---- */

/* D(p||q) in nats; +inf when p charges a state q excludes. */
ith_status ith_relative_entropy(const ith_distribution* p, const ith_distribution* q,
                                double* out);

typedef struct ith_lsi_report {
    double lhs;   /* sum a_i ln(a_i/b_i) */
    double rhs;   /* (sum a) ln(sum a / sum b) */
    double slack; /* lhs - rhs >= 0 */
} ith_lsi_report;

ith_status ith_log_sum_inequality(const double* a, const double* b, size_t n,
                                  ith_lsi_report* out);

typedef struct ith_gibbs_decomposition {
    double avg_work;    /* <h1 - h0> under the h0 equilibrium */
    double delta_f;     /* F1 - F0 */
    double dissipation; /* kT D(P0||P1) = avg_work - delta_f >= 0 */
} ith_gibbs_decomposition;

ith_status ith_gibbs_decomposition_at(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                      double beta, ith_gibbs_decomposition* out);

typedef struct ith_adiabatic_report {
    double delta_sigma;   /* Sigma(beta1) - Sigma(beta0) */
    double heat_over_kt1; /* beta1 (E1 - E0) */
    double slack;         /* the divergence D(P_beta0 || P_beta1) */
} ith_adiabatic_report;

/* Default direction is heating (beta0 > beta1); pass allow_cooling != 0 to
 * evaluate the reverse step. */
ith_status ith_adiabatic_clausius(const ith_hamiltonian* h, double beta0, double beta1,
                                  int allow_cooling, ith_adiabatic_report* out);

ith_status ith_binary_entropy(double p, double* out);

/* ---- data-processing gaps ---- */

/* Joint pmf over (x,u,v), flat row-major [x][u][v], total mass 1 within
 * 1e-12. */
ith_status ith_joint3_create(const double* pmf, size_t nx, size_t nu, size_t nv,
                             ith_joint3** out);
/* Builds p(v) p(u|v) p(x|u).  Conditional tables are row-major with the
 * conditioning symbol as the row: u_given_v is nv x nu, x_given_u is
 * nu x nx, each row summing to 1 within 1e-12. */
ith_status ith_joint3_markov(const double* pv, size_t nv, const double* u_given_v, size_t nu,
                             const double* x_given_u, size_t nx, ith_joint3** out);
void ith_joint3_destroy(ith_joint3* j);

typedef struct ith_dpt_report {
    double i_xu;
    double i_xv;
    double gap;                 /* i_xu - i_xv >= 0 under the chain property */
    double expected_divergence; /* E D(P(x|u,v) || P(x|v)); equals gap */
    double markov_defect;       /* I(X;V|U) */
} ith_dpt_report;

ith_status ith_dpt_report_of(const ith_joint3* j, ith_dpt_report* out);

typedef struct ith_cond_entropy_pair {
    double h_x_given_v;
    double h_x_given_uv;
} ith_cond_entropy_pair;

ith_status ith_conditional_entropies(const ith_joint3* j, ith_cond_entropy_pair* out);

/* max(0, 1 - 1/n - capacity/rate). */
ith_status ith_fano_bound(int64_t n, double rate, double capacity, double* out);

/* ---- mismatched Markov coding ---- */

typedef struct ith_ising_kernels {
    double p0[4]; /* row-major [prev][next], index 0 = spin -1 */
    double p1[4];
    double z0;
    double z1;
    double zeta[2];
} ith_ising_kernels;

ith_status ith_ising_kernels_of(double coupling, double field, ith_ising_kernels* out);
ith_status ith_effective_field(double coupling, double field, double* out);

typedef struct ith_ising_redundancy {
    double total_nats;
    double per_symbol_rate;
    double edge_residual;
} ith_ising_redundancy;

ith_status ith_ising_redundancy_of(double coupling, double field, int64_t length,
                                   ith_ising_redundancy* out);
ith_status ith_ising_work(double coupling, double field, int64_t length,
                          ith_gibbs_decomposition* out);

typedef struct ith_runlength_law {
    double log_partition;
    double mean_run;
} ith_runlength_law;

ith_status ith_runlength_law_at(double mu, ith_runlength_law* out);

typedef struct ith_runlength_redundancy {
    double divergence;
    double pressure_slack;
} ith_runlength_redundancy;

ith_status ith_runlength_redundancy_of(double mu0, double mu1, ith_runlength_redundancy* out);

/* ---- degraded broadcast stages ---- */

ith_status ith_gaussian_entropy_increase(double beta0, double beta1, double* out);
ith_status ith_gaussian_mutual_information(double sigma2, double beta, double* out);
ith_status ith_gaussian_mmse(double sigma2, double beta, double* out);
ith_status ith_immse_entropy_increase(double beta0, double beta1, double sigma2, double* out);
ith_status ith_gaussian_heat_capacity(double sigma2, double temperature, double* out);
ith_status ith_bsc_crossover(double e0, double beta, double* out);
ith_status ith_bsc_entropy_increase(double e0, double beta0, double beta1, double* out);
ith_status ith_bsc_heat_capacity(double e0, double temperature, double* out);
ith_status ith_degrade_crossover(double eps0, double eps1, double* out);

typedef double (*ith_capacity_fn)(double temperature, void* ctx);

typedef struct ith_quad_check {
    double integral;
    double target;
    double discrepancy;
} ith_quad_check;

/* Integrates capacity(T)/T over [t0, t1] and compares against target. */
ith_status ith_heat_capacity_check(ith_capacity_fn capacity, void* ctx, double t0, double t1,
                                   double target, ith_quad_check* out);

/* ---- tilted families and error exponents ---- */

/* p0 and p1 must both charge every state of one shared alphabet. */
ith_status ith_tilted_create(const ith_distribution* p0, const ith_distribution* p1,
                             ith_tilted_family** out);
void ith_tilted_destroy(ith_tilted_family* f);
ith_status ith_tilted_log_partition(const ith_tilted_family* f, double lambda, double* out);
ith_status ith_tilted_derivative(const ith_tilted_family* f, double lambda, double* out);
ith_status ith_tilted_distribution(const ith_tilted_family* f, double lambda,
                                   ith_distribution** out);

typedef struct ith_exponent_pair {
    double e0; /* D(P_lambda || P0) */
    double e1; /* D(P_lambda || P1) */
} ith_exponent_pair;

ith_status ith_exponent_pair_at(const ith_tilted_family* f, double lambda,
                                ith_exponent_pair* out);

typedef struct ith_chernoff_point {
    double lambda_star; /* NaN when the family is degenerate */
    double exponent;
    int degenerate;
} ith_chernoff_point;

ith_status ith_chernoff_point_of(const ith_tilted_family* f, ith_chernoff_point* out);

typedef struct ith_area_equality {
    double area_e0;
    double area_e1;
    double gap;
} ith_area_equality;

ith_status ith_area_equality_of(const ith_tilted_family* f, ith_area_equality* out);

typedef struct ith_error_oracle {
    double log_p_err0; /* ln P0{ reject hypothesis 0 } */
    double log_p_err1; /* ln P1{ accept hypothesis 0 } */
    double slope0;     /* -(1/n) log_p_err0 */
    double slope1;
    double c0; /* |slope0 - e0| n / max(ln n, 1) */
    double c1;
} ith_error_oracle;

/* Exact likelihood-ratio-test error probabilities on n iid symbols
 * (alphabet <= 2: n <= 100000; alphabet 3: n <= 2000). */
ith_status ith_error_oracle_of(const ith_tilted_family* f, int64_t n, double lambda,
                               ith_error_oracle* out);

/* ---- switching protocols and fluctuation accounting ---- */

/* breakpoints: 0 = b[0] < ... < b[count-1] = 1. */
ith_status ith_schedule_create(const double* breakpoints, size_t count, ith_schedule** out);
ith_status ith_schedule_uniform(size_t steps, ith_schedule** out);
void ith_schedule_destroy(ith_schedule* s);
ith_status ith_schedule_steps(const ith_schedule* s, size_t* out);
/* count must equal steps + 1. */
ith_status ith_schedule_breakpoints(const ith_schedule* s, double* out, size_t count);

typedef struct ith_work_report {
    double avg_work;
    double delta_f;
    double dissipation;
    double jarzynski_lhs; /* E{e^{-beta W}} evaluated jump by jump */
    double jarzynski_rhs; /* e^{-beta delta_f} */
} ith_work_report;

ith_status ith_protocol_work(const ith_hamiltonian* h0, const ith_hamiltonian* h1, double beta,
                             const ith_schedule* s, ith_work_report* out);
/* Writes one dissipation per entry of counts. */
ith_status ith_dissipation_vs_steps(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                    double beta, const size_t* counts, size_t ncounts,
                                    double* out);

typedef struct ith_work_exponent_bridge {
    double avg_work;
    double exponent_sum;
} ith_work_exponent_bridge;

ith_status ith_work_exponent_bridge_of(const ith_tilted_family* f, const ith_schedule* s,
                                       ith_work_exponent_bridge* out);

ith_status ith_optimize_schedule(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                 double beta, size_t steps, ith_schedule** out);
ith_status ith_protocol_work_variance(const ith_hamiltonian* h0, const ith_hamiltonian* h1,
                                      double beta, const ith_schedule* s, double* out);

typedef struct ith_work_sample {
    double mean;
    double variance;
    size_t draws;
} ith_work_sample;

ith_status ith_sample_work(const ith_hamiltonian* h0, const ith_hamiltonian* h1, double beta,
                           const ith_schedule* s, uint64_t seed, size_t draws,
                           ith_work_sample* out);

/* ---- whole-library invariant sweep ---- */

typedef struct ith_check_result {
    char name[64];
    int pass;
    double worst;
    double tolerance;
    char detail[192];
} ith_check_result;

/* Runs every module's seeded invariant sweep.  Results fill the buffer in a
 * fixed order; *count receives the number available, and up to capacity are
 * written.  Tolerance overrides pair override_names[i] with
 * override_tols[i]; pass 0 overrides to use the defaults. */
ith_status ith_selfcheck(uint64_t seed, const char* const* override_names,
                         const double* override_tols, size_t n_overrides,
                         ith_check_result* results, size_t capacity, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* INFOTHERM_H */
