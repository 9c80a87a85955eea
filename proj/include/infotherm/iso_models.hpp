#pragma once

#include <array>
#include <cstdint>

#include "infotherm/gibbs.hpp"

namespace infotherm {

// Binary Markov chain pair on spins {-1,+1}: the reference kernel
// p0(x|x') = e^{J x x'} / (2 cosh J) and the mismatched kernel
// p1(x|x') = e^{J x x' + K x} / zeta(x').  Spin -1 maps to index 0,
// spin +1 to index 1.  |coupling| + |field| <= 300 keeps every
// normalizer finite in double.
struct IsingMismatch {
    IsingMismatch(double coupling, double field, std::int64_t length);

    double coupling;     // J
    double field;        // K
    std::int64_t length; // n >= 1
};

struct IsingKernels {
    std::array<std::array<double, 2>, 2> p0; // [prev][next]
    std::array<std::array<double, 2>, 2> p1;
    double z0;                  // 2 cosh J
    double z1;                  // 2 sqrt(cosh(J+K) cosh(J-K))
    std::array<double, 2> zeta; // per-branch normalizers 2 cosh(J -+ K)
};

// Both kernels plus normalizers; zeta is evaluated per branch and through
// the unified form z1 * [cosh(J+K)/cosh(J-K)]^{x'/2}, which must agree.
IsingKernels ising_kernels(double coupling, double field);

// B = K + (1/2) ln( cosh(J-K) / cosh(J+K) ): the uniform magnetic field
// that absorbs the mismatch kernel's boundary-dependent normalizer once
// neighbor sums are identified.
double effective_field(double coupling, double field);

struct IsingRedundancy {
    double total_nats;      // D(P0^n || P1^n), chain rule over n steps
    double per_symbol_rate; // stationary per-step divergence
    double edge_residual;   // total_nats - n * per_symbol_rate
};

// Exact O(n) mismatch redundancy.  The boundary spin x_0 is drawn from the
// stationary law of the reference kernel (uniform) and shared by both
// chains, so per-step marginals stay uniform and the residual is a
// boundary effect only.
IsingRedundancy ising_redundancy(const IsingMismatch& m);

// Work decomposition at beta = 1 between the sequence Hamiltonians of the
// two chains (constants included, so the Boltzmann laws are exactly the
// chain laws).  Exhaustive product construction for n <= 20, an O(n)
// streaming evaluation above; dissipation equals the redundancy total.
GibbsDecomposition ising_work_decomposition(const IsingMismatch& m);

// Geometric run-length law Pr{N = n} = e^{mu n} (1 - e^mu), n >= 0,
// chemical potential mu < 0.
struct RunLengthLaw {
    double log_partition; // ln Xi(mu) = -ln(1 - e^mu), the pressure at V=1, kT=1
    double mean_run;      // e^mu / (1 - e^mu)
};

RunLengthLaw runlength_law(double mu);

struct RunLengthRedundancy {
    double divergence;     // D(geom(mu0) || geom(mu1)), truncated-series sum
    double pressure_slack; // Xi-based closed form: dP - (mu1-mu0) * mean(mu0)
};

// The coding redundancy of using the mu1 law for mu0 data equals the
// slack in the pressure inequality; the two fields are computed through
// independent paths (series vs closed form) and cross-checked.  When mu0
// is within ~1e-5 of 0 the series would need more than the capped 4e6
// terms, and divergence falls back to the closed form.
RunLengthRedundancy runlength_redundancy(double mu0, double mu1);

} // namespace infotherm
