#pragma once

#include <span>

#include "infotherm/ensemble.hpp"

namespace infotherm {

// D(p||q) in nats.  +inf when p charges a state where q vanishes;
// results with |value| < 1e-14 are clamped to zero.
double relative_entropy(const DiscreteDistribution& p, const DiscreteDistribution& q);

struct LsiReport {
    double lhs;   // sum_i a_i ln(a_i/b_i)
    double rhs;   // (sum a) ln(sum a / sum b)
    double slack; // lhs - rhs = (sum a) * D(a/sum a || b/sum b)
};

// Log-sum inequality for nonnegative vectors (b entries strictly positive
// unless the matching a entry is 0, in which case the term is +inf).
LsiReport log_sum_inequality(std::span<const double> a, std::span<const double> b);

struct GibbsDecomposition {
    double avg_work;    // <h1 - h0> under the h0 equilibrium
    double delta_f;     // F1 - F0 at this beta
    double dissipation; // kT * D(P0 || P1) >= 0
};

// Abrupt switch h0 -> h1 at fixed beta: the mean work splits into the free
// energy change plus kT times the divergence between the two equilibria.
GibbsDecomposition gibbs_decomposition(const Hamiltonian& h0, const Hamiltonian& h1,
                                       InverseTemperature beta);

struct AdiabaticReport {
    double delta_sigma;   // Sigma(beta1) - Sigma(beta0)
    double heat_over_kT1; // beta1 * (E(beta1) - E(beta0))
    double slack;         // delta_sigma - heat_over_kT1 = D(P_beta0 || P_beta1)
};

// Equilibrium-to-equilibrium temperature step.  The default direction is
// heating (beta0 > beta1); pass allow_cooling to evaluate the reverse
// direction, where the same slack identity holds.
AdiabaticReport adiabatic_clausius(const Hamiltonian& h, InverseTemperature beta0,
                                   InverseTemperature beta1, bool allow_cooling = false);

// h2(p) = -p ln p - (1-p) ln(1-p), p in [0,1].
double binary_entropy(double p);

} // namespace infotherm
