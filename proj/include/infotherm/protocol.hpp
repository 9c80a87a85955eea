#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "infotherm/ensemble.hpp"
#include "infotherm/exponents.hpp"
#include "infotherm/gibbs.hpp"

namespace infotherm {

// Control schedule 0 = lambda_0 < ... < lambda_K = 1 for switching a
// Hamiltonian from h0 to h1 in K jumps, equilibrating after each.
class ProtocolSchedule {
public:
    explicit ProtocolSchedule(std::vector<double> breakpoints);
    static ProtocolSchedule uniform(std::size_t steps);

    std::size_t steps() const { return breakpoints_.size() - 1; } // K
    std::span<const double> breakpoints() const { return breakpoints_; }

private:
    std::vector<double> breakpoints_;
};

struct WorkReport {
    double avg_work;      // sum_k dlambda_k <h1 - h0>_{lambda_k}
    double delta_f;       // F(1) - F(0)
    double dissipation;   // avg_work - delta_f >= 0
    double jarzynski_lhs; // E{ e^{-beta W} }, evaluated jump by jump
    double jarzynski_rhs; // e^{-beta delta_f}; equals the lhs exactly here
};

// Work accounting for the jump-then-equilibrate protocol.  Both
// Hamiltonians must be finite everywhere.
WorkReport protocol_work(const Hamiltonian& h0, const Hamiltonian& h1,
                         InverseTemperature beta, const ProtocolSchedule& s);

// Uniform-schedule dissipation for each requested step count; decays like
// 1/K for smooth instances.
std::vector<double> dissipation_vs_steps(const Hamiltonian& h0, const Hamiltonian& h1,
                                         InverseTemperature beta,
                                         std::span<const std::size_t> step_counts);

struct WorkExponentBridge {
    double avg_work;     // protocol work between the -ln p Hamiltonians at beta=1
    double exponent_sum; // sum_k dlambda_k (e1(lambda_k) - e0(lambda_k))
};

// The mean work of tilting between hypothesis-testing Hamiltonians equals
// the discretized integral of the exponent difference.
WorkExponentBridge work_as_exponent_integral(const TiltedFamily& f, const ProtocolSchedule& s);

// Coordinate-descent refinement of the interior breakpoints (golden-section
// per coordinate, sweeps until relative improvement < 1e-12 or 200 sweeps).
// Starts from the uniform schedule, so the result never dissipates more.
ProtocolSchedule optimize_schedule(const Hamiltonian& h0, const Hamiltonian& h1,
                                   InverseTemperature beta, std::size_t steps);

// Exact Var(W): jump states are drawn independently from the equilibria,
// so variances add across jumps.
double protocol_work_variance(const Hamiltonian& h0, const Hamiltonian& h1,
                              InverseTemperature beta, const ProtocolSchedule& s);

struct WorkSample {
    double mean;
    double variance; // unbiased
    std::size_t draws;
};

// Monte Carlo work draws (diagnostic; deterministic for a fixed seed).
WorkSample sample_work(const Hamiltonian& h0, const Hamiltonian& h1, InverseTemperature beta,
                       const ProtocolSchedule& s, std::uint64_t seed, std::size_t draws);

} // namespace infotherm
