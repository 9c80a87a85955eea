#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "infotherm/logspace.hpp"

namespace infotherm {

// Probability law on a finite alphabet, stored as log probabilities.
// Entries may be -inf (null states); the exp-sum is normalized to 1 on
// construction.
class DiscreteDistribution {
public:
    static DiscreteDistribution from_probs(std::span<const double> probs);
    static DiscreteDistribution from_log_weights(std::span<const double> log_weights);
    static DiscreteDistribution uniform(std::size_t size);

    std::size_t size() const { return log_probs_.size(); }
    double log_prob(std::size_t i) const { return log_probs_[i]; }
    double prob(std::size_t i) const { return std::exp(log_probs_[i]); }
    std::span<const double> log_probs() const { return log_probs_; }

    // -sum p ln p in nats, with 0 ln 0 = 0.
    double entropy_nats() const;

private:
    explicit DiscreteDistribution(std::vector<double> lp) : log_probs_(std::move(lp)) {}
    std::vector<double> log_probs_;
};

// Energy table over a finite alphabet.  Energies are finite, except that
// +inf is admitted to mark a state excluded at every temperature (it gets
// zero Boltzmann weight); hamiltonian_from_distribution produces such
// entries for null states.  NaN and -inf are rejected.
class Hamiltonian {
public:
    explicit Hamiltonian(std::vector<double> energies);

    std::size_t size() const { return energies_.size(); }
    double energy(std::size_t i) const { return energies_[i]; }
    std::span<const double> energies() const { return energies_; }
    bool has_infinite_energy() const { return has_inf_; }

private:
    std::vector<double> energies_;
    bool has_inf_ = false;
};

// beta >= 0 and finite.  beta = 0 is the uniform limit, accepted by
// log_partition and boltzmann only; the report quantities need beta > 0.
class InverseTemperature {
public:
    explicit InverseTemperature(double beta);
    double beta() const { return beta_; }
    double temperature() const { return 1.0 / beta_; }

private:
    double beta_;
};

struct EnsembleReport {
    double log_partition;   // lnZ(beta)
    double internal_energy; // E = <energy>
    double entropy_nats;    // lnZ + beta*E
    double free_energy;     // -lnZ/beta
};

double log_partition(const Hamiltonian& h, InverseTemperature beta);
DiscreteDistribution boltzmann(const Hamiltonian& h, InverseTemperature beta);
EnsembleReport ensemble_report(const Hamiltonian& h, InverseTemperature beta);

// Pointwise (1-lambda)*h0 + lambda*h1 for lambda in [0,1]; an endpoint
// ignores the other table's +inf entries.
Hamiltonian interpolate(const Hamiltonian& h0, const Hamiltonian& h1, double lambda);

// Energies -ln p(x); null states become +inf.
Hamiltonian hamiltonian_from_distribution(const DiscreteDistribution& p);

// sum_x p(x) f(x), skipping null states of p (so an excluded state never
// weighs in, even against an infinite value).
double expectation(const DiscreteDistribution& p, std::span<const double> f);

} // namespace infotherm
