#include "infotherm/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "infotherm/errors.hpp"

namespace infotherm {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw DomainError(std::string(what) + ": alphabet sizes differ");
}

// Boltzmann log-weight of one state; +inf energy means excluded at every
// beta, including the uniform limit.
double boltzmann_weight(double energy, double beta) {
    if (energy == kPosInf) return kNegInf;
    return -beta * energy;
}

} // namespace

DiscreteDistribution DiscreteDistribution::from_probs(std::span<const double> probs) {
    if (probs.empty()) throw DomainError("distribution: empty alphabet");
    StableSum total;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0)
            throw DomainError("distribution: probabilities must be finite and >= 0");
        total.add(p);
    }
    if (std::fabs(total.value() - 1.0) > 1e-12)
        throw DomainError("distribution: probabilities must sum to 1 within 1e-12");
    std::vector<double> lp(probs.size());
    const long double log_total = std::log(total.value_l());
    for (std::size_t i = 0; i < probs.size(); ++i)
        lp[i] = probs[i] > 0.0
                    ? static_cast<double>(std::log(static_cast<long double>(probs[i])) - log_total)
                    : kNegInf;
    return DiscreteDistribution(std::move(lp));
}

DiscreteDistribution DiscreteDistribution::from_log_weights(std::span<const double> log_weights) {
    if (log_weights.empty()) throw DomainError("distribution: empty alphabet");
    for (double w : log_weights)
        if (std::isnan(w) || w == kPosInf)
            throw DomainError("distribution: log weights must be < +inf and not NaN");
    const long double lse = log_sum_exp_l(log_weights);
    if (lse == kNegInf) throw DomainError("distribution: no state carries mass");
    std::vector<double> lp(log_weights.size());
    for (std::size_t i = 0; i < log_weights.size(); ++i)
        lp[i] = log_weights[i] == kNegInf
                    ? kNegInf
                    : static_cast<double>(static_cast<long double>(log_weights[i]) - lse);
    return DiscreteDistribution(std::move(lp));
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t size) {
    if (size == 0) throw DomainError("distribution: empty alphabet");
    std::vector<double> lp(size, -std::log(static_cast<double>(size)));
    return DiscreteDistribution(std::move(lp));
}

double DiscreteDistribution::entropy_nats() const {
    StableSum s;
    for (double lp : log_probs_)
        if (lp != kNegInf) s.add(-std::exp(static_cast<long double>(lp)) * lp);
    return s.value();
}

Hamiltonian::Hamiltonian(std::vector<double> energies) : energies_(std::move(energies)) {
    if (energies_.empty()) throw DomainError("hamiltonian: empty alphabet");
    for (double e : energies_) {
        if (std::isnan(e) || e == kNegInf)
            throw DomainError("hamiltonian: energies must not be NaN or -inf");
        if (e == kPosInf) has_inf_ = true;
    }
}

InverseTemperature::InverseTemperature(double beta) : beta_(beta) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw DomainError("inverse temperature: beta must be finite and >= 0");
}

double log_partition(const Hamiltonian& h, InverseTemperature beta) {
    std::vector<double> w(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) w[i] = boltzmann_weight(h.energy(i), beta.beta());
    const double lnz = log_sum_exp(w);
    if (lnz == kNegInf) throw DomainError("log_partition: no state carries Boltzmann weight");
    return lnz;
}

DiscreteDistribution boltzmann(const Hamiltonian& h, InverseTemperature beta) {
    std::vector<double> w(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) w[i] = boltzmann_weight(h.energy(i), beta.beta());
    return DiscreteDistribution::from_log_weights(w);
}

EnsembleReport ensemble_report(const Hamiltonian& h, InverseTemperature beta) {
    if (beta.beta() == 0.0)
        throw DomainError("ensemble_report: beta must be > 0 (the uniform limit has no "
                          "free energy)");
    const double b = beta.beta();
    std::vector<double> w(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) w[i] = boltzmann_weight(h.energy(i), b);
    const long double lnz_l = log_sum_exp_l(w);
    if (lnz_l == kNegInf) throw DomainError("ensemble_report: no state carries Boltzmann weight");

    StableSum energy;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (w[i] == kNegInf) continue;
        energy.add(std::exp(static_cast<long double>(w[i]) - lnz_l) *
                   static_cast<long double>(h.energy(i)));
    }

    EnsembleReport r;
    r.log_partition = static_cast<double>(lnz_l);
    r.internal_energy = energy.value();
    // Derived fields come from the rounded fields above, so the bookkeeping
    // identities re-verify bit-tightly on the report itself.
    r.entropy_nats = r.log_partition + b * r.internal_energy;
    r.free_energy = -r.log_partition / b;
    return r;
}

Hamiltonian interpolate(const Hamiltonian& h0, const Hamiltonian& h1, double lambda) {
    require_same_size(h0.size(), h1.size(), "interpolate");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw DomainError("interpolate: lambda must lie in [0,1]");
    std::vector<double> e(h0.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double a = h0.energy(i), b = h1.energy(i);
        if (lambda == 0.0) e[i] = a;
        else if (lambda == 1.0) e[i] = b;
        else if (a == kPosInf || b == kPosInf) e[i] = kPosInf;
        else e[i] = (1.0 - lambda) * a + lambda * b;
    }
    return Hamiltonian(std::move(e));
}

Hamiltonian hamiltonian_from_distribution(const DiscreteDistribution& p) {
    std::vector<double> e(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) e[i] = -p.log_prob(i);
    return Hamiltonian(std::move(e));
}

double expectation(const DiscreteDistribution& p, std::span<const double> f) {
    require_same_size(p.size(), f.size(), "expectation");
    StableSum s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double lp = p.log_prob(i);
        if (lp == kNegInf) continue;
        s.add(std::exp(static_cast<long double>(lp)) * static_cast<long double>(f[i]));
    }
    return s.value();
}

} // namespace infotherm
