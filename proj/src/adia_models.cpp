#include "infotherm/adia_models.hpp"

#include <cmath>

#include "infotherm/errors.hpp"
#include "infotherm/gibbs.hpp"
#include "infotherm/quadrature.hpp"

namespace infotherm {

namespace {

void require_heating(double beta0, double beta1) {
    if (!(beta0 > 0.0) || !(beta1 > 0.0) || !std::isfinite(beta0) || !std::isfinite(beta1))
        throw DomainError("broadcast: inverse temperatures must be positive and finite");
    if (beta1 > beta0)
        throw DomainError("broadcast: second stage must be hotter (beta1 <= beta0)");
}

void require_noise(double sigma2) {
    if (std::isnan(sigma2) || sigma2 <= 0.0)
        throw DomainError("broadcast: noise variance must be positive");
}

} // namespace

double gaussian_entropy_increase(double beta0, double beta1) {
    require_heating(beta0, beta1);
    return 0.5 * std::log(beta0 / beta1);
}

double gaussian_mutual_information(double sigma2, double beta) {
    require_noise(sigma2);
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw DomainError("broadcast: beta must be >= 0 and finite");
    if (std::isinf(sigma2)) throw UnsupportedError("broadcast: mutual information needs finite power");
    return 0.5 * std::log1p(beta * sigma2);
}

double gaussian_mmse(double sigma2, double beta) {
    require_noise(sigma2);
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw DomainError("broadcast: beta must be >= 0 and finite");
    if (std::isinf(sigma2)) return 1.0 / beta; // +inf at beta = 0
    return sigma2 / (1.0 + beta * sigma2);
}

double immse_entropy_increase(double beta0, double beta1, double sigma2) {
    require_heating(beta0, beta1);
    require_noise(sigma2);
    if (std::isinf(sigma2)) return 0.5 * std::log(beta0 / beta1);
    return 0.5 * (std::log1p(beta0 * sigma2) - std::log1p(beta1 * sigma2));
}

double gaussian_heat_capacity(double sigma2, double temperature) {
    require_noise(sigma2);
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw DomainError("broadcast: temperature must be positive and finite");
    if (std::isinf(sigma2)) return 0.5;
    return 0.5 * sigma2 / (sigma2 + temperature);
}

double bsc_crossover(double e0, double beta) {
    if (!(e0 > 0.0) || !std::isfinite(e0))
        throw DomainError("broadcast: level spacing must be positive and finite");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw DomainError("broadcast: beta must be >= 0 and finite");
    const double t = std::exp(-beta * e0);
    return t / (1.0 + t);
}

double bsc_entropy_increase(double e0, double beta0, double beta1) {
    require_heating(beta0, beta1);
    return binary_entropy(bsc_crossover(e0, beta1)) - binary_entropy(bsc_crossover(e0, beta0));
}

double bsc_heat_capacity(double e0, double temperature) {
    if (!(e0 > 0.0) || !std::isfinite(e0))
        throw DomainError("broadcast: level spacing must be positive and finite");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw DomainError("broadcast: temperature must be positive and finite");
    const double r = e0 / temperature;
    const double t = std::exp(-r);
    const double denom = 1.0 + t;
    return r * r * t / (denom * denom);
}

double degrade_crossover(double eps0, double eps1) {
    if (!(eps0 >= 0.0) || !(eps0 <= 0.5) || !(eps1 >= 0.0) || !(eps1 <= 0.5))
        throw DomainError("broadcast: crossovers must lie in [0, 1/2]");
    if (eps1 < eps0)
        throw DomainError("broadcast: downstream channel cannot be cleaner than upstream");
    if (eps0 == 0.5) {
        if (eps1 == 0.5) return 0.0; // any cascade preserves a pure-noise channel
        throw DomainError("broadcast: cannot degrade away from a pure-noise channel");
    }
    const double eps2 = (eps1 - eps0) / (1.0 - 2.0 * eps0);
    const double recon = eps0 * (1.0 - eps2) + (1.0 - eps0) * eps2;
    if (std::fabs(recon - eps1) > 1e-14 * (1.0 + std::fabs(eps1)))
        throw NumericError("broadcast: degraded cascade fails to reproduce the target crossover");
    return eps2;
}

QuadCheck heat_capacity_check(const std::function<double(double)>& capacity,
                              double t0, double t1, double target) {
    if (!(t0 > 0.0) || !(t1 > t0) || !std::isfinite(t1))
        throw DomainError("broadcast: need 0 < t0 < t1 finite");
    const QuadratureResult q = adaptive_simpson(
        [&](double t) { return capacity(t) / t; }, t0, t1, 1e-10, 60);
    QuadCheck c;
    c.integral = q.value;
    c.target = target;
    c.discrepancy = std::fabs(q.value - target);
    return c;
}

} // namespace infotherm
