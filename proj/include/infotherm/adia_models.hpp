#pragma once

#include <functional>

#include "infotherm/quadrature.hpp"

namespace infotherm {

// Entropy gained by relaxing a unit-variance Gaussian noise ensemble from
// beta0 to beta1 <= beta0: (1/2) ln(beta0/beta1), the closed form of
// int dT/(2T).
double gaussian_entropy_increase(double beta0, double beta1);

// I(V; V + N(0, 1/beta)) for V ~ N(0, sigma2): (1/2) ln(1 + beta*sigma2).
double gaussian_mutual_information(double sigma2, double beta);

// Minimum mean-square error of estimating V from V + N(0, 1/beta):
// sigma2 / (1 + beta*sigma2).  sigma2 = +inf gives the limit 1/beta.
double gaussian_mmse(double sigma2, double beta);

// (1/2) int_{beta1}^{beta0} mmse(beta) dbeta in closed form
// = (1/2) ln((1 + beta0*sigma2) / (1 + beta1*sigma2)); equals the
// difference of the two channel mutual informations.
double immse_entropy_increase(double beta0, double beta1, double sigma2);

// Heat capacity of the Gaussian source-plus-noise ensemble in units of k:
// sigma2 / (2 (sigma2 + T)).  sigma2 = +inf is accepted and gives the
// equipartition value 1/2 at every T.
double gaussian_heat_capacity(double sigma2, double temperature);

// Two-level occupation probability epsilon(beta) = e^{-beta E0} /
// (1 + e^{-beta E0}): the crossover of the matching BSC.
double bsc_crossover(double e0, double beta);

// h2(eps(beta1)) - h2(eps(beta0)) for beta0 > beta1 (heating).
double bsc_entropy_increase(double e0, double beta0, double beta1);

// Schottky form (E0^2/T^2) e^{-E0/T} / (1 + e^{-E0/T})^2 in units of k.
double bsc_heat_capacity(double e0, double temperature);

// The crossover eps2 with eps1 = eps0 * (1-eps2) + (1-eps0) * eps2, i.e.
// the second cascade stage that realizes the degraded channel.
double degrade_crossover(double eps0, double eps1);

struct QuadCheck {
    double integral;    // int_{t0}^{t1} capacity(T)/T dT by adaptive Simpson
    double target;      // the closed-form entropy change it should equal
    double discrepancy; // |integral - target|
};

// Verifies dSigma = int C(T)/T dT for any integrable capacity curve.
QuadCheck heat_capacity_check(const std::function<double(double)>& capacity, double t0,
                              double t1, double target);

} // namespace infotherm
