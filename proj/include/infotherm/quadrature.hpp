#pragma once

#include <cstddef>
#include <functional>

namespace infotherm {

struct QuadratureResult {
    double value;
    double error_estimate; // accumulated Richardson estimate, <= abs_tol on success
    std::size_t evaluations;
};

// Deterministic adaptive Simpson integration of f over [a, b] to an
// absolute tolerance.  Throws NumericError if the recursion would exceed
// max_depth or f returns a non-finite value.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-10, int max_depth = 60);

} // namespace infotherm
