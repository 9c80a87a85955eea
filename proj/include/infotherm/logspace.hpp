#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace infotherm {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulator in extended precision.  The identity
// checks downstream compare quantities across six decades of beta; the
// extra mantissa bits keep their residuals well under the 1e-12 gates.
class StableSum {
public:
    void add(long double x) {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    long double value_l() const { return sum_ + comp_; }
    double value() const { return static_cast<double>(value_l()); }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

// log(sum_i exp(x_i)), max-shifted.  -inf entries drop out; an empty or
// all-(-inf) input yields -inf.
inline long double log_sum_exp_l(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs)
        if (x > m) m = x;
    if (m == kNegInf) return m;
    StableSum s;
    for (double x : xs)
        if (x != kNegInf) s.add(std::exp(static_cast<long double>(x) - m));
    return static_cast<long double>(m) + std::log(s.value_l());
}

inline double log_sum_exp(std::span<const double> xs) {
    return static_cast<double>(log_sum_exp_l(xs));
}

// x*ln(x) with the 0*ln(0) = 0 convention.
inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// ln(2*cosh(y)) without overflow for large |y|.
inline double ln_two_cosh(double y) {
    const double a = std::fabs(y);
    return a + std::log1p(std::exp(-2.0 * a));
}

} // namespace infotherm
