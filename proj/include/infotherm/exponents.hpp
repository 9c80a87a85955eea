#pragma once

#include <cstdint>

#include "infotherm/ensemble.hpp"

namespace infotherm {

// Geometric interpolation P_lambda ∝ P0^{1-lambda} P1^lambda between two
// strictly positive laws on the same alphabet.  lnZ(lambda) is convex,
// <= 0 on [0,1], 0 at both endpoints.
class TiltedFamily {
public:
    TiltedFamily(DiscreteDistribution p0, DiscreteDistribution p1);

    const DiscreteDistribution& p0() const { return p0_; }
    const DiscreteDistribution& p1() const { return p1_; }
    std::size_t size() const { return p0_.size(); }
    bool degenerate() const { return degenerate_; } // p0 == p1 as laws

    double log_partition(double lambda) const;            // lnZ(lambda)
    double log_partition_derivative(double lambda) const; // E_lambda[ln(p1/p0)]
    DiscreteDistribution tilted(double lambda) const;

private:
    DiscreteDistribution p0_;
    DiscreteDistribution p1_;
    bool degenerate_;
};

struct ExponentPair {
    double e0; // D(P_lambda || P0)
    double e1; // D(P_lambda || P1)
};

// The two hypothesis-testing error exponents at tilt lambda; their
// difference is -d lnZ/d lambda.
ExponentPair exponent_pair(const TiltedFamily& f, double lambda);

struct ChernoffPoint {
    double lambda_star; // argmin lnZ; NaN when degenerate
    double exponent;    // -lnZ(lambda_star) = e0 = e1 there
    bool degenerate;
};

// Locates the exponent-equalizing tilt by bisection on the (increasing)
// derivative of lnZ, to |dlnZ/dlambda| < 1e-12.
ChernoffPoint chernoff_point(const TiltedFamily& f);

struct AreaEquality {
    double area_e0; // int_0^1 e0(lambda) dlambda
    double area_e1; // int_0^1 e1(lambda) dlambda
    double gap;     // area_e0 - area_e1, zero in exact arithmetic
};

AreaEquality area_equality(const TiltedFamily& f);

struct ErrorOracle {
    double log_p_err0; // ln P0{ test rejects hypothesis 0 }
    double log_p_err1; // ln P1{ test accepts hypothesis 0 }
    double slope0;     // -(1/n) log_p_err0
    double slope1;
    double c0;         // |slope0 - e0(lambda)| * n / max(ln n, 1)
    double c1;
};

// Exact error probabilities of the likelihood-ratio test with threshold
// E_{P_lambda}[ln(P0/P1)] on n iid symbols, via log-domain type
// enumeration (alphabet <= 2: n <= 100000; alphabet 3: n <= 2000).
// Ties (sample LLR equal to the threshold) accept hypothesis 0.
ErrorOracle exact_error_oracle(const TiltedFamily& f, std::int64_t n, double lambda);

} // namespace infotherm
