#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infotherm/ensemble.hpp"

namespace infotherm {

// Row-stochastic table: rows index the conditioning symbol, columns the
// outcome; every row sums to 1 within 1e-12.
class ConditionalTable {
public:
    ConditionalTable(std::vector<double> probs, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double p(std::size_t row, std::size_t col) const { return probs_[row * cols_ + col]; }

private:
    std::vector<double> probs_;
    std::size_t rows_;
    std::size_t cols_;
};

// Joint pmf over (x, u, v), flat row-major [x][u][v]; entries >= 0, total
// mass 1 within 1e-12.
class JointTriple {
public:
    JointTriple(std::vector<double> pmf, std::size_t nx, std::size_t nu, std::size_t nv);

    std::size_t nx() const { return nx_; }
    std::size_t nu() const { return nu_; }
    std::size_t nv() const { return nv_; }
    double p(std::size_t x, std::size_t u, std::size_t v) const {
        return pmf_[(x * nu_ + u) * nv_ + v];
    }
    std::span<const double> pmf() const { return pmf_; }

private:
    std::vector<double> pmf_;
    std::size_t nx_, nu_, nv_;
};

// Builds p(x,u,v) = p(v) p(u|v) p(x|u), i.e. a chain in which X and V are
// conditionally independent given U.
JointTriple make_markov(const DiscreteDistribution& pv, const ConditionalTable& u_given_v,
                        const ConditionalTable& x_given_u);

struct DptReport {
    double i_xu;                // I(X;U) in nats
    double i_xv;                // I(X;V)
    double gap;                 // i_xu - i_xv
    double expected_divergence; // E_{(U,V)} D( P(X|U,V) || P(X|V) )
    double markov_defect;       // I(X;V|U); 0 iff the chain property holds
};

DptReport dpt_report(const JointTriple& j);

struct ConditionalEntropyPair {
    double h_x_given_v;  // H(X|V)
    double h_x_given_uv; // H(X|U,V) <= H(X|V)
};

ConditionalEntropyPair conditioning_reduces_entropy(const JointTriple& j);

// max(0, 1 - 1/n - capacity/rate): converse lower bound on the error of
// any length-n code of the given rate over a channel of the given capacity.
double fano_bound(std::int64_t n, double rate, double capacity);

} // namespace infotherm
