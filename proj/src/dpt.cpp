#include "infotherm/dpt.hpp"

#include <cmath>

#include "infotherm/errors.hpp"

namespace infotherm {

namespace {

void check_pmf_entry(double p, const char* what) {
    if (!std::isfinite(p) || p < 0.0)
        throw DomainError(std::string(what) + ": entries must be finite and >= 0");
}

// p * ln(num/den) with 0 * ln(0) = 0; callers guarantee den > 0 while p > 0.
long double plogratio(long double p, long double num, long double den) {
    if (p <= 0.0L) return 0.0L;
    return p * std::log(num / den);
}

} // namespace

ConditionalTable::ConditionalTable(std::vector<double> probs, std::size_t rows, std::size_t cols)
    : probs_(std::move(probs)), rows_(rows), cols_(cols) {
    if (rows_ == 0 || cols_ == 0) throw DomainError("conditional table: empty dimension");
    if (probs_.size() != rows_ * cols_)
        throw DomainError("conditional table: size does not match dimensions");
    for (std::size_t r = 0; r < rows_; ++r) {
        StableSum row;
        for (std::size_t c = 0; c < cols_; ++c) {
            check_pmf_entry(probs_[r * cols_ + c], "conditional table");
            row.add(probs_[r * cols_ + c]);
        }
        if (std::fabs(row.value() - 1.0) > 1e-12)
            throw DomainError("conditional table: a row does not sum to 1 within 1e-12");
    }
}

JointTriple::JointTriple(std::vector<double> pmf, std::size_t nx, std::size_t nu, std::size_t nv)
    : pmf_(std::move(pmf)), nx_(nx), nu_(nu), nv_(nv) {
    if (nx_ == 0 || nu_ == 0 || nv_ == 0) throw DomainError("joint triple: empty dimension");
    if (pmf_.size() != nx_ * nu_ * nv_)
        throw DomainError("joint triple: size does not match dimensions");
    StableSum total;
    for (double p : pmf_) {
        check_pmf_entry(p, "joint triple");
        total.add(p);
    }
    if (std::fabs(total.value() - 1.0) > 1e-12)
        throw DomainError("joint triple: mass must sum to 1 within 1e-12");
}

JointTriple make_markov(const DiscreteDistribution& pv, const ConditionalTable& u_given_v,
                        const ConditionalTable& x_given_u) {
    const std::size_t nv = pv.size(), nu = u_given_v.cols(), nx = x_given_u.cols();
    if (u_given_v.rows() != nv)
        throw DomainError("make_markov: u_given_v must have one row per v symbol");
    if (x_given_u.rows() != nu)
        throw DomainError("make_markov: x_given_u must have one row per u symbol");
    std::vector<double> pmf(nx * nu * nv);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t u = 0; u < nu; ++u)
            for (std::size_t v = 0; v < nv; ++v)
                pmf[(x * nu + u) * nv + v] = pv.prob(v) * u_given_v.p(v, u) * x_given_u.p(u, x);
    return JointTriple(std::move(pmf), nx, nu, nv);
}

DptReport dpt_report(const JointTriple& j) {
    const std::size_t nx = j.nx(), nu = j.nu(), nv = j.nv();
    std::vector<long double> px(nx), pu(nu), pv(nv), pxu(nx * nu), pxv(nx * nv), puv(nu * nv);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t u = 0; u < nu; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                const long double p = j.p(x, u, v);
                px[x] += p;
                pu[u] += p;
                pv[v] += p;
                pxu[x * nu + u] += p;
                pxv[x * nv + v] += p;
                puv[u * nv + v] += p;
            }

    StableSum i_xu, i_xv, exp_div, defect;
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t u = 0; u < nu; ++u)
            i_xu.add(plogratio(pxu[x * nu + u], pxu[x * nu + u], px[x] * pu[u]));
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t v = 0; v < nv; ++v)
            i_xv.add(plogratio(pxv[x * nv + v], pxv[x * nv + v], px[x] * pv[v]));
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t u = 0; u < nu; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                const long double p = j.p(x, u, v);
                // E{D(P(x|u,v) || P(x|v))} and I(X;V|U), written over the joint
                exp_div.add(plogratio(p, p * pv[v], puv[u * nv + v] * pxv[x * nv + v]));
                defect.add(plogratio(p, p * pu[u], pxu[x * nu + u] * puv[u * nv + v]));
            }

    DptReport r;
    r.i_xu = i_xu.value();
    r.i_xv = i_xv.value();
    r.gap = static_cast<double>(i_xu.value_l() - i_xv.value_l());
    r.expected_divergence = exp_div.value();
    r.markov_defect = defect.value();
    return r;
}

ConditionalEntropyPair conditioning_reduces_entropy(const JointTriple& j) {
    const std::size_t nx = j.nx(), nu = j.nu(), nv = j.nv();
    std::vector<long double> pv(nv), pxv(nx * nv), puv(nu * nv);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t u = 0; u < nu; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                const long double p = j.p(x, u, v);
                pv[v] += p;
                pxv[x * nv + v] += p;
                puv[u * nv + v] += p;
            }
    StableSum h_xv, h_xuv;
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t v = 0; v < nv; ++v)
            h_xv.add(-plogratio(pxv[x * nv + v], pxv[x * nv + v], pv[v]));
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t u = 0; u < nu; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                const long double p = j.p(x, u, v);
                h_xuv.add(-plogratio(p, p, puv[u * nv + v]));
            }
    return ConditionalEntropyPair{h_xv.value(), h_xuv.value()};
}

double fano_bound(std::int64_t n, double rate, double capacity) {
    if (n < 1) throw DomainError("fano_bound: block length must be >= 1");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw DomainError("fano_bound: rate must be finite and > 0");
    if (!(capacity >= 0.0) || !std::isfinite(capacity))
        throw DomainError("fano_bound: capacity must be finite and >= 0");
    const double v = 1.0 - 1.0 / static_cast<double>(n) - capacity / rate;
    return v > 0.0 ? v : 0.0;
}

} // namespace infotherm
