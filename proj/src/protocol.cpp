#include "infotherm/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "infotherm/errors.hpp"
#include "infotherm/logspace.hpp"

namespace infotherm {

namespace {

void require_switchable(const Hamiltonian& h0, const Hamiltonian& h1, InverseTemperature beta) {
    if (h0.size() != h1.size())
        throw DomainError("protocol: energy tables must share an alphabet");
    if (h0.has_infinite_energy() || h1.has_infinite_energy())
        throw DomainError("protocol: switching requires finite energies throughout");
    if (!(beta.beta() > 0.0))
        throw DomainError("protocol: free energies need beta > 0");
}

// Equilibrium quantities of the interpolated table at one breakpoint, all
// in extended precision: lnZ, <h1-h0>, <(h1-h0)^2>.
struct StagePoint {
    long double ln_z;
    long double mean_d;
    long double mean_d2;
};

StagePoint stage_point(const Hamiltonian& h0, const Hamiltonian& h1, double beta, double lambda) {
    const std::size_t m = h0.size();
    std::vector<long double> lw(m);
    long double top = -kPosInf;
    for (std::size_t i = 0; i < m; ++i) {
        const long double e = (1.0L - static_cast<long double>(lambda)) * h0.energy(i) +
                              static_cast<long double>(lambda) * h1.energy(i);
        lw[i] = -static_cast<long double>(beta) * e;
        top = std::max(top, lw[i]);
    }
    StableSum z, zd, zd2;
    for (std::size_t i = 0; i < m; ++i) {
        const long double w = std::exp(lw[i] - top);
        const long double d = static_cast<long double>(h1.energy(i)) - h0.energy(i);
        z.add(w);
        zd.add(w * d);
        zd2.add(w * d * d);
    }
    StagePoint p;
    p.ln_z = top + std::log(z.value_l());
    p.mean_d = zd.value_l() / z.value_l();
    p.mean_d2 = zd2.value_l() / z.value_l();
    return p;
}

// ln E_lambda[ e^{-beta dlambda (h1-h0)} ] for one jump.
long double jump_log_factor(const Hamiltonian& h0, const Hamiltonian& h1, double beta,
                            double lambda, double dlambda, long double ln_z) {
    const std::size_t m = h0.size();
    std::vector<double> terms(m);
    for (std::size_t i = 0; i < m; ++i) {
        const long double e = (1.0L - static_cast<long double>(lambda)) * h0.energy(i) +
                              static_cast<long double>(lambda) * h1.energy(i);
        const long double d = static_cast<long double>(h1.energy(i)) - h0.energy(i);
        terms[i] = static_cast<double>(-static_cast<long double>(beta) * e - ln_z -
                                       static_cast<long double>(beta) * dlambda * d);
    }
    return log_sum_exp_l(terms);
}

} // namespace

ProtocolSchedule::ProtocolSchedule(std::vector<double> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.size() < 2)
        throw DomainError("protocol: a schedule needs at least two breakpoints");
    if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
        throw DomainError("protocol: schedule must start at 0 and end at 1");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i - 1]) || !(breakpoints_[i - 1] < breakpoints_[i]))
            throw DomainError("protocol: breakpoints must be strictly increasing");
    }
}

ProtocolSchedule ProtocolSchedule::uniform(std::size_t steps) {
    if (steps < 1) throw DomainError("protocol: need at least one step");
    std::vector<double> b(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        b[i] = static_cast<double>(i) / static_cast<double>(steps);
    b.front() = 0.0;
    b.back() = 1.0;
    return ProtocolSchedule(std::move(b));
}

WorkReport protocol_work(const Hamiltonian& h0, const Hamiltonian& h1, InverseTemperature beta,
                         const ProtocolSchedule& s) {
    require_switchable(h0, h1, beta);
    const double b = beta.beta();
    const auto bp = s.breakpoints();

    StableSum work;
    StableSum log_factor_sum;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const double dl = bp[k + 1] - bp[k];
        const StagePoint p = stage_point(h0, h1, b, bp[k]);
        work.add(static_cast<long double>(dl) * p.mean_d);
        log_factor_sum.add(jump_log_factor(h0, h1, b, bp[k], dl, p.ln_z));
    }

    const long double ln_z0 = stage_point(h0, h1, b, 0.0).ln_z;
    const long double ln_z1 = stage_point(h0, h1, b, 1.0).ln_z;
    const long double delta_f = (ln_z0 - ln_z1) / b;

    WorkReport r;
    r.avg_work = work.value();
    r.delta_f = static_cast<double>(delta_f);
    r.dissipation = static_cast<double>(work.value_l() - delta_f);
    r.jarzynski_lhs = static_cast<double>(std::exp(log_factor_sum.value_l()));
    r.jarzynski_rhs = static_cast<double>(std::exp(ln_z1 - ln_z0));
    return r;
}

std::vector<double> dissipation_vs_steps(const Hamiltonian& h0, const Hamiltonian& h1,
                                         InverseTemperature beta,
                                         std::span<const std::size_t> step_counts) {
    std::vector<double> out;
    out.reserve(step_counts.size());
    for (std::size_t k : step_counts)
        out.push_back(protocol_work(h0, h1, beta, ProtocolSchedule::uniform(k)).dissipation);
    return out;
}

WorkExponentBridge work_as_exponent_integral(const TiltedFamily& f, const ProtocolSchedule& s) {
    // energies -ln p over the common support; mutual absolute continuity
    // makes the restriction lossless
    std::vector<double> e0, e1;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.p0().log_prob(i) != kNegInf) {
            e0.push_back(-f.p0().log_prob(i));
            e1.push_back(-f.p1().log_prob(i));
        }
    const Hamiltonian h0{std::move(e0)}, h1{std::move(e1)};

    WorkExponentBridge br;
    br.avg_work = protocol_work(h0, h1, InverseTemperature(1.0), s).avg_work;
    StableSum acc;
    const auto bp = s.breakpoints();
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const ExponentPair e = exponent_pair(f, bp[k]);
        acc.add(static_cast<long double>(bp[k + 1] - bp[k]) *
                (static_cast<long double>(e.e1) - e.e0));
    }
    br.exponent_sum = acc.value();
    return br;
}

ProtocolSchedule optimize_schedule(const Hamiltonian& h0, const Hamiltonian& h1,
                                   InverseTemperature beta, std::size_t steps) {
    require_switchable(h0, h1, beta);
    if (steps < 1) throw DomainError("protocol: need at least one step");
    const ProtocolSchedule start = ProtocolSchedule::uniform(steps);
    std::vector<double> bp(start.breakpoints().begin(), start.breakpoints().end());
    if (steps == 1) return ProtocolSchedule(std::move(bp));

    const double b = beta.beta();
    const auto mean_d = [&](double lambda) {
        return static_cast<double>(stage_point(h0, h1, b, lambda).mean_d);
    };
    const auto total_work = [&](const std::vector<double>& pts) {
        StableSum w;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k)
            w.add(static_cast<long double>(pts[k + 1] - pts[k]) * mean_d(pts[k]));
        return w.value();
    };

    constexpr double kGolden = 0.6180339887498949;
    double current = total_work(bp);
    for (int sweep = 0; sweep < 200; ++sweep) {
        for (std::size_t k = 1; k + 1 < bp.size(); ++k) {
            const double a = bp[k - 1], c = bp[k + 1];
            const double wa = mean_d(a);
            // work contribution of the two jumps flanking breakpoint k
            const auto local = [&](double t) { return (t - a) * wa + (c - t) * mean_d(t); };
            double lo = a, hi = c;
            double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
            double f1 = local(x1), f2 = local(x2);
            for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                if (f1 <= f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - kGolden * (hi - lo);
                    f1 = local(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + kGolden * (hi - lo);
                    f2 = local(x2);
                }
            }
            const double cand = 0.5 * (lo + hi);
            if (cand > a && cand < c && local(cand) < local(bp[k])) bp[k] = cand;
        }
        const double next = total_work(bp);
        if (current - next < 1e-12 * (1.0 + std::fabs(current))) {
            current = next;
            break;
        }
        current = next;
    }
    return ProtocolSchedule(std::move(bp));
}

double protocol_work_variance(const Hamiltonian& h0, const Hamiltonian& h1,
                              InverseTemperature beta, const ProtocolSchedule& s) {
    require_switchable(h0, h1, beta);
    const auto bp = s.breakpoints();
    StableSum var;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const double dl = bp[k + 1] - bp[k];
        const StagePoint p = stage_point(h0, h1, beta.beta(), bp[k]);
        var.add(static_cast<long double>(dl) * dl * (p.mean_d2 - p.mean_d * p.mean_d));
    }
    return var.value();
}

WorkSample sample_work(const Hamiltonian& h0, const Hamiltonian& h1, InverseTemperature beta,
                       const ProtocolSchedule& s, std::uint64_t seed, std::size_t draws) {
    require_switchable(h0, h1, beta);
    if (draws < 2) throw DomainError("protocol: variance estimation needs at least two draws");
    const auto bp = s.breakpoints();
    const std::size_t m = h0.size(), jumps = bp.size() - 1;

    // per-jump cumulative equilibrium laws and per-jump work increments
    std::vector<std::vector<double>> cdf(jumps, std::vector<double>(m));
    std::vector<std::vector<double>> inc(jumps, std::vector<double>(m));
    for (std::size_t k = 0; k < jumps; ++k) {
        const DiscreteDistribution p =
            boltzmann(interpolate(h0, h1, bp[k]), InverseTemperature(beta.beta()));
        double run = 0.0;
        const double dl = bp[k + 1] - bp[k];
        for (std::size_t i = 0; i < m; ++i) {
            run += p.prob(i);
            cdf[k][i] = run;
            inc[k][i] = dl * (h1.energy(i) - h0.energy(i));
        }
        cdf[k][m - 1] = 1.0;
    }

    std::mt19937_64 gen(seed);
    const auto unit = [&]() {
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    };
    StableSum sum, sum_sq;
    for (std::size_t d = 0; d < draws; ++d) {
        StableSum w;
        for (std::size_t k = 0; k < jumps; ++k) {
            const double u = unit();
            const auto it = std::lower_bound(cdf[k].begin(), cdf[k].end(), u);
            const std::size_t i = std::min<std::size_t>(it - cdf[k].begin(), m - 1);
            w.add(inc[k][i]);
        }
        const long double wv = w.value_l();
        sum.add(wv);
        sum_sq.add(wv * wv);
    }
    WorkSample r;
    const long double n = static_cast<long double>(draws);
    const long double mean = sum.value_l() / n;
    r.mean = static_cast<double>(mean);
    r.variance = static_cast<double>((sum_sq.value_l() - n * mean * mean) / (n - 1.0L));
    r.draws = draws;
    return r;
}

} // namespace infotherm
