#include "infotherm/quadrature.hpp"

#include <cmath>

#include "infotherm/errors.hpp"

namespace infotherm {

namespace {

struct Worker {
    const std::function<double(double)>& f;
    std::size_t evals = 0;
    long double err = 0.0L;

    double eval(double x) {
        ++evals;
        const double v = f(x);
        if (std::isnan(v) || std::isinf(v))
            throw NumericError("quadrature: integrand returned a non-finite value");
        return v;
    }

    long double simpson(double a, double b, double fa, double fm, double fb) const {
        return (static_cast<long double>(b) - a) / 6.0L *
               (static_cast<long double>(fa) + 4.0L * fm + fb);
    }

    long double recurse(double a, double b, double fa, double fm, double fb,
                        long double whole, double tol, int depth, int max_depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = eval(lm), frm = eval(rm);
        const long double left = simpson(a, m, fa, flm, fm);
        const long double right = simpson(m, b, fm, frm, fb);
        const long double delta = left + right - whole;
        if (std::fabs(static_cast<double>(delta)) <= 15.0 * tol || m <= a || m >= b) {
            err += std::fabs(static_cast<double>(delta)) / 15.0;
            return left + right + delta / 15.0;
        }
        if (depth >= max_depth)
            throw NumericError("quadrature: recursion depth exhausted before convergence");
        const double half_tol = 0.5 * tol;
        return recurse(a, m, fa, flm, fm, left, half_tol, depth + 1, max_depth) +
               recurse(m, b, fm, frm, fb, right, half_tol, depth + 1, max_depth);
    }
};

} // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth) {
    if (std::isnan(a) || std::isnan(b) || std::isinf(a) || std::isinf(b))
        throw DomainError("quadrature: endpoints must be finite");
    if (!(abs_tol > 0.0)) throw DomainError("quadrature: tolerance must be positive");
    if (max_depth < 1) throw DomainError("quadrature: max_depth must be >= 1");
    if (a > b) throw DomainError("quadrature: need a <= b");
    if (a == b) return {0.0, 0.0, 0};

    Worker w{f};
    const double m = 0.5 * (a + b);
    const double fa = w.eval(a), fm = w.eval(m), fb = w.eval(b);
    const long double whole = w.simpson(a, b, fa, fm, fb);
    const long double value = w.recurse(a, b, fa, fm, fb, whole, abs_tol, 0, max_depth);

    QuadratureResult r;
    r.value = static_cast<double>(value);
    r.error_estimate = static_cast<double>(w.err);
    r.evaluations = w.evals;
    return r;
}

} // namespace infotherm
