#include "primespline/inversion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "primespline/cubic_spline.hpp"
#include "primespline/quad_spline.hpp"

namespace primespline {

PrimeFunction::PrimeFunction(std::shared_ptr<const PrimeTable> table, SplineKind kind)
    : table_(std::move(table)), kind_(kind) {
    if (!table_) throw std::invalid_argument("PrimeFunction: null table");
    if (table_->size() < 4) throw std::domain_error("PrimeFunction: need at least 4 primes");
    const double sx = static_cast<double>(table_->size()) - 0.5;
    if (kind_ == SplineKind::quad) {
        sewing_ = make_sewing(*table_);
    } else {
        sewing_ = make_sewing(table_->size(), sx, cubic_eval(sx, *table_), cubic_deriv(sx, *table_));
    }
    spline_top_ = (kind_ == SplineKind::quad) ? quad_eval(sx, *table_) : cubic_eval(sx, *table_);
}

double PrimeFunction::value(double x) const {
    if (x < 1.0) return x + 1.0;   // natural extension of the initial polynomial
    if (x <= sewing_.sew_x)
        return kind_ == SplineKind::quad ? quad_eval(x, *table_) : cubic_eval(x, *table_);
    return prime_asymptote(x) + sewing_.c0 + sewing_.c1 * (x - sewing_.sew_x);
}

double PrimeFunction::deriv(double x) const {
    if (x < 1.0) return 1.0;
    if (x <= sewing_.sew_x)
        return kind_ == SplineKind::quad ? quad_deriv(x, *table_) : cubic_deriv(x, *table_);
    return prime_asymptote_deriv(x) + sewing_.c1;
}

double PrimeFunction::inverse(double x) const {
    if (kind_ != SplineKind::quad)
        throw std::invalid_argument("inverse: closed form requires the quad backend");
    if (!(x >= 2.0)) throw std::domain_error("inverse: requires x >= 2");
    if (x <= spline_top_) return quad_inverse(x, *table_);
    auto [y, trace] = inverse_newton(x);
    if (!trace.converged)
        throw std::runtime_error("inverse: Newton failed beyond the spline at x = " +
                                 std::to_string(x));
    return y;
}

double PrimeFunction::inverse_deriv(double x) const {
    if (kind_ != SplineKind::quad)
        throw std::invalid_argument("inverse_deriv: closed form requires the quad backend");
    if (!(x >= 2.0)) throw std::domain_error("inverse_deriv: requires x >= 2");
    if (x <= spline_top_) return quad_inverse_deriv(x, *table_);
    return 1.0 / deriv(inverse(x));
}

std::pair<double, NewtonTrace> PrimeFunction::inverse_newton(double x,
                                                             const NewtonConfig& cfg) const {
    if (!(x >= 2.0)) throw std::domain_error("inverse_newton: requires x >= 2");
    if (!(cfg.eps0 > 0.0)) throw std::invalid_argument("inverse_newton: eps0 must be > 0");

    double y0;
    switch (cfg.start) {
        case StartValue::x_over_lnx: y0 = x / std::log(x); break;
        case StartValue::riemann_r: y0 = riemann_r(x); break;
        default: y0 = log_integral(x); break;
    }

    const double tol = cfg.tol_resid > 0.0 ? cfg.tol_resid : 1e-10 * std::max(1.0, x);

    NewtonTrace trace;
    const double r0 = value(y0) - x;
    if (r0 == 0.0) {
        trace.converged = true;
        trace.eps0_used = cfg.eps0;
        return {y0, trace};
    }

    // A residual that stops shrinking aborts the attempt and escalates the
    // regularizer; the final attempt runs unguarded so a wiggly spline region
    // cannot exhaust the ladder outright.
    const double ladder[] = {cfg.eps0, 1e-3, 1e-1, 1.0, 10.0, 10.0};
    const int rungs = 6;
    for (int rung = 0; rung < rungs; ++rung) {
        const double eps0 = ladder[rung];
        if (rung > 0 && eps0 < cfg.eps0) continue;
        const bool guard_monotone = rung + 1 < rungs;

        trace = NewtonTrace{};
        trace.eps0_used = eps0;
        trace.n_factor = (eps0 * eps0 + eps0 * deriv(y0)) / std::abs(r0);

        double y = y0;
        double prev_abs = -1.0;
        for (int k = 0; k < cfg.max_iter; ++k) {
            const double dp = deriv(y);
            const double r = value(y) - x;
            if (guard_monotone && k > 0 && std::abs(r) >= prev_abs) break;
            prev_abs = std::abs(r);
            const double eps =
                0.5 * (std::sqrt(dp * dp + 4.0 * trace.n_factor * std::abs(r)) - dp);
            trace.iterations.push_back(NewtonIterate{y, r, eps});
            if (std::abs(r) <= tol) {
                trace.converged = true;
                return {y, trace};
            }
            const double denom = dp + eps;
            if (!(denom > 1e-300)) break;   // flat spot; escalate
            y -= r / denom;
            if (!std::isfinite(y)) break;
        }
    }
    return {trace.iterations.empty() ? y0 : trace.iterations.back().y, trace};
}

}  // namespace primespline
