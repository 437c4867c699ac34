#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "primespline/asymptotics.hpp"
#include "primespline/prime_table.hpp"

namespace primespline {

enum class SplineKind { quad, cubic };

/// Initial guess for the Newton inverse.
enum class StartValue { li, x_over_lnx, riemann_r };

struct NewtonConfig {
    double eps0 = 1e-6;       // first rung of the regularizer ladder
    int max_iter = 100;       // per ladder rung
    double tol_resid = 0.0;   // <= 0 means 1e-10 * max(1, x)
    StartValue start = StartValue::li;
};

struct NewtonIterate {
    double y;
    double residual;   // p(y) - x
    double eps;
};

struct NewtonTrace {
    std::vector<NewtonIterate> iterations;
    bool converged = false;
    double eps0_used = 0.0;
    double n_factor = 0.0;   // N = (eps0^2 + eps0*dp(y0)) / |p(y0) - x|
};

/// p(x), dp(x), p^{-1}(x), dp^{-1}(x) over the whole real line: initial
/// polynomial x+1 below 1, spline on [1, sew_x], affine-corrected asymptote
/// beyond.  The closed-form inverse serves the spline region (quad backend);
/// the autoregularized Newton iteration serves the asymptote region and the
/// cubic backend.  Immutable after construction; safe for concurrent use.
class PrimeFunction {
public:
    explicit PrimeFunction(std::shared_ptr<const PrimeTable> table,
                           SplineKind kind = SplineKind::quad);

    double value(double x) const;
    double deriv(double x) const;

    /// Closed form below spline_top(), Newton above.  Quad backend only.
    double inverse(double x) const;
    double inverse_deriv(double x) const;

    /// Autoregularized Newton solve of p(y) = x:
    ///   y_{k+1} = y_k - (p(y_k) - x) / (dp(y_k) + eps_k),
    ///   eps_k   = (sqrt(dp(y_k)^2 + 4N|p(y_k) - x|) - dp(y_k)) / 2.
    /// Escalates eps0 through {cfg.eps0, 1e-3, 1e-1, 1, 10} until converged;
    /// a failed run returns trace.converged == false with the last trace.
    std::pair<double, NewtonTrace> inverse_newton(double x, const NewtonConfig& cfg = {}) const;

    double sew_x() const { return sewing_.sew_x; }
    /// p(sew_x): upper end of the closed-form inverse region.
    double spline_top() const { return spline_top_; }
    const AsymptoteSewing& sewing() const { return sewing_; }
    SplineKind kind() const { return kind_; }
    const PrimeTable& table() const { return *table_; }
    std::shared_ptr<const PrimeTable> table_ptr() const { return table_; }

private:
    std::shared_ptr<const PrimeTable> table_;
    SplineKind kind_;
    AsymptoteSewing sewing_;
    double spline_top_;
};

}  // namespace primespline
