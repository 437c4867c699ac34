#pragma once

#include <cstdint>
#include <functional>

#include "primespline/inversion.hpp"

namespace primespline {

enum class VarianceKind { A, B };

/// Windowed deviation study: kind A lives in index space (p(x) against the
/// raw asymptote), kind B in prime-value space (p^{-1}(x) against R(x)).
struct VarianceWindow {
    double x0;
    double eps;   // window length; <= 0 picks the default 0.25 * x0
    VarianceKind kind;

    double length() const { return eps > 0.0 ? eps : 0.25 * x0; }
};

/// pi(x) recovered from the inverse function: floor(p^{-1}(x)).
std::int64_t pi_floor(double x, const PrimeFunction& p);

/// A(x) = p(x) - ptilde(x) - (p(x0) - ptilde(x0)), zero at the window origin.
double variance_a(double x, const VarianceWindow& window, const PrimeFunction& p);

/// B(x) = p^{-1}(x) - R(x) - (p^{-1}(x0) - R(x0)).
double variance_b(double x, const VarianceWindow& window, const PrimeFunction& p);

/// Strict local maxima of f on the inclusive grid lo, lo+step, ..., hi after
/// merging equal-value plateaus into single nodes.  Endpoints never count.
std::int64_t count_peaks(const std::function<double(double)>& f, double lo, double hi,
                         double step);

}  // namespace primespline
