#pragma once

#include <cstdint>
#include <vector>

#include "primespline/prime_table.hpp"

namespace primespline {

/// Affine correction sewing the spline to the asymptote at the last external
/// sewing point: corrected(x) = asymptote(x) + c0 + c1*(x - sew_x), chosen so
/// value and derivative match the spline at sew_x.
struct AsymptoteSewing {
    std::int64_t sew_index;   // table length N
    double sew_x;             // N - 0.5
    double c0;
    double c1;
};

/// mu(n) for 1 <= n <= size, sieve-computed.
class MobiusCache {
public:
    explicit MobiusCache(std::int64_t n_max);
    int at(std::int64_t n) const;   // -1, 0 or 1
    std::int64_t size() const { return static_cast<std::int64_t>(mu_.size()) - 1; }

private:
    std::vector<signed char> mu_;   // 1-based
};

/// Asymptotic prime at real index x:
///   x*(ln x + lnln x - 1 + (lnln x - 2)/ln x - ((lnln x)^2/2 - 3 lnln x + 5.5)/ln^2 x).
/// Requires x > e.
double prime_asymptote(double x);

/// Analytic d/dx of prime_asymptote.
double prime_asymptote_deriv(double x);

/// li(x) = integral of dt/ln t over [2, x]; li(2) = 0.  Adaptive
/// Gauss-Kronrod with cached octave checkpoints, absolute accuracy ~1e-11
/// at desk scale.
double log_integral(double x);

MobiusCache mobius_sieve(std::int64_t n_max);

/// R(x) = sum_{n>=1} mu(n)/n * li(x^{1/n}), truncated at the last n with
/// x^{1/n} >= 2 (dropped terms are exactly zero under li(2) = 0).
double riemann_r(double x);

/// Sewing data against S_quad at x = N - 0.5.  Needs at least 4 primes.
AsymptoteSewing make_sewing(const PrimeTable& table);

/// Sewing against arbitrary spline value/derivative at sew_x (cubic backend).
AsymptoteSewing make_sewing(std::int64_t sew_index, double sew_x, double spline_value,
                            double spline_deriv);

}  // namespace primespline
