#pragma once

#include <cstdint>

#include "primespline/prime_table.hpp"

namespace primespline {

/// Parabola pair q_i = (q_i^l, q_i^r) on [i-0.5, i+0.5].  a_i counts the
/// composites strictly between p(i) and p(i+1); a_1 = 0 is the only zero.
struct QuadSegmentPair {
    std::int64_t i;
    std::int64_t a_im1;   // p(i) - p(i-1) - 1
    std::int64_t a_i;     // p(i+1) - p(i) - 1
    std::int64_t p_i;
};

/// Expanded integer coefficients of q_i^l and q_i^r with the quadratic
/// discriminants d = beta^2 - 4*alpha*gamma.
struct QuadCoeffRow {
    std::int64_t i;
    std::int64_t p_i;
    std::int64_t alpha_l, beta_l, gamma_l, d_l;
    std::int64_t alpha_r, beta_r, gamma_r, d_r;
};

/// Inverse-spline piece t_i, covering [(p(i-1)+p(i))/2, (p(i)+p(i+1))/2].
struct InverseSegment {
    std::int64_t i;
    double x_lo;
    double x_hi;
    std::int64_t a_im1;
    std::int64_t a_i;
    std::int64_t p_i;
};

QuadSegmentPair quad_segment(std::int64_t i, const PrimeTable& table);

/// S_quad(x) for 1 <= x <= size()-0.5.  Exact at integers (q_i(i) = p(i)) and
/// at half-integers (midpoint of the adjacent primes); both sub-pieces are
/// evaluated in the nested form sign*2a*(x-i)^2 + (x-i) + p(i).
double quad_eval(double x, const PrimeTable& table);

/// dS_quad/dx; always >= 1, equal to 1 exactly at integer abscissas.
double quad_deriv(double x, const PrimeTable& table);

/// Integer coefficient row (all eight entries exact in 64-bit).
QuadCoeffRow quad_coeff_row(std::int64_t i, const PrimeTable& table);

/// S_quad^{-1}(x) in closed form for 2 <= x <= (p(N-1)+p(N))/2.
/// Exact at prime abscissas: quad_inverse(p(i)) == i.
double quad_inverse(double x, const PrimeTable& table);

/// d S_quad^{-1}/dx = b^{-1/2} on the active piece (1 on [2, 2.5] and on the
/// degenerate a = 0 piece).
double quad_inverse_deriv(double x, const PrimeTable& table);

/// Finds the inverse piece covering x, starting from floor(li(x)) and
/// stepping +-1 (at most 64 steps), then falling back to binary search over
/// the prime midpoints.  Works whether li(x) over- or under-counts pi(x).
InverseSegment locate_inverse_segment(double x, const PrimeTable& table);

/// Upper end of the closed-form inverse domain, (p(N-1)+p(N))/2.
double quad_inverse_domain_top(const PrimeTable& table);

}  // namespace primespline
