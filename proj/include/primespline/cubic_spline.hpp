#pragma once

#include <cstdint>
#include <vector>

#include "primespline/prime_table.hpp"

namespace primespline {

/// One cubic piece c_i on [i-0.5, i+0.5].  The coefficients come from exact
/// integer prime gaps; a_i is a half-integer only at i = 2 (p(1) = 2 is even).
struct CubicSegment {
    std::int64_t i;
    double a;           // (p(i+1) - p(i-1))/2 - 1
    double b;           // p(i+1) - p(i) - 1
    std::int64_t p_i;
    std::int64_t p_ip1;
};

/// Monotonicity report for the prime triplet (p(i-1), p(i), p(i+1)).
/// violates <=> d >= 0 <=> p(i) lies outside the open interval (lower, upper).
struct TripletReport {
    std::int64_t i;
    double d;           // discriminant of the derivative quadratic
    bool violates;
    double lower;       // (p(i-1)+p(i+1))/2 - sqrt(t)/4
    double upper;       // (p(i-1)+p(i+1))/2 + sqrt(t)/4
    double t;           // 3*((p(i+1)-p(i-1))^2 - 4)
};

/// c_i expanded to alpha*x^3 + beta*x^2 + gamma*x + delta.
struct CubicMonomials {
    double alpha, beta, gamma, delta;
};

CubicSegment cubic_segment(std::int64_t i, const PrimeTable& table);

/// S_cub(x): x+1 on [1, 1.5], cubic pieces beyond.  Valid for
/// 1 <= x <= size()-0.5; exact at integer abscissas (c_i(i) = p(i)).
double cubic_eval(double x, const PrimeTable& table);

/// Analytic derivative of the active piece (1 on the initial segment).
double cubic_deriv(double x, const PrimeTable& table);

/// Discriminant analysis of triplet i (2 <= i <= size()-1).  The violation
/// flag is decided in exact integer arithmetic: 4*d = (4p - 2s)^2 - t with
/// s = p(i-1)+p(i+1), so no rounding can flip the boundary.
TripletReport cubic_triplet(std::int64_t i, const PrimeTable& table);

/// All violating triplets with index in [2, n-1], increasing i.
std::vector<TripletReport> cubic_violations(std::int64_t n, const PrimeTable& table);

/// Minimal even second gap that makes the gap pattern (delta1, gap) break the
/// triplet condition, found by scanning the integer sign condition
/// 4*(g2-g1)^2 - 3*(g1+g2)^2 + 12 >= 0 rather than quoting a table.
/// Accepts delta1 in {2, 4, 6, 8}.
std::int64_t cubic_min_violating_gap(std::int64_t delta1);

/// Expansion of c_i to monomials; used by the almost-arithmetic check
/// (all of 2*alpha, 2*beta, 2*gamma, 2*delta are integers for i >= 3).
CubicMonomials cubic_monomials(std::int64_t i, const PrimeTable& table);

}  // namespace primespline
