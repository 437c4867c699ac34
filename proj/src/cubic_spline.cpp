#include "primespline/cubic_spline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace primespline {

namespace {

// Active segment index for x in [1.5, N-0.5]: the unique i with
// i-0.5 <= x <= i+0.5, assigning exact half-integers to the left segment.
std::int64_t segment_index(double x, std::int64_t n) {
    const double fs = std::floor(x + 0.5);
    auto i = static_cast<std::int64_t>(fs);
    if (fs - x == 0.5) --i;
    if (i < 2) i = 2;
    if (i > n - 1) i = n - 1;
    return i;
}

void check_range(double x, const PrimeTable& table, const char* who) {
    const double hi = static_cast<double>(table.size()) - 0.5;
    if (!(x >= 1.0 && x <= hi))
        throw std::domain_error(std::string(who) + ": x = " + std::to_string(x) +
                                " outside [1, " + std::to_string(hi) + "]");
}

TripletReport triplet_of(std::int64_t i, std::int64_t pm, std::int64_t p, std::int64_t pp) {
    const std::int64_t span = pp - pm;
    const std::int64_t t = 3 * (span * span - 4);
    const std::int64_t q = 4 * p - 2 * (pm + pp);
    const std::int64_t d4 = q * q - t;     // 4*d_i, exact
    const double mid = 0.5 * static_cast<double>(pm + pp);
    const double half_width = 0.25 * std::sqrt(static_cast<double>(t));
    return TripletReport{i,
                         0.25 * static_cast<double>(d4),
                         d4 >= 0,
                         mid - half_width,
                         mid + half_width,
                         static_cast<double>(t)};
}

}  // namespace

CubicSegment cubic_segment(std::int64_t i, const PrimeTable& table) {
    if (i < 2 || i > table.size() - 1)
        throw std::out_of_range("cubic_segment: index " + std::to_string(i));
    const auto pm = table.prime(i - 1);
    const auto p = table.prime(i);
    const auto pp = table.prime(i + 1);
    return CubicSegment{i, 0.5 * static_cast<double>(pp - pm) - 1.0,
                        static_cast<double>(pp - p - 1), p, pp};
}

double cubic_eval(double x, const PrimeTable& table) {
    check_range(x, table, "cubic_eval");
    if (x <= 1.5) return x + 1.0;
    const auto s = cubic_segment(segment_index(x, table.size()), table);
    const double u = x - static_cast<double>(s.i) - 0.5;
    const double w = x - static_cast<double>(s.i);
    const double mid = 0.5 * static_cast<double>(s.p_i + s.p_ip1);
    return 2.0 * (s.a * u * u + s.b * u + mid) * w - 2.0 * static_cast<double>(s.p_i) * u;
}

double cubic_deriv(double x, const PrimeTable& table) {
    check_range(x, table, "cubic_deriv");
    if (x <= 1.5) return 1.0;
    const auto s = cubic_segment(segment_index(x, table.size()), table);
    const double u = x - static_cast<double>(s.i) - 0.5;
    const double w = x - static_cast<double>(s.i);
    return 2.0 * (2.0 * s.a * u + s.b) * w + 2.0 * s.a * u * u + 2.0 * s.b * u +
           static_cast<double>(s.p_ip1 - s.p_i);
}

TripletReport cubic_triplet(std::int64_t i, const PrimeTable& table) {
    if (i < 2 || i > table.size() - 1)
        throw std::out_of_range("cubic_triplet: index " + std::to_string(i));
    return triplet_of(i, table.prime(i - 1), table.prime(i), table.prime(i + 1));
}

std::vector<TripletReport> cubic_violations(std::int64_t n, const PrimeTable& table) {
    if (n > table.size())
        throw std::out_of_range("cubic_violations: n exceeds table size");
    std::vector<TripletReport> out;
    for (std::int64_t i = 2; i + 1 <= n; ++i) {
        auto r = triplet_of(i, table.prime(i - 1), table.prime(i), table.prime(i + 1));
        if (r.violates) out.push_back(r);
    }
    return out;
}

std::int64_t cubic_min_violating_gap(std::int64_t delta1) {
    if (delta1 != 2 && delta1 != 4 && delta1 != 6 && delta1 != 8)
        throw std::domain_error("cubic_min_violating_gap: unsupported delta1 " +
                                std::to_string(delta1));
    for (std::int64_t g2 = delta1;; g2 += 2) {
        const std::int64_t diff = g2 - delta1;
        const std::int64_t sum = g2 + delta1;
        if (4 * diff * diff - 3 * sum * sum + 12 >= 0) return g2;
    }
}

CubicMonomials cubic_monomials(std::int64_t i, const PrimeTable& table) {
    const auto s = cubic_segment(i, table);
    // c_i(x) = 2a w^3 + 2(b-a) w^2 + (a/2+1) w + p(i),  w = x - i
    const double a3 = 2.0 * s.a;
    const double a2 = 2.0 * (s.b - s.a);
    const double a1 = 0.5 * s.a + 1.0;
    const double a0 = static_cast<double>(s.p_i);
    const double di = static_cast<double>(i);
    return CubicMonomials{
        a3,
        -3.0 * a3 * di + a2,
        3.0 * a3 * di * di - 2.0 * a2 * di + a1,
        -a3 * di * di * di + a2 * di * di - a1 * di + a0,
    };
}

}  // namespace primespline
