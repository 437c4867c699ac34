#include "primespline/quad_spline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "primespline/asymptotics.hpp"

namespace primespline {

namespace {

std::int64_t segment_index(double x, std::int64_t n) {
    const double fs = std::floor(x + 0.5);
    auto i = static_cast<std::int64_t>(fs);
    if (fs - x == 0.5) --i;        // half-integers belong to the left segment
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

void check_inverse_range(double x, const PrimeTable& table, const char* who) {
    const double hi = quad_inverse_domain_top(table);
    if (!(x >= 2.0 && x <= hi))
        throw std::domain_error(std::string(who) + ": x = " + std::to_string(x) +
                                " outside [2, " + std::to_string(hi) + "]");
}

double piece_b(double b_raw, const char* who) {
    if (b_raw < -1e-12)
        throw std::runtime_error(std::string(who) + ": negative radicand (segment location bug)");
    return b_raw < 0.0 ? 0.0 : b_raw;
}

}  // namespace

QuadSegmentPair quad_segment(std::int64_t i, const PrimeTable& table) {
    if (i < 2 || i > table.size() - 1)
        throw std::out_of_range("quad_segment: index " + std::to_string(i));
    return QuadSegmentPair{i, table.prime(i) - table.prime(i - 1) - 1,
                           table.prime(i + 1) - table.prime(i) - 1, table.prime(i)};
}

double quad_eval(double x, const PrimeTable& table) {
    check_range(x, table, "quad_eval");
    if (x <= 1.5) return x + 1.0;
    const auto s = quad_segment(segment_index(x, table.size()), table);
    const double w = x - static_cast<double>(s.i);
    const double p = static_cast<double>(s.p_i);
    if (w <= 0.0) return -2.0 * static_cast<double>(s.a_im1) * w * w + w + p;
    return 2.0 * static_cast<double>(s.a_i) * w * w + w + p;
}

double quad_deriv(double x, const PrimeTable& table) {
    check_range(x, table, "quad_deriv");
    if (x <= 1.5) return 1.0;
    const auto s = quad_segment(segment_index(x, table.size()), table);
    const double w = x - static_cast<double>(s.i);
    if (w <= 0.0) return -4.0 * static_cast<double>(s.a_im1) * w + 1.0;
    return 4.0 * static_cast<double>(s.a_i) * w + 1.0;
}

QuadCoeffRow quad_coeff_row(std::int64_t i, const PrimeTable& table) {
    const auto s = quad_segment(i, table);
    const std::int64_t p = s.p_i;
    const std::int64_t al = -2 * s.a_im1;
    const std::int64_t bl = 4 * i * s.a_im1 + 1;
    const std::int64_t gl = -2 * i * i * s.a_im1 + p - i;
    const std::int64_t ar = 2 * s.a_i;
    const std::int64_t br = -4 * i * s.a_i + 1;
    const std::int64_t gr = 2 * i * i * s.a_i + p - i;
    return QuadCoeffRow{i,  p,  al, bl, gl, bl * bl - 4 * al * gl,
                        ar, br, gr, br * br - 4 * ar * gr};
}

double quad_inverse_domain_top(const PrimeTable& table) {
    const auto n = table.size();
    if (n < 2) throw std::domain_error("quad_inverse: table too short");
    return 0.5 * static_cast<double>(table.prime(n - 1) + table.prime(n));
}

InverseSegment locate_inverse_segment(double x, const PrimeTable& table) {
    check_inverse_range(x, table, "locate_inverse_segment");
    const auto n = table.size();
    auto bounds = [&](std::int64_t i) {
        return std::pair<double, double>{
            0.5 * static_cast<double>(table.prime(i - 1) + table.prime(i)),
            0.5 * static_cast<double>(table.prime(i) + table.prime(i + 1))};
    };
    auto make = [&](std::int64_t i) {
        const auto [lo, hi] = bounds(i);
        return InverseSegment{i, lo, hi, table.prime(i) - table.prime(i - 1) - 1,
                              table.prime(i + 1) - table.prime(i) - 1, table.prime(i)};
    };

    std::int64_t i = static_cast<std::int64_t>(std::floor(log_integral(std::max(x, 2.0))));
    if (i < 2) i = 2;
    if (i > n - 1) i = n - 1;

    for (int step = 0; step < 64; ++step) {
        const auto [lo, hi] = bounds(i);
        if (x < lo && i > 2) {
            --i;
        } else if (x > hi && i < n - 1) {
            ++i;
        } else {
            return make(i);
        }
    }

    // li drifted too far from pi; bisect on the midpoint sequence instead.
    std::int64_t lo_i = 2, hi_i = n - 1;
    while (lo_i < hi_i) {
        const std::int64_t mid = lo_i + (hi_i - lo_i) / 2;
        if (x > bounds(mid).second)
            lo_i = mid + 1;
        else
            hi_i = mid;
    }
    return make(lo_i);
}

double quad_inverse(double x, const PrimeTable& table) {
    check_inverse_range(x, table, "quad_inverse");
    if (const auto idx = table.index_of(x); idx > 0) return static_cast<double>(idx);
    if (x <= 2.5) return x - 1.0;
    const auto seg = locate_inverse_segment(x, table);
    const double p = static_cast<double>(seg.p_i);
    const double fi = static_cast<double>(seg.i);
    if (x <= p) {
        const auto a = static_cast<double>(seg.a_im1);
        if (seg.a_im1 == 0) return fi + (x - p);            // linear limit, only i = 2
        const double b = piece_b(8.0 * a * (p - x) + 1.0, "quad_inverse");
        return fi + (1.0 - std::sqrt(b)) / (4.0 * a);
    }
    const auto a = static_cast<double>(seg.a_i);
    const double b = piece_b(8.0 * a * (x - p) + 1.0, "quad_inverse");
    return fi + (std::sqrt(b) - 1.0) / (4.0 * a);
}

double quad_inverse_deriv(double x, const PrimeTable& table) {
    check_inverse_range(x, table, "quad_inverse_deriv");
    if (x <= 2.5) return 1.0;
    const auto seg = locate_inverse_segment(x, table);
    const double p = static_cast<double>(seg.p_i);
    if (x <= p) {
        if (seg.a_im1 == 0) return 1.0;
        const double b = piece_b(8.0 * static_cast<double>(seg.a_im1) * (p - x) + 1.0,
                                 "quad_inverse_deriv");
        return 1.0 / std::sqrt(b);
    }
    const double b = piece_b(8.0 * static_cast<double>(seg.a_i) * (x - p) + 1.0,
                             "quad_inverse_deriv");
    return 1.0 / std::sqrt(b);
}

}  // namespace primespline
