#include "primespline/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace primespline {

namespace {

void check_window(double x, const VarianceWindow& window, const char* who) {
    if (!(window.length() > 0.0)) throw std::domain_error(std::string(who) + ": empty window");
    if (!(x >= window.x0 && x < window.x0 + window.length()))
        throw std::domain_error(std::string(who) + ": x outside [x0, x0 + eps)");
}

}  // namespace

std::int64_t pi_floor(double x, const PrimeFunction& p) {
    if (!(x >= 2.0)) throw std::domain_error("pi_floor: requires x >= 2");
    return static_cast<std::int64_t>(std::floor(p.inverse(x)));
}

double variance_a(double x, const VarianceWindow& window, const PrimeFunction& p) {
    check_window(x, window, "variance_a");
    return p.value(x) - prime_asymptote(x) - (p.value(window.x0) - prime_asymptote(window.x0));
}

double variance_b(double x, const VarianceWindow& window, const PrimeFunction& p) {
    check_window(x, window, "variance_b");
    return p.inverse(x) - riemann_r(x) - (p.inverse(window.x0) - riemann_r(window.x0));
}

std::int64_t count_peaks(const std::function<double(double)>& f, double lo, double hi,
                         double step) {
    if (!(step > 0.0) || !(hi > lo)) throw std::domain_error("count_peaks: bad grid");
    std::vector<double> merged;
    const auto npts = static_cast<std::int64_t>(std::floor((hi - lo) / step)) + 1;
    merged.reserve(static_cast<std::size_t>(npts));
    for (std::int64_t k = 0; k < npts; ++k) {
        const double v = f(lo + static_cast<double>(k) * step);
        if (merged.empty() || v != merged.back()) merged.push_back(v);   // plateau merge
    }
    std::int64_t peaks = 0;
    for (std::size_t j = 1; j + 1 < merged.size(); ++j)
        if (merged[j] > merged[j - 1] && merged[j] > merged[j + 1]) ++peaks;
    return peaks;
}

}  // namespace primespline
