#include "helpers.hpp"

#include <cmath>

namespace psptest {

using primespline::PrimeTable;

const PrimeTable& table_10k() {
    static const PrimeTable t = PrimeTable::sieve(10000);
    return t;
}

const PrimeTable& table_100k() {
    static const PrimeTable t = PrimeTable::sieve(100100);
    return t;
}

std::shared_ptr<const PrimeTable> table_10k_ptr() {
    static const auto t = std::make_shared<const PrimeTable>(PrimeTable::sieve(10000));
    return t;
}

std::shared_ptr<const PrimeTable> table_10000_primes() {
    static const auto t = std::make_shared<const PrimeTable>(PrimeTable::sieve(104729));
    return t;
}

std::shared_ptr<const PrimeTable> table_6000_primes() {
    static const auto t = std::make_shared<const PrimeTable>(PrimeTable::sieve(59359));
    return t;
}

std::shared_ptr<const PrimeTable> table_millionth() {
    static const auto t = std::make_shared<const PrimeTable>(PrimeTable::sieve(15485863));
    return t;
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = f(0.5 * (a + m));
    const double rm = f(0.5 * (m + b));
    const double left = simpson(f, a, fa, m, fm, lm);
    const double right = simpson(f, m, fm, b, fb, rm);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= 40) return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, left, 0.5 * tol, depth + 1) +
           simpson_rec(f, m, fm, b, fb, rm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double simpson_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson_rec(f, a, fa, b, fb, fm, simpson(f, a, fa, b, fb, fm), tol, 0);
}

double midpoint_rule(const std::function<double(double)>& f, double a, double b,
                     std::int64_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::int64_t k = 0; k < panels; ++k)
        sum += f(a + (static_cast<double>(k) + 0.5) * h);
    return sum * h;
}

double SplitMix::next01() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace psptest
