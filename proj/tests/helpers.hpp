#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "primespline/prime_table.hpp"

namespace psptest {

// Shared fixtures, built once per process.
const primespline::PrimeTable& table_10k();      // sieve(10000), 1229 primes
const primespline::PrimeTable& table_100k();     // sieve(100100), covers pi(x) to 1e5
std::shared_ptr<const primespline::PrimeTable> table_10k_ptr();
std::shared_ptr<const primespline::PrimeTable> table_10000_primes();   // sieve(104729), N = 10^4
std::shared_ptr<const primespline::PrimeTable> table_6000_primes();    // sieve(59359), N = 6000
std::shared_ptr<const primespline::PrimeTable> table_millionth();      // sieve(15485863), N = 10^6

double central_diff(const std::function<double(double)>& f, double x, double h);

// Independent quadrature oracle (adaptive Simpson, not the Gauss-Kronrod
// path used by the library).
double simpson_adaptive(const std::function<double(double)>& f, double a, double b, double tol);

// Composite midpoint rule with a fixed panel count.
double midpoint_rule(const std::function<double(double)>& f, double a, double b,
                     std::int64_t panels);

// Deterministic test-side RNG.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    double next01();
};

}  // namespace psptest
