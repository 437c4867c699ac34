#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace primespline {

/// Immutable, 1-based table of consecutive primes starting at p(1) = 2.
/// Construction is single-threaded; once built the table is read-only and
/// safe for unlimited concurrent use.
class PrimeTable {
public:
    /// Eratosthenes bit sieve over the odd integers; keeps every prime <= limit.
    /// Throws std::domain_error for limit < 2.
    static PrimeTable sieve(std::int64_t limit);

    /// Reads whitespace-separated decimal primes from a text file.
    /// Lines starting with '#' are comments.  The sequence must be the
    /// complete run of primes 2, 3, 5, ... up to its last entry; every entry
    /// is re-checked by trial division and gaps are scanned for skipped
    /// primes.  Throws std::runtime_error naming the offending value.
    static PrimeTable load(const std::string& path);

    /// p(i), 1-based.  Throws std::out_of_range for i outside [1, size()].
    std::int64_t prime(std::int64_t i) const;

    /// Exact pi(x) = #{p <= x}.  Throws std::domain_error when x > limit().
    std::int64_t count_upto(double x) const;

    /// Largest index i such that prime(i) exists.
    std::int64_t size() const { return static_cast<std::int64_t>(primes_.size()); }

    /// Largest integer known to be fully sieved / covered by the table.
    std::int64_t limit() const { return limit_; }

    /// Index of x in the table if x is exactly a prime here, else 0.
    std::int64_t index_of(double x) const;

    const std::vector<std::int64_t>& primes() const { return primes_; }

private:
    PrimeTable(std::vector<std::int64_t> primes, std::int64_t limit)
        : primes_(std::move(primes)), limit_(limit) {}

    std::vector<std::int64_t> primes_;
    std::int64_t limit_ = 0;
};

/// Deterministic trial-division primality check for 64-bit n (used by the
/// file reader and the Diophantine round-off verifier).
bool is_prime_slow(std::int64_t n);

}  // namespace primespline
