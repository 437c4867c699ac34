#include "primespline/prime_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace primespline {

bool is_prime_slow(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::int64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

PrimeTable PrimeTable::sieve(std::int64_t limit) {
    if (limit < 2) throw std::domain_error("sieve: limit must be >= 2");

    // Odds-only bitmap: bit k represents the odd number 2k+1.
    const std::int64_t nbits = (limit + 1) / 2;
    std::vector<std::uint64_t> composite((nbits + 63) / 64, 0);
    auto mark = [&](std::int64_t k) { composite[k >> 6] |= (1ULL << (k & 63)); };
    auto marked = [&](std::int64_t k) { return (composite[k >> 6] >> (k & 63)) & 1; };

    for (std::int64_t p = 3; p * p <= limit; p += 2) {
        if (marked(p / 2)) continue;
        for (std::int64_t q = p * p; q <= limit; q += 2 * p) mark(q / 2);
    }

    std::vector<std::int64_t> primes;
    primes.reserve(limit > 30 ? static_cast<std::size_t>(1.2 * limit / std::log(double(limit))) : 16);
    primes.push_back(2);
    for (std::int64_t k = 1; k < nbits; ++k) {
        if (!marked(k)) primes.push_back(2 * k + 1);
    }
    if (primes.back() > limit) primes.pop_back();  // nbits rounds up for even limits
    return PrimeTable(std::move(primes), limit);
}

PrimeTable PrimeTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load: cannot open '" + path + "'");

    std::vector<std::int64_t> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::int64_t v;
        while (ls >> v) values.push_back(v);
        if (!ls.eof()) {
            std::string tok;
            ls.clear();
            ls >> tok;
            throw std::runtime_error("load: non-integer token '" + tok + "'");
        }
    }
    if (values.empty()) throw std::runtime_error("load: no primes in '" + path + "'");
    if (values.front() != 2)
        throw std::runtime_error("load: sequence must start at 2, got " + std::to_string(values.front()));

    for (std::size_t k = 0; k < values.size(); ++k) {
        const std::int64_t v = values[k];
        if (!is_prime_slow(v))
            throw std::runtime_error("load: " + std::to_string(v) + " is composite");
        if (k > 0) {
            if (v <= values[k - 1])
                throw std::runtime_error("load: sequence not increasing at " + std::to_string(v));
            for (std::int64_t q = values[k - 1] + 1; q < v; ++q) {
                if (is_prime_slow(q))
                    throw std::runtime_error("load: prime " + std::to_string(q) + " missing");
            }
        }
    }
    const std::int64_t limit = values.back();
    return PrimeTable(std::move(values), limit);
}

std::int64_t PrimeTable::prime(std::int64_t i) const {
    if (i < 1 || i > size())
        throw std::out_of_range("prime: index " + std::to_string(i) + " outside [1," +
                                std::to_string(size()) + "]");
    return primes_[static_cast<std::size_t>(i - 1)];
}

std::int64_t PrimeTable::count_upto(double x) const {
    if (!(x <= static_cast<double>(limit_)))
        throw std::domain_error("count_upto: x beyond table limit");
    if (x < 2.0) return 0;
    auto it = std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::int64_t>(std::floor(x)));
    return static_cast<std::int64_t>(it - primes_.begin());
}

std::int64_t PrimeTable::index_of(double x) const {
    if (x < 2.0 || x != std::floor(x)) return 0;
    const auto v = static_cast<std::int64_t>(x);
    auto it = std::lower_bound(primes_.begin(), primes_.end(), v);
    if (it != primes_.end() && *it == v) return static_cast<std::int64_t>(it - primes_.begin()) + 1;
    return 0;
}

}  // namespace primespline
