#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "primespline/prime_table.hpp"

using primespline::PrimeTable;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "psp_" + name + ".txt";
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_SUITE("prime_table") {

TEST_CASE("sieve small cases") {
    auto t = PrimeTable::sieve(10);
    REQUIRE(t.size() == 4);
    CHECK(t.prime(1) == 2);
    CHECK(t.prime(2) == 3);
    CHECK(t.prime(3) == 5);
    CHECK(t.prime(4) == 7);

    auto t2 = PrimeTable::sieve(2);
    REQUIRE(t2.size() == 1);
    CHECK(t2.prime(1) == 2);

    auto t100 = PrimeTable::sieve(100);
    CHECK(t100.size() == 25);
    CHECK(t100.prime(25) == 97);

    CHECK_THROWS_AS(PrimeTable::sieve(1), std::domain_error);
}

TEST_CASE("prime lookup and counting") {
    const auto& t = psptest::table_10k();
    CHECK(t.prime(1) == 2);
    CHECK(t.prime(5) == 11);
    CHECK(t.prime(25) == 97);
    CHECK(t.prime(1000) == 7919);
    CHECK_THROWS_AS(t.prime(0), std::out_of_range);
    CHECK_THROWS_AS(t.prime(t.size() + 1), std::out_of_range);

    CHECK(t.count_upto(10) == 4);
    CHECK(t.count_upto(2) == 1);
    CHECK(t.count_upto(96.9) == 24);
    CHECK(t.count_upto(97.0) == 25);
    CHECK_THROWS_AS(t.count_upto(1e9), std::domain_error);
}

TEST_CASE("index/count roundtrip for every table entry") {
    const auto& t = psptest::table_10k();
    for (std::int64_t i = 1; i <= t.size(); ++i) {
        const auto p = t.prime(i);
        CHECK(t.count_upto(static_cast<double>(p)) == i);
        CHECK(t.prime(t.count_upto(static_cast<double>(p))) == p);
    }
}

TEST_CASE("gap property") {
    const auto& t = psptest::table_10k();
    for (std::int64_t i = 1; i < t.size(); ++i) {
        const auto gap = t.prime(i + 1) - t.prime(i);
        CHECK(gap >= 1);
        if (i > 1) CHECK(gap >= 2);
    }
    CHECK(t.prime(2) - t.prime(1) == 1);
}

TEST_CASE("load equals sieve on a trusted list") {
    auto t = PrimeTable::sieve(1000);
    std::string content;
    for (std::int64_t i = 1; i <= t.size(); ++i) {
        content += std::to_string(t.prime(i));
        content += (i % 6 == 0) ? '\n' : ' ';   // six-column layout
    }
    content = "# primes up to 1000\n" + content + "\n";
    const auto path = write_temp("trusted", content);
    auto loaded = PrimeTable::load(path);
    REQUIRE(loaded.size() == t.size());
    for (std::int64_t i = 1; i <= t.size(); ++i) CHECK(loaded.prime(i) == t.prime(i));
    std::remove(path.c_str());
}

TEST_CASE("load rejects bad files") {
    SUBCASE("composite entry") {
        const auto path = write_temp("composite", "2 3 4\n");
        CHECK_THROWS_WITH_AS(PrimeTable::load(path), doctest::Contains("4"),
                             std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("missing prime") {
        const auto path = write_temp("missing", "2 5\n");
        CHECK_THROWS_WITH_AS(PrimeTable::load(path), doctest::Contains("3"),
                             std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("not starting at 2") {
        const auto path = write_temp("start", "3 5 7\n");
        CHECK_THROWS_AS(PrimeTable::load(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("non-monotone") {
        const auto path = write_temp("order", "2 3 5 5\n");
        CHECK_THROWS_AS(PrimeTable::load(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("garbage token") {
        const auto path = write_temp("token", "2 3 five\n");
        CHECK_THROWS_AS(PrimeTable::load(path), std::runtime_error);
        std::remove(path.c_str());
    }
}

TEST_CASE("index_of finds exact primes only") {
    const auto& t = psptest::table_10k();
    CHECK(t.index_of(7919.0) == 1000);
    CHECK(t.index_of(7919.5) == 0);
    CHECK(t.index_of(9.0) == 0);
}

}  // TEST_SUITE
