#include "doctest.h"

#include <stdexcept>

#include "isocycles/arith.hpp"

#include <cstdint>

using namespace isocycles;

namespace {

// Euler's criterion / brute force squares, independent of the Jacobi recursion.
int legendre_brute(std::int64_t a, std::int64_t p)
{
    std::int64_t r = floor_mod(a, p);
    if (r == 0)
        return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == r)
            return 1;
    return -1;
}

}  // namespace

TEST_CASE("kronecker symbol examples")
{
    CHECK(kronecker_symbol(4, 7) == 1);
    CHECK(kronecker_symbol(-31, 179) == -1);
    CHECK(kronecker_symbol(3, 7) == -1);
    CHECK(kronecker_symbol(-23, 179) == 1);
    CHECK_THROWS_AS(kronecker_symbol(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(kronecker_symbol(3, -5), std::invalid_argument);
}

TEST_CASE("kronecker symbol at 2")
{
    CHECK(kronecker_symbol(1, 2) == 1);
    CHECK(kronecker_symbol(-7, 2) == 1);
    CHECK(kronecker_symbol(-3, 2) == -1);
    CHECK(kronecker_symbol(5, 2) == -1);
    CHECK(kronecker_symbol(-4, 2) == 0);
    CHECK(kronecker_symbol(-15, 2) == 1);
}

TEST_CASE("Legendre symbol agrees with brute force and is multiplicative")
{
    for (std::int64_t p : {3, 5, 7, 11, 13, 179, 241}) {
        for (std::int64_t a = -60; a <= 60; ++a) {
            CHECK(kronecker_symbol(a, p) == legendre_brute(a, p));
            for (std::int64_t b = 1; b <= 12; ++b) {
                if (a % p == 0 || b % p == 0)
                    continue;
                CHECK(kronecker_symbol(a, p) * kronecker_symbol(b, p) == kronecker_symbol(a * b, p));
            }
        }
    }
}

TEST_CASE("primality and integer helpers")
{
    int count = 0;
    for (std::uint64_t n = 0; n < 5000; ++n)
        count += is_prime(n);
    CHECK(count == 669);
    CHECK(is_prime(4294967291ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7

    CHECK(mobius(1) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(30) == -1);
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
    CHECK(square_part_root(-135) == 3);
    CHECK(square_part_root(-964) == 2);
    CHECK(ipow(2, 10) == 1024);
    CHECK_THROWS_AS(ipow(10, 19), std::overflow_error);
}
