#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace isocycles {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Kronecker symbol (a/n) for n >= 1; Legendre symbol when n is an odd prime.
// Throws std::invalid_argument for n <= 0.
int kronecker_symbol(std::int64_t a, std::int64_t n);

int mobius(std::int64_t n);

// Ascending list of positive divisors.
std::vector<std::int64_t> divisors(std::int64_t n);

// Prime factorization by trial division, as (prime, exponent) pairs.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);

// Largest f with f^2 | n (n != 0).
std::int64_t square_part_root(std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

// Exact integer power; throws std::overflow_error past int64.
std::int64_t ipow(std::int64_t base, int exp);

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace isocycles
