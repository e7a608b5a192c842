#include "isocycles/arith.hpp"

#include <cstdlib>
#include <stdexcept>

namespace isocycles {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic below 3.3 * 10^24.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

int kronecker_symbol(std::int64_t a, std::int64_t n)
{
    if (n <= 0)
        throw std::invalid_argument("kronecker_symbol: modulus must be positive");
    int result = 1;
    // Strip factors of 2 from n using (a/2).
    while ((n & 1) == 0) {
        n >>= 1;
        if ((a & 1) == 0)
            return 0;
        std::int64_t r8 = floor_mod(a, 8);
        if (r8 == 3 || r8 == 5)
            result = -result;
    }
    // Jacobi symbol for odd n.
    a = floor_mod(a, n);
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::int64_t r8 = n % 8;
            if (r8 == 3 || r8 == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n)
{
    std::vector<std::pair<std::int64_t, int>> out;
    n = std::llabs(n);
    for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d)
            continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

int mobius(std::int64_t n)
{
    if (n <= 0)
        throw std::invalid_argument("mobius: argument must be positive");
    int sign = 1;
    for (auto [q, e] : factor(n)) {
        if (e > 1)
            return 0;
        sign = -sign;
    }
    return sign;
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    if (n <= 0)
        throw std::invalid_argument("divisors: argument must be positive");
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d)
            continue;
        small.push_back(d);
        if (d != n / d)
            large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::int64_t square_part_root(std::int64_t n)
{
    std::int64_t f = 1;
    for (auto [q, e] : factor(n)) {
        for (int i = 0; i < e / 2; ++i)
            f *= q;
    }
    return f;
}

std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::int64_t ipow(std::int64_t base, int exp)
{
    std::int64_t result = 1;
    for (int i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(result, base, &result))
            throw std::overflow_error("ipow: result exceeds 64 bits");
    }
    return result;
}

}  // namespace isocycles
