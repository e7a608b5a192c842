#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "isocycles/quadform.hpp"

namespace isocycles {

constexpr int max_order_length = 40;

/* Exact value, or the interval [1, upper] when the genus of the stabilizer cannot be decided. */
struct EpsilonValue
{
    bool ambiguous = false;
    mpq_class value = 2;  // exact value, or the upper endpoint when ambiguous

    mpq_class low() const { return ambiguous ? mpq_class(1) : value; }
    mpq_class high() const { return value; }
};

EpsilonValue epsilon(Discriminant const & D, std::int64_t ell, std::int64_t r, std::uint64_t p);

struct OrderRecord
{
    int N;
    std::int64_t x;
    std::int64_t f;
    std::int64_t discriminant;
    std::int64_t h;
    std::int64_t g;
    EpsilonValue eps;
    std::int64_t l_order;  // order of the class above ell
};

/* A rational count, or an interval when ambiguous epsilon factors enter. */
struct CountRange
{
    mpq_class low = 0, high = 0;

    bool exact() const { return low == high; }
};

// 0 < x < 2 ell^{N/2}, ell does not divide x, (x^2 - 4 ell^N / p) != 1, v_p(x^2 - 4 ell^N) <= 1.
std::vector<std::int64_t> q_set(int N, std::uint64_t p, std::int64_t ell);

// Every (x, f) term of the Q_N sum.
std::vector<OrderRecord> q_n_terms(int N, std::uint64_t p, std::int64_t ell);
CountRange q_n(int N, std::uint64_t p, std::int64_t ell);

// c_N = (1/N) sum_{r | N} mu(r) Q_{N/r}.
CountRange order_side_cycle_count(int N, std::uint64_t p, std::int64_t ell);

// Orders whose class above ell has order exactly r, one record per discriminant.
std::vector<OrderRecord> enumerate_orders(int r, std::uint64_t p, std::int64_t ell);

struct CycleBound
{
    double B_N;
    double c_N;
};

double bound_B(double N, std::int64_t ell);
CycleBound bound_b(int N, std::int64_t ell);

std::string orders_csv(std::vector<OrderRecord> const & records);
nlohmann::json to_json(OrderRecord const & record);
nlohmann::json to_json(CountRange const & range);
nlohmann::json rational_json(mpq_class const & q);

}  // namespace isocycles
