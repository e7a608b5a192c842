#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "isocycles/ordercount.hpp"

namespace isocycles {

enum class CensusMethod { graph, orders, both };

CensusMethod parse_census_method(std::string const & name);
std::string to_string(CensusMethod method);

struct CensusRow
{
    int r;
    std::optional<mpz_class> graph_side;  // directed cycles counted on the graph
    std::optional<CountRange> order_side;
    std::vector<OrderRecord> orders;  // I_r, populated with the order side
    CycleBound bound;

    bool ambiguous() const { return order_side && !order_side->exact(); }
    bool within_bound() const;
    // Empty unless both sides were computed; an interval matches when it contains the graph count.
    std::optional<bool> match() const;
};

struct CycleCensus
{
    std::uint64_t p;
    std::int64_t ell;
    int r_max;
    CensusMethod method;
    std::vector<CensusRow> rows;

    bool ambiguous() const;
    bool passed() const;
};

CycleCensus cycle_census(std::uint64_t p, std::int64_t ell, int r_max, CensusMethod method,
                         std::optional<std::filesystem::path> const & modpoly_dir = {});

nlohmann::json to_json(CycleCensus const & census);

}  // namespace isocycles
