#include "isocycles/census.hpp"

#include <stdexcept>

#include "isocycles/json_util.hpp"
#include "isocycles/nbwalk.hpp"
#include "isocycles/ssgraph.hpp"

namespace isocycles {

CensusMethod parse_census_method(std::string const & name)
{
    if (name == "graph")
        return CensusMethod::graph;
    if (name == "orders")
        return CensusMethod::orders;
    if (name == "both")
        return CensusMethod::both;
    throw std::invalid_argument("unknown method '" + name + "' (expected graph, orders or both)");
}

std::string to_string(CensusMethod method)
{
    switch (method) {
    case CensusMethod::graph:
        return "graph";
    case CensusMethod::orders:
        return "orders";
    case CensusMethod::both:
        return "both";
    }
    return "";
}

bool CensusRow::within_bound() const
{
    if (order_side && order_side->high > bound.c_N)
        return false;
    if (graph_side && graph_side->get_d() > bound.c_N)
        return false;
    return true;
}

std::optional<bool> CensusRow::match() const
{
    if (!graph_side || !order_side)
        return std::nullopt;
    return order_side->low <= *graph_side && *graph_side <= order_side->high;
}

bool CycleCensus::ambiguous() const
{
    for (auto const & row : rows)
        if (row.ambiguous())
            return true;
    return false;
}

bool CycleCensus::passed() const
{
    for (auto const & row : rows)
        if (!row.within_bound() || row.match() == false)
            return false;
    return true;
}

CycleCensus cycle_census(std::uint64_t p, std::int64_t ell, int r_max, CensusMethod method,
                         std::optional<std::filesystem::path> const & modpoly_dir)
{
    if (r_max < 3 || r_max > max_order_length)
        throw std::invalid_argument("r_max must lie in [3, 40]");
    bool with_graph = method != CensusMethod::orders;
    bool with_orders = method != CensusMethod::graph;
    if (with_graph && p % 12 != 1)
        throw GateError("graph-side counting requires p = 1 (mod 12), so that j = 0 and j = 1728 (curves with extra "
                        "automorphisms) are not supersingular; p = " +
                        std::to_string(p));

    CycleCensus census{p, ell, r_max, method, {}};
    std::vector<mpz_class> directed;
    if (with_graph) {
        auto graph = build_graph(p, static_cast<int>(ell), modpoly_dir);
        directed = directed_cycle_counts(closed_nbw_counts(build_nb_operator(graph), r_max), r_max);
    }
    for (int r = 3; r <= r_max; ++r) {
        CensusRow row{r, {}, {}, {}, bound_b(r, ell)};
        if (with_graph)
            row.graph_side = directed[r - 3];
        if (with_orders) {
            row.order_side = order_side_cycle_count(r, p, ell);
            row.orders = enumerate_orders(r, p, ell);
        }
        census.rows.push_back(std::move(row));
    }
    return census;
}

nlohmann::json to_json(CycleCensus const & census)
{
    nlohmann::json rows = nlohmann::json::array();
    for (auto const & row : census.rows) {
        nlohmann::json j = {{"r", row.r}, {"bound", {{"B_N", row.bound.B_N}, {"c_N", row.bound.c_N}}}};
        j["graph_side"] = row.graph_side ? integer_json(*row.graph_side) : nlohmann::json(nullptr);
        if (row.order_side) {
            j["order_side"] = to_json(*row.order_side);
            j["ambiguous"] = row.ambiguous();
            nlohmann::json orders = nlohmann::json::array();
            for (auto const & rec : row.orders)
                orders.push_back(to_json(rec));
            j["orders"] = orders;
        }
        else {
            j["order_side"] = nullptr;
        }
        auto m = row.match();
        j["match"] = m ? nlohmann::json(*m) : nlohmann::json(nullptr);
        j["within_bound"] = row.within_bound();
        rows.push_back(j);
    }
    return {{"schema", 1},
            {"command", "count"},
            {"p", census.p},
            {"ell", census.ell},
            {"r_max", census.r_max},
            {"method", to_string(census.method)},
            {"rows", rows},
            {"ambiguous", census.ambiguous()},
            {"passed", census.passed()}};
}

}  // namespace isocycles
