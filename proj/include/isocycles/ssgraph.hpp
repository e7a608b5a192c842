#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "isocycles/ff.hpp"
#include "isocycles/modpoly.hpp"

namespace isocycles {

struct GraphError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t max_graph_prime = 200'000;

struct Neighbor
{
    std::size_t target;
    int multiplicity;

    bool operator==(Neighbor const &) const = default;
};

/*
 * Supersingular ell-isogeny graph over F_{p^2}. Vertices are sorted by (a, b);
 * adjacency[u] lists targets in ascending order with the multiplicity of
 * vertices[target] as a root of Phi_ell(X, vertices[u]).
 */
class IsogenyGraph
{
    PrimeField field_;
    int ell_;
    std::vector<QuadExtElement> vertices_;
    std::vector<std::vector<Neighbor>> adjacency_;

  public:
    IsogenyGraph(PrimeField const & field, int ell, std::vector<QuadExtElement> vertices,
                 std::vector<std::vector<Neighbor>> adjacency);

    PrimeField const & field() const { return field_; }
    std::uint64_t p() const { return field_.p(); }
    int ell() const { return ell_; }
    std::size_t size() const { return vertices_.size(); }
    std::vector<QuadExtElement> const & vertices() const { return vertices_; }
    std::vector<std::vector<Neighbor>> const & adjacency() const { return adjacency_; }

    // p = 1 mod 12: no extra automorphisms, adjacency is symmetric.
    bool regular() const { return p() % 12 == 1; }

    std::optional<std::size_t> index_of(QuadExtElement const & j) const;
    std::size_t require_index(QuadExtElement const & j) const;
    int multiplicity(std::size_t u, std::size_t v) const;
    int out_degree(std::size_t u) const;
    std::uint64_t total_loops() const;
    bool is_connected() const;
};

std::uint64_t vertex_count_formula(std::uint64_t p);

QuadExtElement initial_supersingular_j(PrimeField const & field);

IsogenyGraph build_graph(std::uint64_t p, ModularPolynomial const & phi);
IsogenyGraph build_graph(std::uint64_t p, int ell, std::optional<std::filesystem::path> const & modpoly_dir = {});

// Multiplicity of j as a root of Phi_ell(X, j).
int loop_count(IsogenyGraph const & graph, QuadExtElement const & j);

std::string to_dot(IsogenyGraph const & graph);
nlohmann::json to_json(IsogenyGraph const & graph);

}  // namespace isocycles
