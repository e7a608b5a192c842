#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "isocycles/ssgraph.hpp"

namespace isocycles {

struct GateError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/* Undirected multigraph given by symmetric adjacency; loops appear once with their multiplicity. */
struct Multigraph
{
    std::vector<std::vector<Neighbor>> adjacency;

    std::size_t size() const { return adjacency.size(); }
    std::uint64_t total_loops() const;

    static Multigraph from(IsogenyGraph const & graph);
    static Multigraph cycle(std::size_t n);
};

struct DirectedEdge
{
    std::size_t source;
    std::size_t target;
    int copy;
};

/*
 * Non-backtracking operator on directed edges. Copy k of u->v is dual to
 * copy k of v->u. Loop copies at a vertex are paired (0,1), (2,3), ...; an
 * unpaired last copy is its own dual.
 */
class NonBacktrackingOperator
{
    std::vector<DirectedEdge> edges_;
    std::vector<std::size_t> dual_;
    std::vector<std::vector<std::size_t>> successors_;

  public:
    explicit NonBacktrackingOperator(Multigraph const & graph);

    std::size_t dimension() const { return edges_.size(); }
    std::vector<DirectedEdge> const & edges() const { return edges_; }
    std::size_t dual(std::size_t e) const { return dual_[e]; }
    // Edges f with B(e, f) = 1, ascending.
    std::vector<std::size_t> const & successors(std::size_t e) const { return successors_[e]; }
    bool entry(std::size_t e, std::size_t f) const;
};

// Requires p = 1 mod 12.
NonBacktrackingOperator build_nb_operator(IsogenyGraph const & graph);
NonBacktrackingOperator build_nb_operator(Multigraph const & graph);

struct CycleCountTable
{
    int r_max = 0;
    std::vector<mpz_class> traces;                     // traces[r - 1] = trace(B^r)
    std::vector<mpz_class> directed;                   // directed[r - 3] = c_r, r >= 3
    std::optional<std::vector<mpz_class>> undirected;  // undirected[r - 3]

    mpz_class trace(int r) const { return traces.at(r - 1); }
    mpz_class directed_count(int r) const { return directed.at(r - 3); }
};

std::vector<mpz_class> closed_nbw_counts(NonBacktrackingOperator const & op, int r_max);
// c_r = (1/r) sum_{d | r} mu(r/d) t_d for 3 <= r <= r_max.
std::vector<mpz_class> directed_cycle_counts(std::vector<mpz_class> const & traces, int r_max);
// Exact halving; refused when the graph has loops.
std::vector<mpz_class> undirected_cycle_counts(std::vector<mpz_class> const & directed, std::uint64_t total_loops);
std::vector<mpz_class> undirected_cycle_counts(std::vector<mpz_class> const & directed, IsogenyGraph const & graph);

CycleCountTable cycle_count_table(IsogenyGraph const & graph, int r_max);

mpz_class barbell_upper_bound(std::uint64_t vertices, int ell, std::uint64_t total_loops, int r);
mpz_class barbell_upper_bound(IsogenyGraph const & graph, int r);

struct RandomWalkDistance
{
    double deviation;   // max_j |Pr_t(j) - 1/#G|
    double bound;       // (1/#S) (2 sqrt(ell) / (ell + 1))^t
    bool all_reached;   // every vertex has positive probability
};

RandomWalkDistance rw_distribution_distance(IsogenyGraph const & graph, std::vector<std::size_t> const & S, int t);

// Least integer t with t > (log #G - log #S) / log((ell + 1) / (2 sqrt(ell))).
int covering_walk_length(std::size_t vertices, std::size_t subset_size, int ell);

struct SpectralReport
{
    double lambda1;
    double lambda2;  // estimate of max |lambda_i| over the complement of the constants
    double ramanujan_bound;
    bool ramanujan;
    int iterations;
};

SpectralReport spectral_check(IsogenyGraph const & graph);

nlohmann::json to_json(IsogenyGraph const & graph, CycleCountTable const & table);

}  // namespace isocycles
