#include "isocycles/ssgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "isocycles/hilbert.hpp"
#include "isocycles/quadform.hpp"

namespace isocycles {

IsogenyGraph::IsogenyGraph(PrimeField const & field, int ell, std::vector<QuadExtElement> vertices,
                           std::vector<std::vector<Neighbor>> adjacency)
    : field_(field), ell_(ell), vertices_(std::move(vertices)), adjacency_(std::move(adjacency))
{
    if (adjacency_.size() != vertices_.size())
        throw GraphError("adjacency size does not match vertex count");
}

std::optional<std::size_t> IsogenyGraph::index_of(QuadExtElement const & j) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), j);
    if (it == vertices_.end() || !(*it == j))
        return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t IsogenyGraph::require_index(QuadExtElement const & j) const
{
    auto idx = index_of(j);
    if (!idx)
        throw GraphError("j = " + j.to_string() + " is not a vertex of the graph");
    return *idx;
}

int IsogenyGraph::multiplicity(std::size_t u, std::size_t v) const
{
    for (auto const & nb : adjacency_.at(u))
        if (nb.target == v)
            return nb.multiplicity;
    return 0;
}

int IsogenyGraph::out_degree(std::size_t u) const
{
    int d = 0;
    for (auto const & nb : adjacency_.at(u))
        d += nb.multiplicity;
    return d;
}

std::uint64_t IsogenyGraph::total_loops() const
{
    std::uint64_t total = 0;
    for (std::size_t u = 0; u < size(); ++u)
        total += static_cast<std::uint64_t>(multiplicity(u, u));
    return total;
}

bool IsogenyGraph::is_connected() const
{
    if (vertices_.empty())
        return true;
    std::vector<char> seen(size(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (auto const & nb : adjacency_[u]) {
            if (!seen[nb.target]) {
                seen[nb.target] = 1;
                ++reached;
                queue.push_back(nb.target);
            }
        }
    }
    return reached == size();
}

std::uint64_t vertex_count_formula(std::uint64_t p)
{
    if (p < 5)
        throw std::invalid_argument("vertex_count_formula: p must be at least 5");
    static constexpr std::uint64_t extra[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
    return p / 12 + extra[p % 12];
}

QuadExtElement initial_supersingular_j(PrimeField const & field)
{
    std::uint64_t p = field.p();
    if (p % 4 == 3)
        return QuadExtElement::from_int(field, 1728);
    if (p % 3 == 2)
        return QuadExtElement(field, 0);
    for (std::int64_t q = 3; q <= 1000; q += 4) {
        if (!is_prime(static_cast<std::uint64_t>(q)) || kronecker_symbol(-q, static_cast<std::int64_t>(p)) != -1)
            continue;
        auto roots = poly_roots(hilbert_mod_p(Discriminant(-q), field));
        if (roots.empty())
            throw GraphError("H_{-" + std::to_string(q) + "} has no root in F_{p^2}");
        return roots.front().value;
    }
    throw GraphError("no CM seed discriminant -q with q <= 1000 for p = " + std::to_string(p));
}

IsogenyGraph build_graph(std::uint64_t p, ModularPolynomial const & phi)
{
    if (p > max_graph_prime)
        throw GraphError("p = " + std::to_string(p) + " exceeds the graph cap 2e5");
    PrimeField field(p);
    int ell = phi.level();
    ReducedModularPolynomial reduced(phi, field);

    std::vector<QuadExtElement> found{initial_supersingular_j(field)};
    std::map<QuadExtElement, std::size_t> index{{found.front(), 0}};
    std::vector<std::vector<std::pair<std::size_t, int>>> raw;
    std::uint64_t expected = vertex_count_formula(p);

    for (std::size_t head = 0; head < found.size(); ++head) {
        QuadExtElement j = found[head];
        auto roots = poly_roots(reduced.instantiate(j));
        int total = 0;
        std::vector<std::pair<std::size_t, int>> out;
        for (auto const & r : roots) {
            total += r.multiplicity;
            auto [it, inserted] = index.emplace(r.value, found.size());
            if (inserted)
                found.push_back(r.value);
            out.emplace_back(it->second, r.multiplicity);
        }
        if (total != ell + 1)
            throw GraphError("Phi_" + std::to_string(ell) + "(X, " + j.to_string() +
                             ") does not split over F_{p^2}; seed is not supersingular");
        raw.push_back(std::move(out));
        if (found.size() > expected)
            throw GraphError("vertex count exceeds " + std::to_string(expected) + " for p = " + std::to_string(p));
    }
    if (found.size() != expected)
        throw GraphError("vertex count " + std::to_string(found.size()) + " differs from the expected " +
                         std::to_string(expected) + " for p = " + std::to_string(p));

    // Canonical order: index map iterates in (a, b) order.
    std::vector<std::size_t> rank(found.size());
    std::vector<QuadExtElement> vertices;
    vertices.reserve(found.size());
    for (auto const & [j, old] : index) {
        rank[old] = vertices.size();
        vertices.push_back(j);
    }
    std::vector<std::vector<Neighbor>> adjacency(found.size());
    for (std::size_t old = 0; old < found.size(); ++old) {
        auto & row = adjacency[rank[old]];
        for (auto [t, m] : raw[old])
            row.push_back({rank[t], m});
        std::sort(row.begin(), row.end(), [](Neighbor const & x, Neighbor const & y) { return x.target < y.target; });
    }
    IsogenyGraph graph(field, ell, std::move(vertices), std::move(adjacency));
    if (!graph.is_connected())
        throw GraphError("graph is not connected");
    return graph;
}

IsogenyGraph build_graph(std::uint64_t p, int ell, std::optional<std::filesystem::path> const & modpoly_dir)
{
    return build_graph(p, find_modular_polynomial(ell, modpoly_dir));
}

int loop_count(IsogenyGraph const & graph, QuadExtElement const & j)
{
    std::size_t u = graph.require_index(j);
    return graph.multiplicity(u, u);
}

std::string to_dot(IsogenyGraph const & graph)
{
    std::ostringstream os;
    os << "graph G_" << graph.ell() << "_p" << graph.p() << " {\n";
    for (std::size_t u = 0; u < graph.size(); ++u)
        os << "  v" << u << " [label=\"" << graph.vertices()[u].to_string() << "\"];\n";
    for (std::size_t u = 0; u < graph.size(); ++u) {
        for (auto const & nb : graph.adjacency()[u]) {
            if (nb.target < u)
                continue;
            int back = graph.multiplicity(nb.target, u);
            os << "  v" << u << " -- v" << nb.target << " [label=";
            if (nb.target == u || back == nb.multiplicity)
                os << nb.multiplicity;
            else
                os << '"' << nb.multiplicity << '/' << back << '"';
            os << "];\n";
        }
    }
    // Edges present only in the reverse direction.
    for (std::size_t u = 0; u < graph.size(); ++u)
        for (auto const & nb : graph.adjacency()[u])
            if (nb.target < u && graph.multiplicity(nb.target, u) == 0)
                os << "  v" << nb.target << " -- v" << u << " [label=\"0/" << nb.multiplicity << "\"];\n";
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(IsogenyGraph const & graph)
{
    nlohmann::json vertices = nlohmann::json::array();
    for (auto const & j : graph.vertices())
        vertices.push_back(j.to_string());
    nlohmann::json adjacency = nlohmann::json::array();
    for (auto const & row : graph.adjacency()) {
        nlohmann::json r = nlohmann::json::array();
        for (auto const & nb : row)
            r.push_back({nb.target, nb.multiplicity});
        adjacency.push_back(std::move(r));
    }
    return {{"p", graph.p()},
            {"ell", graph.ell()},
            {"nonresidue", graph.field().nonresidue()},
            {"vertices", std::move(vertices)},
            {"adjacency", std::move(adjacency)}};
}

}  // namespace isocycles
