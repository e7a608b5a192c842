#include "isocycles/nbwalk.hpp"

#include <cmath>
#include <map>

#include "isocycles/arith.hpp"
#include "isocycles/json_util.hpp"

namespace isocycles {

namespace {

using u128 = unsigned __int128;

mpz_class to_mpz(u128 v)
{
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return (hi << 64) + lo;
}

void require_regular(IsogenyGraph const & graph, char const * what)
{
    if (!graph.regular())
        throw GateError(std::string(what) + " requires p = 1 (mod 12); p = " + std::to_string(graph.p()) +
                        " has vertices with extra automorphisms");
}

}  // namespace

std::uint64_t Multigraph::total_loops() const
{
    std::uint64_t total = 0;
    for (std::size_t u = 0; u < size(); ++u)
        for (auto const & nb : adjacency[u])
            if (nb.target == u)
                total += static_cast<std::uint64_t>(nb.multiplicity);
    return total;
}

Multigraph Multigraph::from(IsogenyGraph const & graph)
{
    return {graph.adjacency()};
}

Multigraph Multigraph::cycle(std::size_t n)
{
    Multigraph g;
    g.adjacency.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        std::size_t a = (u + n - 1) % n, b = (u + 1) % n;
        if (a == b)
            g.adjacency[u] = {{a, 2}};
        else
            g.adjacency[u] = {{std::min(a, b), 1}, {std::max(a, b), 1}};
    }
    return g;
}

NonBacktrackingOperator::NonBacktrackingOperator(Multigraph const & graph)
{
    std::size_t n = graph.size();
    std::vector<std::map<std::size_t, int>> mult(n);
    std::optional<int> degree;
    for (std::size_t u = 0; u < n; ++u) {
        int d = 0;
        for (auto const & nb : graph.adjacency[u]) {
            if (nb.target >= n || nb.multiplicity <= 0)
                throw std::invalid_argument("non-backtracking operator: malformed adjacency");
            mult[u][nb.target] += nb.multiplicity;
            d += nb.multiplicity;
        }
        if (degree && *degree != d)
            throw std::invalid_argument("non-backtracking operator: graph is not regular");
        degree = d;
    }
    for (std::size_t u = 0; u < n; ++u)
        for (auto const & [v, m] : mult[u]) {
            auto it = mult[v].find(u);
            if (it == mult[v].end() || it->second != m)
                throw std::invalid_argument("non-backtracking operator: directed imbalance between vertices " +
                                            std::to_string(u) + " and " + std::to_string(v));
        }

    std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> index;
    std::vector<std::vector<std::size_t>> outgoing(n);
    for (std::size_t u = 0; u < n; ++u)
        for (auto const & [v, m] : mult[u])
            for (int k = 0; k < m; ++k) {
                index[{u, v, k}] = edges_.size();
                outgoing[u].push_back(edges_.size());
                edges_.push_back({u, v, k});
            }

    dual_.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [u, v, k] = edges_[e];
        if (u != v) {
            dual_[e] = index.at({v, u, k});
            continue;
        }
        int m = mult[u][u];
        int partner = (k % 2 == 0) ? k + 1 : k - 1;
        dual_[e] = partner < m ? index.at({u, u, partner}) : e;
    }

    successors_.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e)
        for (std::size_t f : outgoing[edges_[e].target])
            if (f != dual_[e])
                successors_[e].push_back(f);
}

bool NonBacktrackingOperator::entry(std::size_t e, std::size_t f) const
{
    return edges_.at(e).target == edges_.at(f).source && f != dual_[e];
}

NonBacktrackingOperator build_nb_operator(IsogenyGraph const & graph)
{
    require_regular(graph, "non-backtracking operator");
    return NonBacktrackingOperator(Multigraph::from(graph));
}

NonBacktrackingOperator build_nb_operator(Multigraph const & graph)
{
    return NonBacktrackingOperator(graph);
}

std::vector<mpz_class> closed_nbw_counts(NonBacktrackingOperator const & op, int r_max)
{
    if (r_max < 1)
        throw std::invalid_argument("closed_nbw_counts: r_max must be at least 1");
    std::size_t dim = op.dimension();
    std::size_t max_out = 0;
    for (std::size_t e = 0; e < dim; ++e)
        max_out = std::max(max_out, op.successors(e).size());
    // Entries of B^r are at most max_out^r; traces at most dim times that.
    long double log2_budget = std::log2((long double)std::max<std::size_t>(dim, 1)) +
                              r_max * std::log2((long double)std::max<std::size_t>(max_out, 1));
    if (log2_budget >= 126)
        throw std::overflow_error("closed_nbw_counts: walk counts exceed the 128-bit budget");

    std::vector<u128> totals(r_max, 0);
    std::vector<u128> cur(dim), next(dim);
    std::vector<std::size_t> support, next_support;
    std::vector<char> marked(dim, 0);
    for (std::size_t start = 0; start < dim; ++start) {
        std::fill(cur.begin(), cur.end(), 0);
        cur[start] = 1;
        support.assign(1, start);
        for (int r = 1; r <= r_max; ++r) {
            next_support.clear();
            for (std::size_t e : support) {
                u128 w = cur[e];
                for (std::size_t f : op.successors(e)) {
                    if (!marked[f]) {
                        marked[f] = 1;
                        next[f] = 0;
                        next_support.push_back(f);
                    }
                    next[f] += w;
                }
                cur[e] = 0;
            }
            for (std::size_t f : next_support) {
                marked[f] = 0;
                cur[f] = next[f];
            }
            support.swap(next_support);
            totals[r - 1] += cur[start];
        }
    }
    std::vector<mpz_class> out;
    out.reserve(r_max);
    for (u128 t : totals)
        out.push_back(to_mpz(t));
    return out;
}

std::vector<mpz_class> directed_cycle_counts(std::vector<mpz_class> const & traces, int r_max)
{
    if (r_max > static_cast<int>(traces.size()))
        throw std::invalid_argument("directed_cycle_counts: not enough traces");
    std::vector<mpz_class> out;
    for (int r = 3; r <= r_max; ++r) {
        mpz_class sum = 0;
        for (std::int64_t d : divisors(r))
            sum += mobius(r / d) * traces[d - 1];
        if (sum % r != 0)
            throw std::logic_error("directed_cycle_counts: Moebius sum at r = " + std::to_string(r) +
                                   " is not divisible by r");
        out.push_back(sum / r);
    }
    return out;
}

std::vector<mpz_class> undirected_cycle_counts(std::vector<mpz_class> const & directed, std::uint64_t total_loops)
{
    if (total_loops != 0)
        throw GateError("undirected counts refused: the graph has " + std::to_string(total_loops) +
                        " loop(s), so barbells (self-reverse cycles) may exist and halving is not exact");
    std::vector<mpz_class> out;
    for (auto const & c : directed) {
        if (c % 2 != 0)
            throw std::logic_error("undirected_cycle_counts: odd directed count in a loop-free graph");
        out.push_back(c / 2);
    }
    return out;
}

std::vector<mpz_class> undirected_cycle_counts(std::vector<mpz_class> const & directed, IsogenyGraph const & graph)
{
    return undirected_cycle_counts(directed, graph.total_loops());
}

CycleCountTable cycle_count_table(IsogenyGraph const & graph, int r_max)
{
    CycleCountTable table;
    table.r_max = r_max;
    table.traces = closed_nbw_counts(build_nb_operator(graph), r_max);
    table.directed = directed_cycle_counts(table.traces, r_max);
    if (graph.total_loops() == 0)
        table.undirected = undirected_cycle_counts(table.directed, 0);
    return table;
}

mpz_class barbell_upper_bound(std::uint64_t vertices, int ell, std::uint64_t total_loops, int r)
{
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("barbell_upper_bound: r must be even and at least 2");
    if (total_loops < 2)
        return 0;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>((r - 2) / 2));
    return mpz_class(static_cast<unsigned long>(vertices)) * (ell + 1) * power;
}

mpz_class barbell_upper_bound(IsogenyGraph const & graph, int r)
{
    return barbell_upper_bound(graph.size(), graph.ell(), graph.total_loops(), r);
}

RandomWalkDistance rw_distribution_distance(IsogenyGraph const & graph, std::vector<std::size_t> const & S, int t)
{
    require_regular(graph, "random walk distance");
    if (S.empty())
        throw std::invalid_argument("random walk distance: S must be nonempty");
    if (t < 0)
        throw std::invalid_argument("random walk distance: t must be nonnegative");
    std::size_t n = graph.size();
    std::vector<mpz_class> counts(n, 0);
    for (std::size_t v : S) {
        if (v >= n)
            throw std::invalid_argument("random walk distance: vertex index out of range");
        counts[v] = 1;
    }
    std::size_t s = 0;
    for (auto const & c : counts)
        s += (c != 0);
    for (int step = 0; step < t; ++step) {
        std::vector<mpz_class> next(n, 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (counts[u] == 0)
                continue;
            for (auto const & nb : graph.adjacency()[u])
                next[nb.target] += counts[u] * nb.multiplicity;
        }
        counts.swap(next);
    }
    // Pr_t(v) = counts[v] / (s (ell+1)^t)
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(graph.ell() + 1), static_cast<unsigned long>(t));
    total *= static_cast<unsigned long>(s);
    mpz_class worst = 0;
    bool all = true;
    for (auto const & c : counts) {
        mpz_class diff = c * static_cast<unsigned long>(n) - total;
        if (abs(diff) > worst)
            worst = abs(diff);
        all = all && c > 0;
    }
    mpq_class deviation(worst, total * static_cast<unsigned long>(n));
    deviation.canonicalize();
    double ell = graph.ell();
    double bound = std::pow(2.0 * std::sqrt(ell) / (ell + 1.0), t) / static_cast<double>(s);
    return {deviation.get_d(), bound, all};
}

int covering_walk_length(std::size_t vertices, std::size_t subset_size, int ell)
{
    if (subset_size == 0 || subset_size > vertices)
        throw std::invalid_argument("covering_walk_length: invalid subset size");
    double rate = std::log((ell + 1.0) / (2.0 * std::sqrt(double(ell))));
    double x = (std::log(double(vertices)) - std::log(double(subset_size))) / rate;
    return static_cast<int>(std::floor(x)) + 1;
}

SpectralReport spectral_check(IsogenyGraph const & graph)
{
    require_regular(graph, "spectral check");
    std::size_t n = graph.size();
    double ell = graph.ell();
    SpectralReport rep{};
    rep.ramanujan_bound = 2.0 * std::sqrt(ell);

    auto apply = [&](std::vector<double> const & x) {
        std::vector<double> y(n, 0.0);
        for (std::size_t u = 0; u < n; ++u)
            for (auto const & nb : graph.adjacency()[u])
                y[u] += nb.multiplicity * x[nb.target];
        return y;
    };

    // A 1 = (ell+1) 1, checked exactly on integer row sums.
    for (std::size_t u = 0; u < n; ++u)
        if (graph.out_degree(u) != graph.ell() + 1)
            throw GraphError("spectral check: row sum differs from ell + 1");
    rep.lambda1 = ell + 1;

    if (n == 1) {
        rep.lambda2 = 0;
        rep.ramanujan = true;
        return rep;
    }
    auto project = [&](std::vector<double> & x) {
        double mean = 0;
        for (double v : x)
            mean += v;
        mean /= double(n);
        double norm = 0;
        for (double & v : x) {
            v -= mean;
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (double & v : x)
            v /= norm;
    };
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::fmod(0.6180339887498949 * double(i + 1), 1.0) - 0.5;
    project(x);

    // Power iteration on A^2 handles a dominant pair +-lambda. Stops once the
    // eigen-residual |A^2 x - rho x| drops below the tolerance.
    double estimate = 0;
    constexpr double tolerance = 1e-8;
    constexpr int max_iterations = 5'000'000;
    int it = 0;
    for (; it < max_iterations; ++it) {
        std::vector<double> y = apply(apply(x));
        double rho = 0;
        for (std::size_t i = 0; i < n; ++i)
            rho += x[i] * y[i];
        double residual = 0;
        for (std::size_t i = 0; i < n; ++i)
            residual += (y[i] - rho * x[i]) * (y[i] - rho * x[i]);
        estimate = std::sqrt(std::max(rho, 0.0));
        if (std::sqrt(residual) < tolerance)
            break;
        x = std::move(y);
        project(x);
    }
    rep.lambda2 = estimate;
    rep.iterations = it + 1;
    rep.ramanujan = estimate <= rep.ramanujan_bound + 1e-6;
    return rep;
}

nlohmann::json to_json(IsogenyGraph const & graph, CycleCountTable const & table)
{
    nlohmann::json traces = nlohmann::json::array(), directed = nlohmann::json::array(),
                   barbells = nlohmann::json::array();
    for (auto const & t : table.traces)
        traces.push_back(integer_json(t));
    for (auto const & c : table.directed)
        directed.push_back(integer_json(c));
    nlohmann::json undirected = nullptr;
    if (table.undirected) {
        undirected = nlohmann::json::array();
        for (auto const & c : *table.undirected)
            undirected.push_back(integer_json(c));
    }
    for (int r = 3; r <= table.r_max; ++r)
        barbells.push_back(r % 2 == 0 ? integer_json(barbell_upper_bound(graph, r)) : nlohmann::json(nullptr));
    return {{"p", graph.p()},         {"ell", graph.ell()},           {"r_max", table.r_max},
            {"traces", traces},       {"directed", directed},         {"undirected", undirected},
            {"barbell_bounds", barbells}};
}

}  // namespace isocycles
