#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "isocycles/arith.hpp"
#include "isocycles/census.hpp"
#include "isocycles/hilbert.hpp"
#include "isocycles/json_util.hpp"
#include "isocycles/modpoly.hpp"
#include "isocycles/nbwalk.hpp"
#include "isocycles/ordercount.hpp"
#include "isocycles/quadform.hpp"
#include "isocycles/ssgraph.hpp"

using namespace isocycles;
using nlohmann::json;

namespace {

enum Exit { exit_pass = 0, exit_verdict = 1, exit_error = 2 };

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::uint64_t p = 0;
    std::int64_t ell = 2;
    int r_max = 10;
    int N = 0;
    int r = 0;
    std::int64_t disc = 0;
    std::string method = "orders";
    std::string format;
    std::string out;
    std::string modpoly_dir;
    bool strict = false;
    unsigned precision_bits = 0;

    std::optional<std::filesystem::path> modpoly_path() const
    {
        if (!modpoly_dir.empty())
            return std::filesystem::path(modpoly_dir);
        if (char const * env = std::getenv("ISOCYCLES_MODPOLY_DIR"); env && *env)
            return std::filesystem::path(env);
        return std::nullopt;
    }
};

void require_prime_pair(RunConfig const & cfg)
{
    if (!is_prime(cfg.p))
        throw UsageError("--p must be prime (got " + std::to_string(cfg.p) + ")");
    if (cfg.ell < 2 || !is_prime(static_cast<std::uint64_t>(cfg.ell)))
        throw UsageError("--ell must be prime (got " + std::to_string(cfg.ell) + ")");
    if (static_cast<std::uint64_t>(cfg.ell) >= cfg.p)
        throw UsageError("--ell must be smaller than --p");
}

void require_length(int value, char const * flag)
{
    if (value < 3 || value > max_order_length)
        throw UsageError(std::string(flag) + " must lie in [3, 40] (got " + std::to_string(value) + ")");
}

void require_format(std::string & format, std::initializer_list<char const *> allowed)
{
    if (format.empty())
        format = *allowed.begin();
    for (auto const * f : allowed)
        if (format == f)
            return;
    std::string list;
    for (auto const * f : allowed)
        list += (list.empty() ? "" : ", ") + std::string(f);
    throw UsageError("--format must be one of " + list + " (got " + format + ")");
}

// Writes to --out through a temporary file and rename, or to stdout.
void emit(RunConfig const & cfg, std::string const & text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::filesystem::path target(cfg.out);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << text;
        os.close();
        if (!os) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot rename output to " + target.string());
    }
}

// Human-readable verdict line; kept off stdout when the report itself goes there.
std::ostream & status_stream(RunConfig const & cfg)
{
    return cfg.out.empty() ? std::cerr : std::cout;
}

std::string dump(json const & j)
{
    return j.dump(2) + "\n";
}

int cmd_graph(RunConfig cfg)
{
    require_prime_pair(cfg);
    require_format(cfg.format, {"json", "dot"});
    auto graph = build_graph(cfg.p, static_cast<int>(cfg.ell), cfg.modpoly_path());
    std::uint64_t expected = vertex_count_formula(cfg.p);
    bool ok = graph.size() == expected;
    if (cfg.format == "dot") {
        emit(cfg, to_dot(graph));
    }
    else {
        json j = to_json(graph);
        j["schema"] = 1;
        j["command"] = "graph";
        j["vertex_count"] = graph.size();
        j["vertex_count_formula"] = expected;
        j["total_loops"] = graph.total_loops();
        j["connected"] = graph.is_connected();
        j["passed"] = ok;
        emit(cfg, dump(j));
    }
    status_stream(cfg) << "vertices: " << graph.size() << " (formula " << expected << ") "
                       << (ok ? "ok" : "MISMATCH") << "\n";
    return ok ? exit_pass : exit_verdict;
}

int cmd_count(RunConfig cfg)
{
    require_prime_pair(cfg);
    require_length(cfg.r_max, "--r-max");
    require_format(cfg.format, {"json", "csv"});
    auto census = cycle_census(cfg.p, cfg.ell, cfg.r_max, parse_census_method(cfg.method), cfg.modpoly_path());
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "r,graph_side,order_low,order_high,bound_c,match\n";
        for (auto const & row : census.rows) {
            os << row.r << ',' << (row.graph_side ? row.graph_side->get_str() : "") << ',';
            if (row.order_side)
                os << row.order_side->low.get_str() << ',' << row.order_side->high.get_str();
            else
                os << ',';
            auto m = row.match();
            os << ',' << row.bound.c_N << ',' << (m ? (*m ? "1" : "0") : "") << '\n';
        }
        emit(cfg, os.str());
    }
    else {
        emit(cfg, dump(to_json(census)));
    }
    bool ok = census.passed() && !(cfg.strict && census.ambiguous());
    status_stream(cfg) << "count: " << (census.passed() ? "ok" : "FAILED")
                       << (census.ambiguous() ? " (ambiguous epsilon)" : "") << "\n";
    return ok ? exit_pass : exit_verdict;
}

int cmd_orders(RunConfig cfg)
{
    require_prime_pair(cfg);
    int r = cfg.r ? cfg.r : cfg.N;
    require_length(r, "--r");
    require_format(cfg.format, {"csv", "json"});
    auto records = enumerate_orders(r, cfg.p, cfg.ell);
    bool ambiguous = false;
    for (auto const & rec : records)
        ambiguous = ambiguous || rec.eps.ambiguous;
    if (cfg.format == "csv") {
        emit(cfg, orders_csv(records));
    }
    else {
        json list = json::array();
        for (auto const & rec : records)
            list.push_back(to_json(rec));
        emit(cfg, dump({{"schema", 1},
                        {"command", "orders"},
                        {"r", r},
                        {"p", cfg.p},
                        {"ell", cfg.ell},
                        {"orders", list},
                        {"ambiguous", ambiguous}}));
    }
    status_stream(cfg) << "orders: " << records.size() << " with [l] of order " << r
                       << (ambiguous ? " (ambiguous epsilon)" : "") << "\n";
    return cfg.strict && ambiguous ? exit_verdict : exit_pass;
}

int cmd_bound(RunConfig cfg)
{
    if (cfg.ell < 2 || !is_prime(static_cast<std::uint64_t>(cfg.ell)))
        throw UsageError("--ell must be prime (got " + std::to_string(cfg.ell) + ")");
    int N = cfg.N ? cfg.N : cfg.r_max;
    require_length(N, "--N");
    require_format(cfg.format, {"json", "csv"});
    auto b = bound_b(N, cfg.ell);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "N,ell,B_N,c_N\n" << N << ',' << cfg.ell << ',' << b.B_N << ',' << b.c_N << '\n';
        emit(cfg, os.str());
    }
    else {
        emit(cfg, dump({{"schema", 1}, {"command", "bound"}, {"N", N}, {"ell", cfg.ell}, {"B_N", b.B_N}, {"c_N", b.c_N}}));
    }
    return exit_pass;
}

int cmd_spectral(RunConfig cfg)
{
    require_prime_pair(cfg);
    require_format(cfg.format, {"json"});
    auto graph = build_graph(cfg.p, static_cast<int>(cfg.ell), cfg.modpoly_path());
    auto rep = spectral_check(graph);
    bool ok = rep.ramanujan;
    json walks = json::array();
    for (int t : {5, 10, 20, 30}) {
        auto d = rw_distribution_distance(graph, {0}, t);
        ok = ok && d.deviation <= d.bound;
        walks.push_back({{"t", t}, {"deviation", d.deviation}, {"bound", d.bound}, {"all_reached", d.all_reached}});
    }
    int cover = covering_walk_length(graph.size(), 1, static_cast<int>(cfg.ell));
    bool covered = rw_distribution_distance(graph, {0}, cover).all_reached;
    ok = ok && covered;
    emit(cfg, dump({{"schema", 1},
                    {"command", "spectral"},
                    {"p", cfg.p},
                    {"ell", cfg.ell},
                    {"vertices", graph.size()},
                    {"lambda1", rep.lambda1},
                    {"lambda2", rep.lambda2},
                    {"ramanujan_bound", rep.ramanujan_bound},
                    {"ramanujan", rep.ramanujan},
                    {"iterations", rep.iterations},
                    {"random_walk", walks},
                    {"covering_length", cover},
                    {"covering_reached", covered},
                    {"passed", ok}}));
    status_stream(cfg) << "lambda2 = " << rep.lambda2 << " (bound " << rep.ramanujan_bound << ") "
                       << (ok ? "ok" : "FAILED") << "\n";
    return ok ? exit_pass : exit_verdict;
}

int cmd_locate(RunConfig cfg)
{
    require_prime_pair(cfg);
    require_format(cfg.format, {"json", "csv"});
    if (!is_discriminant(cfg.disc))
        throw UsageError("--disc must be a negative discriminant (got " + std::to_string(cfg.disc) + ")");
    Discriminant D(cfg.disc);
    auto graph = build_graph(cfg.p, static_cast<int>(cfg.ell), cfg.modpoly_path());
    auto cycles = locate_rim_vertices(D, graph);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "cycle,position,vertex,j\n";
        for (std::size_t c = 0; c < cycles.size(); ++c)
            for (std::size_t i = 0; i < cycles[c].vertices.size(); ++i) {
                auto v = cycles[c].vertices[i];
                os << c << ',' << i << ',' << v << ',' << graph.vertices()[v].to_string() << '\n';
            }
        emit(cfg, os.str());
    }
    else {
        json list = json::array();
        for (auto const & cycle : cycles) {
            json js = json::array();
            for (auto v : cycle.vertices)
                js.push_back(graph.vertices()[v].to_string());
            list.push_back({{"vertices", cycle.vertices}, {"j", js}});
        }
        emit(cfg, dump({{"schema", 1},
                        {"command", "locate"},
                        {"discriminant", cfg.disc},
                        {"p", cfg.p},
                        {"ell", cfg.ell},
                        {"nonresidue", graph.field().nonresidue()},
                        {"cycles", list}}));
    }
    status_stream(cfg) << "located " << cycles.size() << " cycle(s)\n";
    return exit_pass;
}

int cmd_hilbert(RunConfig cfg)
{
    require_format(cfg.format, {"text", "json"});
    if (!is_discriminant(cfg.disc))
        throw UsageError("--disc must be a negative discriminant (got " + std::to_string(cfg.disc) + ")");
    Discriminant D(cfg.disc);
    auto H = cfg.precision_bits ? hilbert_class_poly(D, cfg.precision_bits) : hilbert_class_poly(D);
    if (cfg.format == "text") {
        emit(cfg, H.to_text() + "\n");
    }
    else {
        json coeffs = json::array();
        for (auto const & c : H.coefficients)
            coeffs.push_back(integer_json(c));
        emit(cfg, dump({{"schema", 1},
                        {"command", "hilbert"},
                        {"discriminant", H.discriminant},
                        {"degree", H.degree()},
                        {"precision_bits", H.precision_bits},
                        {"coefficients", coeffs}}));
    }
    return exit_pass;
}

void add_common(CLI::App * sub, RunConfig & cfg)
{
    sub->add_option("--format", cfg.format, "Output format");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--modpoly-dir", cfg.modpoly_dir,
                    "Directory of phi_<l>.txt files (default $ISOCYCLES_MODPOLY_DIR, then built-in levels)");
    sub->add_flag("--strict", cfg.strict, "Fail on ambiguous epsilon factors");
    sub->add_option("--precision-bits", cfg.precision_bits, "Override the working precision");
}

}  // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Isogeny cycle counts on supersingular l-isogeny graphs"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto * graph = app.add_subcommand("graph", "Build the isogeny graph and export it (json, dot)");
    graph->add_option("--p", cfg.p, "Characteristic")->required();
    graph->add_option("--ell", cfg.ell, "Isogeny degree");

    auto * count = app.add_subcommand("count", "Directed cycle counts (json, csv)");
    count->add_option("--p", cfg.p, "Characteristic")->required();
    count->add_option("--ell", cfg.ell, "Isogeny degree");
    count->add_option("--r-max", cfg.r_max, "Longest cycle length");
    count->add_option("--method", cfg.method, "graph, orders or both");

    auto * orders = app.add_subcommand("orders", "Orders whose class above ell has order r (csv, json)");
    orders->add_option("--p", cfg.p, "Characteristic")->required();
    orders->add_option("--ell", cfg.ell, "Isogeny degree");
    orders->add_option("--r", cfg.r, "Cycle length");
    orders->add_option("--N", cfg.N, "Cycle length (alias of --r)");

    auto * bound = app.add_subcommand("bound", "Explicit upper bounds for Q_N and c_N (json, csv)");
    bound->add_option("--N", cfg.N, "Cycle length")->required();
    bound->add_option("--ell", cfg.ell, "Isogeny degree");

    auto * spectral = app.add_subcommand("spectral", "Second eigenvalue and random-walk mixing (json)");
    spectral->add_option("--p", cfg.p, "Characteristic")->required();
    spectral->add_option("--ell", cfg.ell, "Isogeny degree");

    auto * locate = app.add_subcommand("locate", "Rim cycles from the roots of H_D mod p (json, csv)");
    locate->add_option("--disc", cfg.disc, "Discriminant")->required();
    locate->add_option("--p", cfg.p, "Characteristic")->required();
    locate->add_option("--ell", cfg.ell, "Isogeny degree");

    auto * hilbert = app.add_subcommand("hilbert", "Hilbert class polynomial (text, json)");
    hilbert->add_option("--disc", cfg.disc, "Discriminant")->required();

    for (auto * sub : {graph, count, orders, bound, spectral, locate, hilbert})
        add_common(sub, cfg);

    try {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const & e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_error;
    }

    try {
        if (*graph)
            return cmd_graph(cfg);
        if (*count)
            return cmd_count(cfg);
        if (*orders)
            return cmd_orders(cfg);
        if (*bound)
            return cmd_bound(cfg);
        if (*spectral)
            return cmd_spectral(cfg);
        if (*locate)
            return cmd_locate(cfg);
        if (*hilbert)
            return cmd_hilbert(cfg);
    }
    catch (UsageError const & e) {
        std::cerr << "isocycles: invalid arguments: " << e.what() << "\n";
    }
    catch (GateError const & e) {
        std::cerr << "isocycles: refused: " << e.what() << "\n";
    }
    catch (ModpolyError const & e) {
        std::cerr << "isocycles: modpoly: " << e.what() << "\n";
    }
    catch (GraphError const & e) {
        std::cerr << "isocycles: ssgraph: " << e.what() << "\n";
    }
    catch (HilbertPrecisionError const & e) {
        std::cerr << "isocycles: hilbert: " << e.what() << "\n";
    }
    catch (RimLocationError const & e) {
        std::cerr << "isocycles: locate: " << e.what() << "\n";
    }
    catch (std::exception const & e) {
        std::cerr << "isocycles: error: " << e.what() << "\n";
    }
    return exit_error;
}
