// One PASS/FAIL line per acceptance criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isocycles/arith.hpp"
#include "isocycles/ff.hpp"
#include "isocycles/hilbert.hpp"
#include "isocycles/nbwalk.hpp"
#include "isocycles/ordercount.hpp"
#include "isocycles/quadform.hpp"
#include "isocycles/ssgraph.hpp"

#include "rim179.hpp"

using namespace isocycles;

namespace {

struct Verdict
{
    bool ok = true;
    std::ostringstream detail;
    std::string first_failure;

    void require(bool cond, std::string const & what)
    {
        if (!cond && ok) {
            first_failure = what;
            ok = false;
        }
    }
};

int failures = 0;

void criterion(int id, char const * title, std::function<void(Verdict &)> const & body)
{
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        body(v);
    }
    catch (std::exception const & e) {
        v.ok = false;
        v.first_failure = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string detail = v.detail.str();
    if (!v.first_failure.empty())
        detail += (detail.empty() ? "" : " | ") + ("first failure: " + v.first_failure);
    std::printf("[%s] %2d %s (%.1fs) %s\n", v.ok ? "PASS" : "FAIL", id, title, secs, detail.c_str());
    std::fflush(stdout);
    failures += !v.ok;
}

struct Case
{
    std::uint64_t p;
    int ell;
};

std::vector<Case> const cross_cases = {{1009, 2}, {3361, 2}, {3229, 3}};

std::vector<mpz_class> graph_directed(Case c, int r_max)
{
    return directed_cycle_counts(closed_nbw_counts(build_nb_operator(build_graph(c.p, c.ell)), r_max), r_max);
}

QuadExtElement random_element(PrimeField const & F, std::mt19937_64 & rng)
{
    std::uniform_int_distribution<std::uint64_t> d(0, F.p() - 1);
    return QuadExtElement(F, d(rng), d(rng));
}

}  // namespace

int main()
{
    criterion(1, "vertex census, 5 <= p <= 5000, ell = 2", [](Verdict & v) {
        int primes = 0;
        for (std::uint64_t p = 5; p <= 5000; ++p) {
            if (!is_prime(p))
                continue;
            ++primes;
            auto g = build_graph(p, 2);
            v.require(g.size() == vertex_count_formula(p), "p = " + std::to_string(p));
        }
        v.detail << primes << " primes";
    });

    criterion(2, "Q_1..Q_6 and c_3..c_6 at p = 179", [](Verdict & v) {
        std::vector<int> Q = {0, 4, 6, 12, 10, 94}, c = {2, 2, 2, 14};
        for (int N = 1; N <= 6; ++N) {
            auto q = q_n(N, 179, 2);
            v.require(q.exact() && q.low == Q[N - 1], "Q_" + std::to_string(N) + " = " + q.low.get_str());
        }
        for (int N = 3; N <= 6; ++N) {
            auto cn = order_side_cycle_count(N, 179, 2);
            v.require(cn.exact() && cn.low == c[N - 3], "c_" + std::to_string(N) + " = " + cn.low.get_str());
        }
    });

    criterion(3, "class numbers and I_r sets at p = 179", [](Verdict & v) {
        std::vector<std::pair<std::int64_t, std::int64_t>> h = {{-31, 3},  {-39, 4},   {-47, 5},  {-87, 6},
                                                                {-231, 12}, {-247, 6}, {-255, 12}, {-135, 6}};
        for (auto [d, expect] : h)
            v.require(class_number(Discriminant(d)) == expect, "h(" + std::to_string(d) + ")");
        std::vector<std::vector<std::int64_t>> sets = {{-31}, {-39}, {-47}, {-255, -247, -231, -135, -87}};
        for (int r = 3; r <= 6; ++r) {
            std::vector<std::int64_t> got;
            for (auto const & rec : enumerate_orders(r, 179, 2))
                got.push_back(rec.discriminant);
            std::sort(got.begin(), got.end());
            v.require(got == sets[r - 3], "I_" + std::to_string(r));
        }
    });

    criterion(4, "graph side equals order side, r = 3..10", [](Verdict & v) {
        for (auto c : cross_cases) {
            auto directed = graph_directed(c, 10);
            for (int r = 3; r <= 10; ++r) {
                auto o = order_side_cycle_count(r, c.p, c.ell);
                v.require(o.exact() && o.low == directed[r - 3],
                          "p = " + std::to_string(c.p) + ", r = " + std::to_string(r));
            }
        }
    });

    criterion(5, "p = 241, ell = 11, D = -964", [](Verdict & v) {
        Discriminant D(-964);
        auto s = summarize_class_group(D);
        v.require(s.h == 12, "h");
        v.require(s.g == 2, "genus number");
        auto sigma = prime_form(D, 11);
        v.require(sigma.has_value(), "11 splits");
        std::int64_t r = sigma ? form_order(D, *sigma) : 0;
        v.require(r == 4, "order of the class above 11");
        auto e = epsilon(D, 11, r, 241);
        v.require(!e.ambiguous && e.value == mpq_class(4, 3), "epsilon = " + e.value.get_str());
        v.require(e.value * s.h / r == 4, "contribution");
    });

    criterion(6, "Q_N <= B_N and c_N <= bound", [](Verdict & v) {
        std::vector<std::pair<Case, int>> cases = {{{179, 2}, 6}};
        for (auto c : cross_cases)
            cases.push_back({c, 10});
        int checked = 0;
        for (auto [c, top] : cases)
            for (int N = 3; N <= top; ++N) {
                auto b = bound_b(N, c.ell);
                std::string at = "p = " + std::to_string(c.p) + ", N = " + std::to_string(N);
                v.require(q_n(N, c.p, c.ell).high <= b.B_N, "Q_N at " + at);
                v.require(order_side_cycle_count(N, c.p, c.ell).high <= b.c_N, "c_N at " + at);
                ++checked;
            }
        v.detail << checked << " (p, N) pairs";
    });

    criterion(7, "|c_r 2r / ell^r - 1| <= 0.2", [](Verdict & v) {
        struct Range
        {
            Case c;
            int lo, hi;
        };
        for (auto [c, lo, hi] : {Range{{3361, 2}, 10, 14}, Range{{3229, 3}, 8, 10}}) {
            auto directed = graph_directed(c, hi);
            v.detail << (c.p == 3361 ? "" : " ") << "p = " << c.p << ":";
            for (int r = lo; r <= hi; ++r) {
                double undirected = directed[r - 3].get_d() / 2;
                double ratio = undirected * 2 * r / std::pow(double(c.ell), r);
                char buf[32];
                std::snprintf(buf, sizeof buf, " r%d=%.3f", r, ratio);
                v.detail << buf;
                v.require(std::abs(ratio - 1) <= 0.2, "p = " + std::to_string(c.p) + ", r = " + std::to_string(r));
            }
            v.detail << ";";
        }
    });

    criterion(8, "lambda_2 <= 2 sqrt 2 and random-walk bound", [](Verdict & v) {
        for (std::uint64_t p : {1009u, 3361u}) {
            auto g = build_graph(p, 2);
            auto rep = spectral_check(g);
            v.require(std::abs(rep.lambda2) <= 2 * std::sqrt(2.0) + 1e-6, "lambda_2 at p = " + std::to_string(p));
            char buf[48];
            std::snprintf(buf, sizeof buf, "%sp = %llu: lambda2 = %.6f", p == 1009 ? "" : "; ", static_cast<unsigned long long>(p),
                          rep.lambda2);
            v.detail << buf;
            for (std::size_t s = 0; s < g.size(); ++s)
                for (int t : {5, 10, 20, 30}) {
                    auto d = rw_distribution_distance(g, {s}, t);
                    v.require(d.deviation <= d.bound,
                              "walk from " + std::to_string(s) + ", t = " + std::to_string(t));
                }
        }
    });

    criterion(9, "loop counts at j = 1728 and j = 0, 50 < p <= 2000", [](Verdict & v) {
        int checked = 0;
        for (std::uint64_t p = 51; p <= 2000; ++p) {
            if (!is_prime(p))
                continue;
            bool has1728 = p % 4 == 3, has0 = p % 3 == 2;
            if (!has1728 && !has0)
                continue;
            for (int ell : {2, 3}) {
                auto g = build_graph(p, ell);
                PrimeField const & f = g.field();
                std::uint64_t up = p;
                if (has1728 && 4u * ell < up) {
                    int want = 1 + kronecker_symbol(-4, ell);
                    v.require(loop_count(g, QuadExtElement::from_int(f, 1728)) == want,
                              "j = 1728, p = " + std::to_string(p) + ", ell = " + std::to_string(ell));
                    ++checked;
                }
                if (has0 && 3u * ell < up) {
                    int want = 1 + kronecker_symbol(-3, ell);
                    v.require(loop_count(g, QuadExtElement::from_int(f, 0)) == want,
                              "j = 0, p = " + std::to_string(p) + ", ell = " + std::to_string(ell));
                    ++checked;
                }
            }
        }
        v.detail << checked << " loop counts";
    });

    criterion(10, "rim cycles at p = 179", [](Verdict & v) {
        auto g = build_graph(179, 2);
        PrimeField const & f = g.field();
        for (auto const & row : rim179::rows()) {
            auto cycles = locate_rim_vertices(Discriminant(row.disc), g);
            std::vector<std::vector<QuadExtElement>> got, want;
            for (auto const & c : cycles) {
                std::vector<QuadExtElement> vs;
                for (auto x : c.vertices)
                    vs.push_back(g.vertices()[x]);
                std::sort(vs.begin(), vs.end());
                got.push_back(vs);
            }
            for (auto const & c : row.cycles)
                want.push_back(rim179::sorted_values(f, c));
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            v.require(got == want, "D = " + std::to_string(row.disc));
        }
    });

    criterion(11, "property suites", [](Verdict & v) {
        std::mt19937_64 rng(11);
        int checks = 0;

        // Group axioms and reduction.
        for (std::int64_t d : {-23LL, -56LL, -231LL, -964LL, -3999LL, -10007LL}) {
            Discriminant D(d);
            auto forms = reduced_forms(D);
            auto id = principal_form(D);
            std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
            for (int trial = 0; trial < 40; ++trial) {
                auto a = forms[pick(rng)], b = forms[pick(rng)], c = forms[pick(rng)];
                v.require(compose(compose(a, b), c) == compose(a, compose(b, c)), "associativity");
                v.require(compose(a, b) == compose(b, a), "commutativity");
                v.require(compose(a, id) == a, "identity");
                v.require(compose(a, a.inverse()) == id, "inverse");
                // unreduced representative: apply (x, y) -> (x + k y, y)
                std::int64_t k = std::uniform_int_distribution<std::int64_t>(-20, 20)(rng);
                BinaryQuadraticForm u{a.a, a.b + 2 * k * a.a, a.a * k * k + a.b * k + a.c};
                v.require(reduce(u) == a && reduce(reduce(u)) == reduce(u), "reduce idempotence");
                checks += 5;
            }
        }

        // Exact Moebius division; throws otherwise. The order side is taken where
        // p^2 > 4 ell^N, so that no x is dropped for p^2 | x^2 - 4 ell^N.
        for (std::uint64_t p = 13; p <= 400; p += 12) {
            if (!is_prime(p))
                continue;
            for (int ell : {2, 3}) {
                auto traces = closed_nbw_counts(build_nb_operator(build_graph(p, ell)), 12);
                directed_cycle_counts(traces, 12);
                ++checks;
            }
        }
        for (std::uint64_t p = 5; p <= 600; ++p) {
            if (!is_prime(p))
                continue;
            for (int ell : {2, 3}) {
                if (static_cast<std::uint64_t>(ell) == p)
                    continue;
                for (int N = 3; N <= 12 && 4 * ipow(ell, N) < static_cast<std::int64_t>(p * p); ++N) {
                    order_side_cycle_count(N, p, ell);
                    ++checks;
                }
            }
        }

        // Root finding against exhaustive evaluation.
        for (std::uint64_t p : {5u, 7u, 11u, 13u, 29u, 53u, 97u}) {
            PrimeField F(p);
            for (int trial = 0; trial < 8; ++trial) {
                int deg = std::uniform_int_distribution<int>(1, 5)(rng);
                PolyOverFp2 f = PolyOverFp2::linear(random_element(F, rng));
                for (int i = 1; i < deg; ++i)
                    f = f * (trial % 2 ? PolyOverFp2::linear(random_element(F, rng))
                                       : PolyOverFp2(F, {random_element(F, rng), random_element(F, rng),
                                                         QuadExtElement(F, 1)}));
                std::vector<Root> expect;
                for (std::uint64_t a = 0; a < p; ++a)
                    for (std::uint64_t b = 0; b < p; ++b) {
                        QuadExtElement x(F, a, b);
                        int m = 0;
                        PolyOverFp2 g = f;
                        while (g.evaluate(x).is_zero()) {
                            g = g.divmod(PolyOverFp2::linear(x)).first;
                            ++m;
                        }
                        if (m)
                            expect.push_back({x, m});
                    }
                v.require(poly_roots(f) == expect, "poly_roots at p = " + std::to_string(p));
                ++checks;
            }
        }

        // Dual involution.
        for (std::uint64_t p : {13u, 1009u, 3229u}) {
            auto op = build_nb_operator(build_graph(p, 3));
            for (std::size_t e = 0; e < op.dimension(); ++e) {
                auto const & x = op.edges()[e];
                auto const & y = op.edges()[op.dual(e)];
                v.require(op.dual(op.dual(e)) == e && x.source == y.target && x.target == y.source,
                          "dual involution");
                ++checks;
            }
        }

        // Traces of cycle graphs.
        for (std::size_t n = 3; n <= 8; ++n) {
            auto traces = closed_nbw_counts(NonBacktrackingOperator(Multigraph::cycle(n)), 24);
            for (int r = 1; r <= 24; ++r) {
                v.require(traces[r - 1] == (r % n == 0 ? 2 * n : 0), "C_" + std::to_string(n) + " trace");
                ++checks;
            }
        }
        v.detail << checks << " checks";
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
