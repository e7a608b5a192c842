#include "doctest.h"

#include "isocycles/ff.hpp"

#include <algorithm>
#include <map>
#include <random>

using namespace isocycles;

TEST_CASE("prime field construction")
{
    CHECK(PrimeField(7).nonresidue() == 3);
    CHECK(PrimeField(179).nonresidue() == 2);
    CHECK(PrimeField(241).nonresidue() == 7);
    CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(3), std::invalid_argument);
}

TEST_CASE("fp2 multiplication and inversion examples")
{
    PrimeField F(7);
    QuadExtElement one(F, 1, 0), s(F, 0, 1);
    QuadExtElement x(F, 4, 5);
    CHECK(fp2_mul(one, x) == x);
    CHECK(fp2_mul(s, s) == QuadExtElement(F, 3, 0));
    CHECK(fp2_mul(QuadExtElement(F, 1, 1), QuadExtElement::from_int(F, 1, -1)) == QuadExtElement(F, 5, 0));

    CHECK(fp2_inv(one) == one);
    CHECK(fp2_inv(s) == QuadExtElement(F, 0, F.inv(3)));
    CHECK(fp2_inv(QuadExtElement(F, 2, 0)) == QuadExtElement(F, 4, 0));
    CHECK_THROWS_AS(fp2_inv(QuadExtElement(F)), std::domain_error);

    PrimeField G(11);
    CHECK_THROWS_AS(fp2_mul(one, QuadExtElement(G, 1)), std::invalid_argument);
}

TEST_CASE("every nonzero element times its inverse is one")
{
    for (std::uint64_t p : {5, 7, 13, 31}) {
        PrimeField F(p);
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                QuadExtElement x(F, a, b);
                if (x.is_zero())
                    continue;
                CHECK((x * x.inverse()).is_one());
            }
    }
}

TEST_CASE("poly_roots examples")
{
    PrimeField F(179);
    QuadExtElement one(F, 1);
    PolyOverFp2 f(F, {one, QuadExtElement(F), one});  // x^2 + 1
    auto roots = poly_roots(f);
    REQUIRE(roots.size() == 2);
    for (auto const & r : roots) {
        CHECK(r.multiplicity == 1);
        CHECK(r.value.b() != 0);
        CHECK((r.value * r.value + one).is_zero());
    }
    CHECK(roots[0].value == -roots[1].value);

    PrimeField F7(7);
    PolyOverFp2 g(F7, {QuadExtElement::from_int(F7, -2), QuadExtElement(F7), QuadExtElement(F7, 1)});
    auto r7 = poly_roots(g);
    REQUIRE(r7.size() == 2);
    CHECK(r7[0] == Root{QuadExtElement(F7, 3), 1});
    CHECK(r7[1] == Root{QuadExtElement(F7, 4), 1});

    QuadExtElement c(F, 17, 42);
    PolyOverFp2 lin = PolyOverFp2::linear(c);
    auto sq = poly_roots(lin * lin);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0] == Root{c, 2});

    CHECK_THROWS_AS(poly_roots(PolyOverFp2(F)), std::invalid_argument);
    std::vector<QuadExtElement> big(66, one);
    CHECK_THROWS_AS(poly_roots(PolyOverFp2(F, big)), std::invalid_argument);
}

namespace {

QuadExtElement random_element(PrimeField const & F, std::mt19937_64 & rng)
{
    std::uniform_int_distribution<std::uint64_t> d(0, F.p() - 1);
    return QuadExtElement(F, d(rng), d(rng));
}

PolyOverFp2 random_monic(PrimeField const & F, int degree, std::mt19937_64 & rng)
{
    std::vector<QuadExtElement> c;
    for (int i = 0; i < degree; ++i)
        c.push_back(random_element(F, rng));
    c.push_back(QuadExtElement(F, 1));
    return PolyOverFp2(F, c);
}

// Multiplicity by exhaustive evaluation of f and its successive quotients.
std::vector<Root> roots_by_exhaustion(PolyOverFp2 const & f)
{
    PrimeField const & F = f.field();
    std::vector<Root> out;
    for (std::uint64_t a = 0; a < F.p(); ++a)
        for (std::uint64_t b = 0; b < F.p(); ++b) {
            QuadExtElement x(F, a, b);
            if (!f.evaluate(x).is_zero())
                continue;
            int m = 0;
            PolyOverFp2 g = f;
            while (!g.is_zero() && g.evaluate(x).is_zero()) {
                g = g.divmod(PolyOverFp2::linear(x)).first;
                ++m;
            }
            out.push_back({x, m});
        }
    return out;
}

}  // namespace

TEST_CASE("poly_roots agrees with exhaustive evaluation for small p")
{
    std::mt19937_64 rng(20240613);
    for (std::uint64_t p : {5, 7, 11, 13, 29, 53, 97}) {
        PrimeField F(p);
        for (int trial = 0; trial < 12; ++trial) {
            std::uniform_int_distribution<int> deg(1, 6);
            int d = deg(rng);
            PolyOverFp2 f = random_monic(F, d, rng);
            if (trial % 2 == 0) {
                // plant roots, some repeated
                int planted = std::uniform_int_distribution<int>(1, 3)(rng);
                PolyOverFp2 base = random_monic(F, std::max(0, d - planted - 1), rng);
                QuadExtElement r0 = random_element(F, rng);
                f = base * PolyOverFp2::linear(r0);
                for (int i = 1; i < planted; ++i)
                    f = f * PolyOverFp2::linear(i % 2 ? r0 : random_element(F, rng));
            }
            CHECK(poly_roots(f) == roots_by_exhaustion(f));
        }
    }
}

TEST_CASE("roots of a product are the multiset union")
{
    std::mt19937_64 rng(7);
    PrimeField F(1009);
    for (int trial = 0; trial < 20; ++trial) {
        PolyOverFp2 f = random_monic(F, 3, rng) * PolyOverFp2::linear(random_element(F, rng));
        PolyOverFp2 g = random_monic(F, 4, rng) * PolyOverFp2::linear(random_element(F, rng));
        std::map<QuadExtElement, int> expected;
        for (auto const & r : poly_roots(f))
            expected[r.value] += r.multiplicity;
        for (auto const & r : poly_roots(g))
            expected[r.value] += r.multiplicity;
        std::map<QuadExtElement, int> got;
        for (auto const & r : poly_roots(f * g))
            got[r.value] += r.multiplicity;
        CHECK(got == expected);
    }
}
