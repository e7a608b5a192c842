#include "doctest.h"

#include "isocycles/modpoly.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>

using namespace isocycles;
using cld = std::complex<long double>;

namespace {

// j(tau) from E4^3 / Delta, with Delta = q prod (1 - q^n)^24.
cld j_numeric(cld tau)
{
    const long double pi = 3.141592653589793238462643383279502884L;
    cld q = std::exp(cld(0, 2 * pi) * tau);
    cld e4 = 1, qn = 1;
    for (int n = 1; n < 400; ++n) {
        qn *= q;
        long double s3 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0)
                s3 += std::pow((long double)d, 3);
        e4 += 240.0L * s3 * qn;
    }
    cld prod = 1;
    qn = 1;
    for (int n = 1; n < 400; ++n) {
        qn *= q;
        prod *= std::pow(cld(1) - qn, 24);
    }
    return e4 * e4 * e4 / (q * prod);
}

// |Phi(x, y)| relative to the sum of absolute term sizes.
long double relative_residual(ModularPolynomial const & phi, cld x, cld y)
{
    cld sum = 0;
    long double scale = 0;
    for (auto const & [e, c] : phi.stored_coefficients()) {
        long double cv = std::stold(c.get_str());
        cld t = cv * std::pow(x, e.first) * std::pow(y, e.second);
        cld u = e.first == e.second ? cld(0) : cv * std::pow(x, e.second) * std::pow(y, e.first);
        sum += t + u;
        scale += std::abs(t) + std::abs(u);
    }
    return std::abs(sum) / scale;
}

std::string read_file(std::filesystem::path const & p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path data_dir = ISOCYCLES_TEST_DATA;

}  // namespace

TEST_CASE("embedded phi_2 coefficients")
{
    auto phi = load_modular_polynomial(2);
    CHECK(phi.level() == 2);
    CHECK(phi.coefficient(3, 0) == 1);
    CHECK(phi.coefficient(0, 3) == 1);
    CHECK(phi.coefficient(2, 2) == -1);
    CHECK(phi.coefficient(1, 2) == 1488);
    CHECK(phi.coefficient(1, 1) == 40773375);
    CHECK(phi.coefficient(0, 0) == mpz_class("-157464000000000"));
    CHECK(phi.coefficient(3, 3) == 0);
}

TEST_CASE("embedded phi_3 has no constant term")
{
    auto phi = load_modular_polynomial(3);
    CHECK(phi.coefficient(0, 0) == 0);
    CHECK(phi.coefficient(1, 0) == mpz_class("1855425871872000000000"));
}

TEST_CASE("modular relation holds numerically")
{
    for (int ell : {2, 3, 5, 7}) {
        ModularPolynomial phi = ell <= 3 ? load_modular_polynomial(ell)
                                         : load_modular_polynomial(ell, data_dir / ("phi_" + std::to_string(ell) + ".txt"));
        for (cld tau : {cld(0, 1.1L), cld(0.3L, 1.7L)}) {
            CAPTURE(ell);
            CHECK(relative_residual(phi, j_numeric(tau), j_numeric(cld(ell) * tau)) < 1e-12L);
        }
    }
}

TEST_CASE("serialize and parse round trip")
{
    for (int ell : {2, 3}) {
        auto phi = load_modular_polynomial(ell);
        auto text = phi.serialize();
        auto again = ModularPolynomial::parse(text);
        CHECK(again.stored_coefficients() == phi.stored_coefficients());
        CHECK(again.serialize() == text);
    }
    auto text5 = read_file(data_dir / "phi_5.txt");
    CHECK(ModularPolynomial::parse(text5).serialize() == text5);
}

TEST_CASE("rejects bad input")
{
    std::string good = load_modular_polynomial(2).serialize();

    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("ell=2\n2 0 1\n1 1 5\n"), doctest::Contains("degree mismatch"),
                         ModpolyError);
    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("ell=2\n3 0 2\n2 2 -1\n"), doctest::Contains("non-monic"),
                         ModpolyError);
    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("ell=2\n3 1 1\n3 0 1\n"), doctest::Contains("non-monic"),
                         ModpolyError);
    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("elll=2\n3 0 1\n"), doctest::Contains("malformed"), ModpolyError);
    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("ell=2\n2 2 -1\n3 0 1\n"), doctest::Contains("malformed"),
                         ModpolyError);
    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("ell=2\n3 0 1 \n"), doctest::Contains("malformed"), ModpolyError);
    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("ell=2\n0 3 1\n"), doctest::Contains("malformed"), ModpolyError);
    CHECK_THROWS_WITH_AS(ModularPolynomial::parse("ell=2\n3 0 x1\n"), doctest::Contains("malformed"), ModpolyError);
    CHECK_THROWS_AS(ModularPolynomial::parse("ell=4\n5 0 1\n"), ModpolyError);
    CHECK_THROWS_AS(load_modular_polynomial(5), ModpolyError);
    CHECK_THROWS_AS(load_modular_polynomial(3, data_dir / "phi_5.txt"), ModpolyError);
    CHECK_THROWS_AS(load_modular_polynomial(2, data_dir / "does_not_exist.txt"), ModpolyError);
    CHECK_NOTHROW(ModularPolynomial::parse(good));
}

TEST_CASE("directory lookup falls back to embedded data")
{
    CHECK(find_modular_polynomial(5, data_dir).level() == 5);
    CHECK(find_modular_polynomial(2, data_dir).level() == 2);
    CHECK(find_modular_polynomial(2, std::nullopt).level() == 2);
    CHECK_THROWS_AS(find_modular_polynomial(11, data_dir), ModpolyError);
}

TEST_CASE("instantiation at 1728 factors as expected")
{
    // Phi_2(X, 1728) = (X - 1728)(X - 287496)^2 over Z.
    PrimeField f(179);
    auto phi = load_modular_polynomial(2);
    auto got = instantiate(phi, QuadExtElement::from_int(f, 1728), f);
    auto a = PolyOverFp2::linear(QuadExtElement::from_int(f, 1728));
    auto b = PolyOverFp2::linear(QuadExtElement::from_int(f, 287496));
    CHECK(got == a * b * b);
}

TEST_CASE("instantiation matches direct evaluation")
{
    PrimeField f(1009);
    auto phi = load_modular_polynomial(3);
    ReducedModularPolynomial red(phi, f);
    QuadExtElement j(f, 123, 456), x(f, 77, 5);
    QuadExtElement direct(f);
    for (auto const & [e, c] : phi.stored_coefficients()) {
        mpz_class r = c % 1009;
        if (r < 0)
            r += 1009;
        QuadExtElement cc(f, r.get_ui());
        direct += cc * x.pow(e.first) * j.pow(e.second);
        if (e.first != e.second)
            direct += cc * x.pow(e.second) * j.pow(e.first);
    }
    CHECK(red.instantiate(j).evaluate(x) == direct);
    CHECK(red.instantiate(j).degree() == 4);
}

TEST_CASE("diagonal has degree 2l")
{
    PrimeField f(179);
    for (int ell : {2, 3}) {
        ReducedModularPolynomial red(load_modular_polynomial(ell), f);
        auto d = red.diagonal();
        CHECK(d.degree() == 2 * ell);
        QuadExtElement x(f, 17, 3);
        CHECK(d.evaluate(x) == red.instantiate(x).evaluate(x));
    }
}

TEST_CASE("level must be below p")
{
    CHECK_THROWS_AS(ReducedModularPolynomial(load_modular_polynomial(7, data_dir / "phi_7.txt"), PrimeField(5)),
                    ModpolyError);
}
