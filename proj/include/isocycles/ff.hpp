#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "isocycles/arith.hpp"

namespace isocycles {

/*
 * The prime field F_p together with the quadratic extension
 * F_{p^2} = F_p[s] / (s^2 - n), where n is the least quadratic non-residue.
 * Cheap to copy: elements carry their field by value.
 */
class PrimeField
{
    std::uint64_t p_ = 0;
    std::uint64_t n_ = 0;

  public:
    static constexpr std::uint64_t max_prime = std::uint64_t(1) << 32;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    std::uint64_t nonresidue() const { return n_; }

    std::uint64_t reduce(std::int64_t v) const { return static_cast<std::uint64_t>(floor_mod(v, static_cast<std::int64_t>(p_))); }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { std::uint64_t s = a + b; return s >= p_ ? s - p_ : s; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
    std::uint64_t inv(std::uint64_t a) const;

    bool operator==(PrimeField const & o) const { return p_ == o.p_ && n_ == o.n_; }
};

/* a + b*s with s^2 = field.nonresidue(). Ordered lexicographically by (a, b). */
class QuadExtElement
{
    PrimeField field_;
    std::uint64_t a_ = 0, b_ = 0;

    void check_same_field(QuadExtElement const & o) const;

  public:
    QuadExtElement(PrimeField const & field, std::uint64_t a = 0, std::uint64_t b = 0);

    static QuadExtElement from_int(PrimeField const & field, std::int64_t a, std::int64_t b = 0)
    {
        return QuadExtElement(field, field.reduce(a), field.reduce(b));
    }

    PrimeField const & field() const { return field_; }
    std::uint64_t a() const { return a_; }
    std::uint64_t b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool in_base_field() const { return b_ == 0; }

    QuadExtElement operator+(QuadExtElement const & o) const;
    QuadExtElement operator-(QuadExtElement const & o) const;
    QuadExtElement operator*(QuadExtElement const & o) const;
    QuadExtElement operator-() const;
    QuadExtElement & operator+=(QuadExtElement const & o) { return *this = *this + o; }
    QuadExtElement & operator-=(QuadExtElement const & o) { return *this = *this - o; }
    QuadExtElement & operator*=(QuadExtElement const & o) { return *this = *this * o; }

    QuadExtElement inverse() const;
    QuadExtElement pow(std::uint64_t e) const;
    QuadExtElement conjugate() const;  // Frobenius: a - b*s

    bool operator==(QuadExtElement const & o) const { return field_ == o.field_ && a_ == o.a_ && b_ == o.b_; }
    std::strong_ordering operator<=>(QuadExtElement const & o) const
    {
        if (auto c = a_ <=> o.a_; c != 0)
            return c;
        return b_ <=> o.b_;
    }

    // "a+b*s", or plain "a" when b = 0.
    std::string to_string() const;
};

std::ostream & operator<<(std::ostream & os, QuadExtElement const & x);

QuadExtElement fp2_mul(QuadExtElement const & x, QuadExtElement const & y);
QuadExtElement fp2_inv(QuadExtElement const & x);

/* Univariate polynomial over F_{p^2}, lowest degree first, normalized. */
class PolyOverFp2
{
    PrimeField field_;
    std::vector<QuadExtElement> coeffs_;

    void normalize();

  public:
    explicit PolyOverFp2(PrimeField const & field) : field_(field) { }
    PolyOverFp2(PrimeField const & field, std::vector<QuadExtElement> coeffs);

    static PolyOverFp2 monomial(PrimeField const & field, QuadExtElement const & c, int degree);
    // x - c
    static PolyOverFp2 linear(QuadExtElement const & c);

    PrimeField const & field() const { return field_; }
    std::vector<QuadExtElement> const & coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    QuadExtElement coefficient(int i) const;
    QuadExtElement leading() const { return coeffs_.back(); }

    PolyOverFp2 operator+(PolyOverFp2 const & o) const;
    PolyOverFp2 operator-(PolyOverFp2 const & o) const;
    PolyOverFp2 operator*(PolyOverFp2 const & o) const;
    PolyOverFp2 scaled(QuadExtElement const & c) const;
    PolyOverFp2 monic() const;

    // Quotient and remainder; throws on division by zero.
    std::pair<PolyOverFp2, PolyOverFp2> divmod(PolyOverFp2 const & d) const;
    PolyOverFp2 operator%(PolyOverFp2 const & d) const { return divmod(d).second; }

    QuadExtElement evaluate(QuadExtElement const & x) const;

    bool operator==(PolyOverFp2 const & o) const { return field_ == o.field_ && coeffs_ == o.coeffs_; }
};

PolyOverFp2 poly_gcd(PolyOverFp2 a, PolyOverFp2 b);
// base^e mod m
PolyOverFp2 poly_powmod(PolyOverFp2 const & base, std::uint64_t e, PolyOverFp2 const & m);

struct Root
{
    QuadExtElement value;
    int multiplicity;

    bool operator==(Root const &) const = default;
};

constexpr int max_root_degree = 64;

// All roots in F_{p^2} with multiplicity, sorted by (a, b).
std::vector<Root> poly_roots(PolyOverFp2 const & f);

// The same multiset flattened, each root repeated by multiplicity.
std::vector<QuadExtElement> poly_roots_flat(PolyOverFp2 const & f);

}  // namespace isocycles
