#include "isocycles/ff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace isocycles {

PrimeField::PrimeField(std::uint64_t p)
    : p_(p)
{
    if (p <= 3)
        throw std::invalid_argument("PrimeField: p must exceed 3");
    if (p >= max_prime)
        throw std::invalid_argument("PrimeField: p must fit in 32 bits");
    if (!is_prime(p))
        throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    for (std::uint64_t n = 2; n < p; ++n) {
        if (kronecker_symbol(static_cast<std::int64_t>(n), static_cast<std::int64_t>(p)) == -1) {
            n_ = n;
            break;
        }
    }
}

std::uint64_t PrimeField::inv(std::uint64_t a) const
{
    if (a % p_ == 0)
        throw std::domain_error("PrimeField::inv: zero has no inverse");
    return powmod(a, p_ - 2, p_);
}

QuadExtElement::QuadExtElement(PrimeField const & field, std::uint64_t a, std::uint64_t b)
    : field_(field), a_(a % field.p()), b_(b % field.p())
{
}

void QuadExtElement::check_same_field(QuadExtElement const & o) const
{
    if (!(field_ == o.field_))
        throw std::invalid_argument("QuadExtElement: operands from different fields");
}

QuadExtElement QuadExtElement::operator+(QuadExtElement const & o) const
{
    check_same_field(o);
    return QuadExtElement(field_, field_.add(a_, o.a_), field_.add(b_, o.b_));
}

QuadExtElement QuadExtElement::operator-(QuadExtElement const & o) const
{
    check_same_field(o);
    return QuadExtElement(field_, field_.sub(a_, o.a_), field_.sub(b_, o.b_));
}

QuadExtElement QuadExtElement::operator-() const
{
    return QuadExtElement(field_, field_.neg(a_), field_.neg(b_));
}

QuadExtElement QuadExtElement::operator*(QuadExtElement const & o) const
{
    check_same_field(o);
    auto const & F = field_;
    // (a + b s)(c + d s) = (ac + n bd) + (ad + bc) s
    std::uint64_t ac = F.mul(a_, o.a_);
    std::uint64_t bd = F.mul(b_, o.b_);
    std::uint64_t ad = F.mul(a_, o.b_);
    std::uint64_t bc = F.mul(b_, o.a_);
    return QuadExtElement(F, F.add(ac, F.mul(F.nonresidue(), bd)), F.add(ad, bc));
}

QuadExtElement QuadExtElement::inverse() const
{
    if (is_zero())
        throw std::domain_error("fp2_inv: zero has no inverse");
    auto const & F = field_;
    // norm = a^2 - n b^2, nonzero since n is a non-residue
    std::uint64_t norm = F.sub(F.mul(a_, a_), F.mul(F.nonresidue(), F.mul(b_, b_)));
    std::uint64_t ninv = F.inv(norm);
    return QuadExtElement(F, F.mul(a_, ninv), F.mul(F.neg(b_), ninv));
}

QuadExtElement QuadExtElement::pow(std::uint64_t e) const
{
    QuadExtElement result(field_, 1, 0);
    QuadExtElement base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

QuadExtElement QuadExtElement::conjugate() const
{
    return QuadExtElement(field_, a_, field_.neg(b_));
}

std::string QuadExtElement::to_string() const
{
    if (b_ == 0)
        return std::to_string(a_);
    return std::to_string(a_) + "+" + std::to_string(b_) + "*s";
}

std::ostream & operator<<(std::ostream & os, QuadExtElement const & x)
{
    return os << x.to_string();
}

QuadExtElement fp2_mul(QuadExtElement const & x, QuadExtElement const & y)
{
    return x * y;
}

QuadExtElement fp2_inv(QuadExtElement const & x)
{
    return x.inverse();
}

// ---------------------------------------------------------------------------

PolyOverFp2::PolyOverFp2(PrimeField const & field, std::vector<QuadExtElement> coeffs)
    : field_(field), coeffs_(std::move(coeffs))
{
    for (auto const & c : coeffs_) {
        if (!(c.field() == field_))
            throw std::invalid_argument("PolyOverFp2: coefficient from a different field");
    }
    normalize();
}

void PolyOverFp2::normalize()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

PolyOverFp2 PolyOverFp2::monomial(PrimeField const & field, QuadExtElement const & c, int degree)
{
    std::vector<QuadExtElement> v(degree + 1, QuadExtElement(field));
    v[degree] = c;
    return PolyOverFp2(field, std::move(v));
}

PolyOverFp2 PolyOverFp2::linear(QuadExtElement const & c)
{
    PrimeField const & F = c.field();
    return PolyOverFp2(F, {-c, QuadExtElement(F, 1)});
}

QuadExtElement PolyOverFp2::coefficient(int i) const
{
    if (i < 0 || i > degree())
        return QuadExtElement(field_);
    return coeffs_[i];
}

PolyOverFp2 PolyOverFp2::operator+(PolyOverFp2 const & o) const
{
    std::vector<QuadExtElement> v(std::max(coeffs_.size(), o.coeffs_.size()), QuadExtElement(field_));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = coefficient(int(i)) + o.coefficient(int(i));
    return PolyOverFp2(field_, std::move(v));
}

PolyOverFp2 PolyOverFp2::operator-(PolyOverFp2 const & o) const
{
    std::vector<QuadExtElement> v(std::max(coeffs_.size(), o.coeffs_.size()), QuadExtElement(field_));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = coefficient(int(i)) - o.coefficient(int(i));
    return PolyOverFp2(field_, std::move(v));
}

PolyOverFp2 PolyOverFp2::operator*(PolyOverFp2 const & o) const
{
    if (is_zero() || o.is_zero())
        return PolyOverFp2(field_);
    std::vector<QuadExtElement> v(coeffs_.size() + o.coeffs_.size() - 1, QuadExtElement(field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    return PolyOverFp2(field_, std::move(v));
}

PolyOverFp2 PolyOverFp2::scaled(QuadExtElement const & c) const
{
    std::vector<QuadExtElement> v = coeffs_;
    for (auto & x : v)
        x *= c;
    return PolyOverFp2(field_, std::move(v));
}

PolyOverFp2 PolyOverFp2::monic() const
{
    if (is_zero())
        return *this;
    return scaled(leading().inverse());
}

std::pair<PolyOverFp2, PolyOverFp2> PolyOverFp2::divmod(PolyOverFp2 const & d) const
{
    if (d.is_zero())
        throw std::domain_error("PolyOverFp2: division by the zero polynomial");
    if (degree() < d.degree())
        return {PolyOverFp2(field_), *this};
    std::vector<QuadExtElement> rem = coeffs_;
    std::vector<QuadExtElement> quot(coeffs_.size() - d.coeffs_.size() + 1, QuadExtElement(field_));
    QuadExtElement lead_inv = d.leading().inverse();
    int dd = d.degree();
    for (int i = degree(); i >= dd; --i) {
        QuadExtElement q = rem[i] * lead_inv;
        quot[i - dd] = q;
        if (q.is_zero())
            continue;
        for (int k = 0; k <= dd; ++k)
            rem[i - dd + k] -= q * d.coeffs_[k];
    }
    rem.erase(rem.begin() + dd, rem.end());
    return {PolyOverFp2(field_, std::move(quot)), PolyOverFp2(field_, std::move(rem))};
}

QuadExtElement PolyOverFp2::evaluate(QuadExtElement const & x) const
{
    QuadExtElement acc(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

PolyOverFp2 poly_gcd(PolyOverFp2 a, PolyOverFp2 b)
{
    while (!b.is_zero()) {
        PolyOverFp2 r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyOverFp2 poly_powmod(PolyOverFp2 const & base, std::uint64_t e, PolyOverFp2 const & m)
{
    PrimeField const & F = m.field();
    PolyOverFp2 result = PolyOverFp2(F, {QuadExtElement(F, 1)}) % m;
    PolyOverFp2 b = base % m;
    while (e) {
        if (e & 1)
            result = (result * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return result;
}

namespace {

/*
 * Deterministic shift sequence for equal-degree splitting:
 * 1, s, 1+s, 2, 2+s, 3, 3+s, ..., then every remaining element of F_{p^2}.
 */
class ShiftSequence
{
    PrimeField F;
    std::uint64_t index = 0;

  public:
    explicit ShiftSequence(PrimeField const & field) : F(field) { }

    QuadExtElement next()
    {
        std::uint64_t p = F.p();
        std::uint64_t i = index++;
        if (i == 0)
            return QuadExtElement(F, 1, 0);
        if (i == 1)
            return QuadExtElement(F, 0, 1);
        i -= 2;
        // pairs (t, 0), (t, 1) are already out for t = 1; continue t = 1+...
        if (i < 2 * (p - 1) - 1) {
            // i = 0 -> 1+s, 1 -> 2, 2 -> 2+s, ...
            std::uint64_t k = i + 1;
            return QuadExtElement(F, 1 + k / 2, k % 2);
        }
        i -= 2 * (p - 1) - 1;
        // remaining: b >= 2 (and (0, 0) excluded), lexicographic in (b, a)
        std::uint64_t b = 2 + i / p;
        std::uint64_t a = i % p;
        if (b >= p)
            throw std::logic_error("poly_roots: splitting sequence exhausted");
        return QuadExtElement(F, a, b);
    }
};

void split_linear_factors(PolyOverFp2 const & g, std::vector<QuadExtElement> & out)
{
    PrimeField const & F = g.field();
    if (g.degree() <= 0)
        return;
    if (g.degree() == 1) {
        PolyOverFp2 m = g.monic();
        out.push_back(-m.coefficient(0));
        return;
    }
    std::uint64_t q = F.p() * F.p();
    QuadExtElement one(F, 1);
    PolyOverFp2 one_poly(F, {one});
    ShiftSequence shifts(F);
    for (;;) {
        QuadExtElement delta = shifts.next();
        PolyOverFp2 x_plus(F, {delta, one});
        PolyOverFp2 w = poly_powmod(x_plus, (q - 1) / 2, g);
        for (PolyOverFp2 const & cand : {w - one_poly, w + one_poly, x_plus}) {
            PolyOverFp2 h = poly_gcd(g, cand);
            if (h.degree() > 0 && h.degree() < g.degree()) {
                split_linear_factors(h, out);
                split_linear_factors(g.divmod(h).first, out);
                return;
            }
        }
    }
}

}  // namespace

std::vector<Root> poly_roots(PolyOverFp2 const & f)
{
    if (f.is_zero())
        throw std::invalid_argument("poly_roots: zero polynomial");
    if (f.degree() > max_root_degree)
        throw std::invalid_argument("poly_roots: degree exceeds cap of " + std::to_string(max_root_degree));
    PrimeField const & F = f.field();
    std::vector<Root> roots;
    if (f.degree() == 0)
        return roots;
    PolyOverFp2 fm = f.monic();
    std::uint64_t q = F.p() * F.p();
    PolyOverFp2 x(F, {QuadExtElement(F, 0), QuadExtElement(F, 1)});
    // product of the distinct linear factors: gcd(f, x^q - x)
    PolyOverFp2 g = poly_gcd(fm, poly_powmod(x, q, fm) - x);
    std::vector<QuadExtElement> distinct;
    split_linear_factors(g, distinct);
    std::sort(distinct.begin(), distinct.end());
    for (auto const & c : distinct) {
        int mult = 0;
        PolyOverFp2 rest = fm;
        PolyOverFp2 lin = PolyOverFp2::linear(c);
        for (;;) {
            auto [quot, rem] = rest.divmod(lin);
            if (!rem.is_zero())
                break;
            ++mult;
            rest = std::move(quot);
        }
        roots.push_back({c, mult});
    }
    return roots;
}

std::vector<QuadExtElement> poly_roots_flat(PolyOverFp2 const & f)
{
    std::vector<QuadExtElement> out;
    for (auto const & r : poly_roots(f))
        out.insert(out.end(), r.multiplicity, r.value);
    return out;
}

}  // namespace isocycles
