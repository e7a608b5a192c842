#include "isocycles/quadform.hpp"

#include <cmath>
#include <numeric>

#include "isocycles/arith.hpp"

namespace isocycles {

namespace {

using i128 = __int128;

void check_cap(Discriminant const & D)
{
    if (-D.value() > max_class_number_discriminant)
        throw std::invalid_argument("discriminant " + std::to_string(D.value()) + " exceeds the class group cap |D| <= 1e8");
}

void check_coprime_conductor(Discriminant const & D, std::int64_t q)
{
    if (q < 2 || !is_prime(static_cast<std::uint64_t>(q)))
        throw std::invalid_argument(std::to_string(q) + " is not prime");
    if (D.conductor() % q == 0)
        throw std::invalid_argument(std::to_string(q) + " divides the conductor of " + std::to_string(D.value()));
}

std::int64_t narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("quadratic form coefficient overflow");
    return static_cast<std::int64_t>(v);
}

i128 floor_div(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i128 mod(i128 a, i128 m)
{
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

// u*a + v*b = g = gcd(a, b) >= 0
i128 ext_gcd(i128 a, i128 b, i128 & u, i128 & v)
{
    i128 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        i128 q = floor_div(a, b);
        i128 t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return a;
}

}  // namespace

bool is_discriminant(std::int64_t value)
{
    std::int64_t r = floor_mod(value, 4);
    return value < 0 && (r == 0 || r == 1);
}

Discriminant::Discriminant(std::int64_t value) : value_(value)
{
    if (!is_discriminant(value))
        throw std::invalid_argument("not a negative discriminant: " + std::to_string(value));
    std::int64_t f = square_part_root(value);
    std::int64_t d = value / (f * f);
    if (floor_mod(d, 4) != 1) {
        d *= 4;
        f /= 2;
    }
    fundamental_ = d;
    conductor_ = f;
}

BinaryQuadraticForm BinaryQuadraticForm::make(std::int64_t a, std::int64_t b, std::int64_t c)
{
    i128 disc = i128(b) * b - i128(4) * a * c;
    if (a <= 0 || disc >= 0)
        throw std::invalid_argument("form is not positive definite");
    if (std::gcd(std::gcd(a, b), c) != 1)
        throw std::invalid_argument("form is not primitive");
    narrow(disc);
    return {a, b, c};
}

bool BinaryQuadraticForm::is_reduced() const
{
    if (!(std::abs(b) <= a && a <= c))
        return false;
    if ((std::abs(b) == a || a == c) && b < 0)
        return false;
    return true;
}

std::string BinaryQuadraticForm::to_string() const
{
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

BinaryQuadraticForm reduce(BinaryQuadraticForm const & form)
{
    if (form.a <= 0 || form.discriminant() >= 0)
        throw std::invalid_argument("reduce: form is not positive definite");
    i128 a = form.a, b = form.b, c = form.c;
    auto normalize = [&] {
        if (-a < b && b <= a)
            return;
        i128 r = floor_div(a - b, 2 * a);
        c = a * r * r + b * r + c;
        b = b + 2 * r * a;
    };
    normalize();
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize();
    }
    if (a == c && b < 0)
        b = -b;
    return {narrow(a), narrow(b), narrow(c)};
}

BinaryQuadraticForm compose(BinaryQuadraticForm const & f1, BinaryQuadraticForm const & f2)
{
    if (f1.discriminant() != f2.discriminant())
        throw std::invalid_argument("compose: discriminant mismatch");
    i128 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b, c2 = f2.c;
    if (a1 > a2) {
        std::swap(a1, a2);
        std::swap(b1, b2);
        c2 = f1.c;
    }
    i128 s = (b1 + b2) / 2;
    i128 n = b2 - s;
    i128 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    }
    else {
        i128 u, v;
        d = ext_gcd(a2, a1, u, v);
        y1 = u;
    }
    i128 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    }
    else {
        i128 u, v;
        d1 = ext_gcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    i128 v1 = a1 / d1, v2 = a2 / d1;
    i128 r = mod(y1 * y2 * n - x2 * c2, v1);
    i128 b3 = b2 + 2 * v2 * r;
    i128 a3 = v1 * v2;
    i128 c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    BinaryQuadraticForm out{narrow(a3), narrow(b3), narrow(c3)};
    return reduce(out);
}

BinaryQuadraticForm principal_form(Discriminant const & D)
{
    std::int64_t b = floor_mod(D.value(), 2);
    return {1, b, (b * b - D.value()) / 4};
}

BinaryQuadraticForm power(BinaryQuadraticForm const & form, std::int64_t k)
{
    if (k < 0)
        return power(form.inverse(), -k);
    BinaryQuadraticForm result = principal_form(Discriminant(form.discriminant()));
    BinaryQuadraticForm base = reduce(form);
    while (k > 0) {
        if (k & 1)
            result = compose(result, base);
        base = compose(base, base);
        k >>= 1;
    }
    return result;
}

std::vector<BinaryQuadraticForm> reduced_forms(Discriminant const & D)
{
    check_cap(D);
    std::int64_t d = D.value();
    std::int64_t amax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-d) / 3.0)) + 1;
    std::vector<BinaryQuadraticForm> out;
    for (std::int64_t a = 1; a <= amax; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (floor_mod(b - d, 2) != 0)
                continue;
            std::int64_t num = b * b - d;
            if (num % (4 * a) != 0)
                continue;
            std::int64_t c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, b), c) != 1)
                continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::int64_t class_number(Discriminant const & D)
{
    return static_cast<std::int64_t>(reduced_forms(D).size());
}

std::set<BinaryQuadraticForm> square_classes(Discriminant const & D)
{
    std::set<BinaryQuadraticForm> squares;
    for (auto const & f : reduced_forms(D))
        squares.insert(compose(f, f));
    return squares;
}

std::int64_t genus_number(Discriminant const & D)
{
    return class_number(D) / static_cast<std::int64_t>(square_classes(D).size());
}

ClassGroupSummary summarize_class_group(Discriminant const & D)
{
    std::int64_t h = class_number(D);
    std::int64_t sq = static_cast<std::int64_t>(square_classes(D).size());
    return {D.value(), h, h / sq, sq};
}

std::optional<BinaryQuadraticForm> prime_form(Discriminant const & D, std::int64_t q)
{
    check_coprime_conductor(D, q);
    if (kronecker_symbol(D.value(), q) < 0)
        return std::nullopt;
    std::int64_t m = 4 * q;
    for (std::int64_t b = 0; b < 2 * q; ++b) {
        if (floor_mod(b * b - D.value(), m) == 0)
            return reduce(BinaryQuadraticForm::make(q, b, (b * b - D.value()) / m));
    }
    throw std::logic_error("prime_form: no square root of the discriminant found");
}

std::int64_t form_order(Discriminant const & D, BinaryQuadraticForm const & form)
{
    if (form.discriminant() != D.value())
        throw std::invalid_argument("form_order: discriminant mismatch");
    BinaryQuadraticForm identity = principal_form(D);
    BinaryQuadraticForm base = reduce(form);
    BinaryQuadraticForm acc = base;
    std::int64_t k = 1;
    while (!(acc == identity)) {
        acc = compose(acc, base);
        ++k;
    }
    return k;
}

SplittingType splitting_type(Discriminant const & D, std::int64_t q)
{
    check_coprime_conductor(D, q);
    switch (kronecker_symbol(D.fundamental(), q)) {
    case 1:
        return SplittingType::split;
    case 0:
        return SplittingType::ramified;
    default:
        return SplittingType::inert;
    }
}

char const * to_string(SplittingType t)
{
    switch (t) {
    case SplittingType::split:
        return "split";
    case SplittingType::ramified:
        return "ramified";
    case SplittingType::inert:
        return "inert";
    }
    return "?";
}

}  // namespace isocycles
