#include "isocycles/hilbert.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace isocycles {

namespace {

constexpr std::int64_t max_hilbert_discriminant = 100'000;
constexpr unsigned max_internal_precision = 1u << 17;

unsigned to_digits10(unsigned bits)
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

class PrecisionScope
{
    unsigned saved_;

  public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision())
    {
        Real::default_precision(to_digits10(bits));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(PrecisionScope const &) = delete;
    PrecisionScope & operator=(PrecisionScope const &) = delete;
};

Real pi_value()
{
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Complex operator+(Complex const & x, Complex const & y) { return {x.re + y.re, x.im + y.im}; }
Complex operator-(Complex const & x, Complex const & y) { return {x.re - y.re, x.im - y.im}; }
Complex operator*(Complex const & x, Complex const & y)
{
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
Complex operator/(Complex const & x, Complex const & y)
{
    Real n = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
}

Complex j_unchecked(Complex const & tau, unsigned bits)
{
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;

    unsigned work = bits + 32;
    PrecisionScope scope(work);
    Real y(tau.im), x(tau.re);
    Real pi = pi_value();
    Real radius = exp(-2 * pi * y);
    Complex q{radius * cos(2 * pi * x), radius * sin(2 * pi * x)};

    double log2_radius = -2 * M_PI * static_cast<double>(y) / M_LN2;
    std::size_t terms = static_cast<std::size_t>(std::ceil((work + 16) / -log2_radius)) + 2;
    if (terms > 2'000'000)
        throw std::invalid_argument("j_evaluate: Im(tau) too small for the q-expansion");

    // E4 = 1 + 240 sum sigma_3(n) q^n, by Horner from the top.
    std::vector<std::uint64_t> sigma3(terms + 1, 0);
    for (std::size_t d = 1; d <= terms; ++d) {
        std::uint64_t d3 = static_cast<std::uint64_t>(d) * d * d;
        for (std::size_t m = d; m <= terms; m += d)
            sigma3[m] += d3;
    }
    Complex acc{Real(0), Real(0)};
    for (std::size_t n = terms; n >= 1; --n) {
        acc.re += Real(sigma3[n]);
        acc = acc * q;
    }
    Complex e4{1 + 240 * acc.re, 240 * acc.im};

    // prod (1 - q^n) via the pentagonal number series.
    Complex eta{Real(1), Real(0)};
    Complex qk{Real(1), Real(0)};                 // q^k
    Complex pent_minus{Real(1), Real(0)};         // q^{k(3k-1)/2}
    Complex step = q;                             // q^{3k+1} for k = 0
    Complex q3 = q * q * q;
    for (std::size_t k = 1;; ++k) {
        pent_minus = pent_minus * step;
        step = step * q3;
        qk = qk * q;
        Complex pent_plus = pent_minus * qk;
        Complex term = pent_minus + pent_plus;
        if (k % 2)
            eta = eta - term;
        else
            eta = eta + term;
        if (static_cast<double>(k) * (3.0 * k - 1) / 2 > static_cast<double>(terms))
            break;
    }
    Complex eta2 = eta * eta;
    Complex eta4 = eta2 * eta2;
    Complex eta8 = eta4 * eta4;
    Complex eta24 = eta8 * eta8 * eta8;
    Complex delta = q * eta24;
    Complex j = e4 * e4 * e4 / delta;
    return j;
}

std::vector<Complex> poly_from_roots(std::vector<Complex> const & roots)
{
    std::vector<Complex> c{{Real(1), Real(0)}};
    for (auto const & r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex{Real(0), Real(0)});
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] = next[i + 1] + c[i];
            next[i] = next[i] - c[i] * r;
        }
        c = std::move(next);
    }
    return c;
}

std::optional<ClassPolynomial> try_hilbert(Discriminant const & D, unsigned bits)
{
    auto forms = reduced_forms(D);
    PrecisionScope scope(bits);
    Real sqrt_abs = boost::multiprecision::sqrt(Real(-D.value()));
    std::vector<Complex> roots;
    roots.reserve(forms.size());
    for (auto const & f : forms) {
        Complex tau{Real(-f.b) / (2 * f.a), sqrt_abs / (2 * f.a)};
        roots.push_back(j_unchecked(tau, bits));
    }
    PrecisionScope inner(bits);
    auto coeffs = poly_from_roots(roots);
    ClassPolynomial out{D.value(), {}, bits};
    out.coefficients.reserve(coeffs.size());
    Real quarter = Real(1) / 4;
    for (auto const & c : coeffs) {
        Real rounded = boost::multiprecision::round(c.re);
        if (boost::multiprecision::abs(c.re - rounded) >= quarter || boost::multiprecision::abs(c.im) >= quarter)
            return std::nullopt;
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), rounded.backend().data(), MPFR_RNDN);
        out.coefficients.push_back(z);
    }
    return out;
}

std::mutex cache_mutex;
std::map<std::int64_t, ClassPolynomial> cache;

}  // namespace

Complex j_evaluate(Complex const & tau, unsigned precision_bits)
{
    if (precision_bits == 0 || precision_bits > max_j_precision)
        throw std::invalid_argument("j_evaluate: precision must be in [1, 8192] bits");
    if (tau.im <= 0)
        throw std::invalid_argument("j_evaluate: Im(tau) must be positive");
    Complex j = j_unchecked(tau, precision_bits);
    PrecisionScope scope(precision_bits);
    return {Real(j.re), Real(j.im)};
}

std::complex<double> j_evaluate(std::complex<double> tau, unsigned precision_bits)
{
    PrecisionScope scope(precision_bits);
    Complex j = j_evaluate(Complex{Real(tau.real()), Real(tau.imag())}, precision_bits);
    return {static_cast<double>(j.re), static_cast<double>(j.im)};
}

std::string ClassPolynomial::to_text() const
{
    std::ostringstream os;
    os << discriminant << ':';
    for (auto const & c : coefficients)
        os << ' ' << c.get_str();
    return os.str();
}

unsigned hilbert_precision_bits(Discriminant const & D)
{
    double inv_sum = 0;
    for (auto const & f : reduced_forms(D))
        inv_sum += 1.0 / static_cast<double>(f.a);
    return static_cast<unsigned>(std::ceil(M_PI * std::sqrt(static_cast<double>(-D.value())) * inv_sum / M_LN2)) + 64;
}

ClassPolynomial hilbert_class_poly(Discriminant const & D, unsigned precision_bits)
{
    if (-D.value() > max_hilbert_discriminant)
        throw std::invalid_argument("hilbert_class_poly: |D| must be at most 1e5");
    unsigned bits = precision_bits;
    for (int attempt = 0; attempt <= 3; ++attempt, bits *= 2) {
        if (bits > max_internal_precision)
            break;
        if (auto poly = try_hilbert(D, bits))
            return *poly;
    }
    throw HilbertPrecisionError("hilbert_class_poly(" + std::to_string(D.value()) +
                                "): insufficient precision after 3 retries");
}

ClassPolynomial hilbert_class_poly(Discriminant const & D)
{
    {
        std::lock_guard lock(cache_mutex);
        auto it = cache.find(D.value());
        if (it != cache.end())
            return it->second;
    }
    ClassPolynomial poly = hilbert_class_poly(D, hilbert_precision_bits(D));
    std::lock_guard lock(cache_mutex);
    cache.emplace(D.value(), poly);
    return poly;
}

PolyOverFp2 hilbert_mod_p(Discriminant const & D, PrimeField const & field)
{
    ClassPolynomial H = hilbert_class_poly(D);
    mpz_class p(static_cast<unsigned long>(field.p()));
    std::vector<QuadExtElement> coeffs;
    coeffs.reserve(H.coefficients.size());
    for (auto const & c : H.coefficients) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        coeffs.emplace_back(field, r.get_ui());
    }
    return PolyOverFp2(field, std::move(coeffs));
}

}  // namespace isocycles
