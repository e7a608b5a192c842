#include "isocycles/ordercount.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "isocycles/arith.hpp"

namespace isocycles {

namespace {

constexpr double euler_gamma = 0.5772156649;

void check_inputs(int N, std::uint64_t p, std::int64_t ell)
{
    if (N < 1 || N > max_order_length)
        throw std::invalid_argument("N must lie in [1, 40]");
    if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell)))
        throw std::invalid_argument("ell must be prime");
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("p must be a prime at least 5");
    if (static_cast<std::uint64_t>(ell) == p)
        throw std::invalid_argument("ell must differ from p");
}

// 4 ell^N, within the class group cap.
std::int64_t four_ell_power(int N, std::int64_t ell)
{
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(N));
    v *= 4;
    if (v > max_class_number_discriminant)
        throw std::invalid_argument("4 ell^N = " + v.get_str() + " exceeds the discriminant cap 1e8");
    return v.get_si();
}

int p_valuation(std::int64_t v, std::int64_t p)
{
    int k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

OrderRecord make_record(int N, std::int64_t x, std::int64_t f, Discriminant const & D, std::uint64_t p,
                        std::int64_t ell)
{
    auto summary = summarize_class_group(D);
    auto above = prime_form(D, ell);
    if (!above)
        throw std::logic_error("ell is inert in an order from the Q_N sum");
    std::int64_t order = form_order(D, *above);
    return {N, x, f, D.value(), summary.h, summary.g, epsilon(D, ell, order, p), order};
}

}  // namespace

EpsilonValue epsilon(Discriminant const & D, std::int64_t ell, std::int64_t r, std::uint64_t p)
{
    std::int64_t sp = static_cast<std::int64_t>(p);
    if (D.conductor() % sp == 0)
        throw std::invalid_argument("epsilon: p divides the conductor");
    int k = kronecker_symbol(D.fundamental(), sp);
    if (k == 1)
        throw std::invalid_argument("epsilon: p splits in the field of discriminant " + std::to_string(D.value()));
    if (k == -1)
        return {false, 2};
    if (r % 2 == 1)
        return {false, 1};
    auto sigma = prime_form(D, ell);
    if (!sigma)
        throw std::invalid_argument("epsilon: ell is inert");
    if (square_classes(D).count(*sigma))
        return {false, 1};
    auto s = summarize_class_group(D);
    mpq_class value = 1 + mpq_class(r * s.g, 2 * s.h);
    value.canonicalize();
    return {s.g != 2, value};
}

std::vector<std::int64_t> q_set(int N, std::uint64_t p, std::int64_t ell)
{
    check_inputs(N, p, ell);
    std::int64_t m = four_ell_power(N, ell);
    std::int64_t sp = static_cast<std::int64_t>(p);
    std::vector<std::int64_t> out;
    for (std::int64_t x = 1; x * x < m; ++x) {
        if (x % ell == 0)
            continue;
        std::int64_t d = x * x - m;
        if (kronecker_symbol(d, sp) == 1 || p_valuation(d, sp) > 1)
            continue;
        out.push_back(x);
    }
    return out;
}

std::vector<OrderRecord> q_n_terms(int N, std::uint64_t p, std::int64_t ell)
{
    std::int64_t m = four_ell_power(N, ell);
    std::vector<OrderRecord> out;
    for (std::int64_t x : q_set(N, p, ell)) {
        std::int64_t d = x * x - m;
        std::int64_t top = square_part_root(d);
        for (std::int64_t f : divisors(top)) {
            std::int64_t disc = d / (f * f);
            if (!is_discriminant(disc))
                continue;
            out.push_back(make_record(N, x, f, Discriminant(disc), p, ell));
        }
    }
    return out;
}

CountRange q_n(int N, std::uint64_t p, std::int64_t ell)
{
    CountRange sum;
    for (auto const & rec : q_n_terms(N, p, ell)) {
        sum.low += rec.eps.low() * rec.h;
        sum.high += rec.eps.high() * rec.h;
    }
    return sum;
}

CountRange order_side_cycle_count(int N, std::uint64_t p, std::int64_t ell)
{
    check_inputs(N, p, ell);
    CountRange total;
    for (std::int64_t r : divisors(N)) {
        int mu = mobius(r);
        if (mu == 0)
            continue;
        CountRange q = q_n(static_cast<int>(N / r), p, ell);
        if (mu > 0) {
            total.low += q.low;
            total.high += q.high;
        }
        else {
            total.low -= q.high;
            total.high -= q.low;
        }
    }
    total.low /= N;
    total.high /= N;
    if (total.exact() && total.low.get_den() != 1)
        throw std::logic_error("order_side_cycle_count: Moebius sum at N = " + std::to_string(N) +
                               " is not divisible by N");
    return total;
}

std::vector<OrderRecord> enumerate_orders(int r, std::uint64_t p, std::int64_t ell)
{
    std::vector<OrderRecord> out;
    std::set<std::int64_t> seen;
    for (auto const & rec : q_n_terms(r, p, ell)) {
        if (rec.l_order != r || !seen.insert(rec.discriminant).second)
            continue;
        out.push_back(rec);
    }
    return out;
}

double bound_B(double N, std::int64_t ell)
{
    double l = static_cast<double>(ell);
    return (2.0 / 3.0) * (std::exp(euler_gamma) * std::log(std::log(2.0 * std::pow(l, N / 2))) + 7.0 / 3.0) *
           std::log(4.0 * std::pow(l, N)) * (M_PI * std::pow(l, N) + 2.0 * std::pow(l, 3.0 * N / 4));
}

CycleBound bound_b(int N, std::int64_t ell)
{
    if (N < 3)
        throw std::invalid_argument("bound_b: N must be at least 3");
    double n = N;
    double bn = bound_B(n, ell);
    double c = bn / n + (std::exp(euler_gamma) * std::log(std::log(n)) + 7.0 / 3.0 - 1.0 / n) * bound_B(n / 2, ell);
    return {bn, c};
}

std::string orders_csv(std::vector<OrderRecord> const & records)
{
    std::ostringstream os;
    os << "r,x,f,discriminant,h,g,eps_num,eps_den,ambiguous_flag\n";
    for (auto const & rec : records)
        os << rec.N << ',' << rec.x << ',' << rec.f << ',' << rec.discriminant << ',' << rec.h << ',' << rec.g << ','
           << rec.eps.value.get_num().get_str() << ',' << rec.eps.value.get_den().get_str() << ','
           << (rec.eps.ambiguous ? 1 : 0) << '\n';
    return os.str();
}

nlohmann::json rational_json(mpq_class const & q)
{
    if (q.get_den() == 1 && mpz_fits_slong_p(q.get_num_mpz_t()))
        return q.get_num().get_si();
    return q.get_str();
}

nlohmann::json to_json(OrderRecord const & rec)
{
    nlohmann::json eps = {{"value", rational_json(rec.eps.value)}, {"ambiguous", rec.eps.ambiguous}};
    if (rec.eps.ambiguous)
        eps["interval"] = {1, rational_json(rec.eps.value)};
    return {{"r", rec.N},   {"x", rec.x}, {"f", rec.f},     {"discriminant", rec.discriminant},
            {"h", rec.h},   {"g", rec.g}, {"epsilon", eps}, {"l_order", rec.l_order}};
}

nlohmann::json to_json(CountRange const & range)
{
    if (range.exact())
        return rational_json(range.low);
    return {{"low", rational_json(range.low)}, {"high", rational_json(range.high)}};
}

}  // namespace isocycles
