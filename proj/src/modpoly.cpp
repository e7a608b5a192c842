#include "isocycles/modpoly.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace isocycles {

namespace {

constexpr char phi2_text[] =
    "ell=2\n"
    "3 0 1\n"
    "2 2 -1\n"
    "2 1 1488\n"
    "2 0 -162000\n"
    "1 1 40773375\n"
    "1 0 8748000000\n"
    "0 0 -157464000000000\n";

constexpr char phi3_text[] =
    "ell=3\n"
    "4 0 1\n"
    "3 3 -1\n"
    "3 2 2232\n"
    "3 1 -1069956\n"
    "3 0 36864000\n"
    "2 2 2587918086\n"
    "2 1 8900222976000\n"
    "2 0 452984832000000\n"
    "1 1 -770845966336000000\n"
    "1 0 1855425871872000000000\n";

bool parse_small_int(std::string_view s, int & out)
{
    if (s.empty() || (s.size() > 1 && s[0] == '0'))
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_decimal_integer(std::string_view s)
{
    if (!s.empty() && s[0] == '-')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    if (s.size() > 1 && s[0] == '0')
        return false;
    for (char ch : s)
        if (ch < '0' || ch > '9')
            return false;
    return true;
}

[[noreturn]] void malformed(int line, std::string const & what)
{
    throw ModpolyError("malformed modular polynomial (line " + std::to_string(line) + "): " + what);
}

}  // namespace

ModularPolynomial::ModularPolynomial(int level, CoefficientMap coeffs)
    : level_(level), coeffs_(std::move(coeffs))
{
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
    validate();
}

void ModularPolynomial::validate() const
{
    if (level_ < 2 || !is_prime(static_cast<std::uint64_t>(level_)))
        throw ModpolyError("modular polynomial level must be prime, got " + std::to_string(level_));
    int deg = level_ + 1;
    int max_i = -1;
    for (auto const & [e, c] : coeffs_) {
        if (e.first < e.second || e.second < 0)
            throw ModpolyError("modular polynomial: stored exponents must satisfy i >= j >= 0");
        max_i = std::max(max_i, e.first);
    }
    if (max_i != deg)
        throw ModpolyError("degree mismatch: expected degree " + std::to_string(deg) + " in each variable, found " +
                           std::to_string(max_i));
    if (coefficient(deg, 0) != 1)
        throw ModpolyError("non-monic: coefficient of X^" + std::to_string(deg) + " must be 1");
    for (int j = 1; j <= deg; ++j) {
        if (coefficient(deg, j) != 0)
            throw ModpolyError("non-monic: X^" + std::to_string(deg) + " Y^" + std::to_string(j) + " must vanish");
    }
}

mpz_class ModularPolynomial::coefficient(int i, int j) const
{
    if (i < j)
        std::swap(i, j);
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? mpz_class(0) : it->second;
}

ModularPolynomial ModularPolynomial::parse(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty() || lines[0].substr(0, 4) != "ell=")
        malformed(1, "expected header 'ell=<l>'");
    int level = 0;
    if (!parse_small_int(lines[0].substr(4), level))
        malformed(1, "bad level in header");

    CoefficientMap coeffs;
    std::optional<Exponents> previous;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        int lineno = int(k) + 1;
        std::string_view line = lines[k];
        std::size_t s1 = line.find(' ');
        std::size_t s2 = s1 == std::string_view::npos ? s1 : line.find(' ', s1 + 1);
        if (s2 == std::string_view::npos)
            malformed(lineno, "expected '<i> <j> <c>'");
        int i = 0, j = 0;
        if (!parse_small_int(line.substr(0, s1), i) || !parse_small_int(line.substr(s1 + 1, s2 - s1 - 1), j))
            malformed(lineno, "bad exponent");
        std::string_view c = line.substr(s2 + 1);
        if (!is_decimal_integer(c))
            malformed(lineno, "bad coefficient");
        if (i < j)
            malformed(lineno, "exponents must satisfy i >= j");
        Exponents e{i, j};
        if (previous && !(e < *previous))
            malformed(lineno, "lines must be sorted by (i, j) descending without repeats");
        previous = e;
        coeffs.emplace(e, mpz_class(std::string(c)));
    }
    return ModularPolynomial(level, std::move(coeffs));
}

std::string ModularPolynomial::serialize() const
{
    std::ostringstream os;
    os << "ell=" << level_ << '\n';
    for (auto const & [e, c] : coeffs_)
        os << e.first << ' ' << e.second << ' ' << c.get_str() << '\n';
    return os.str();
}

std::vector<int> embedded_modular_polynomial_levels()
{
    return {2, 3};
}

ModularPolynomial load_modular_polynomial(int level)
{
    switch (level) {
    case 2:
        return ModularPolynomial::parse(phi2_text);
    case 3:
        return ModularPolynomial::parse(phi3_text);
    default:
        throw ModpolyError("no embedded modular polynomial of level " + std::to_string(level) +
                           "; supply one with --modpoly-dir");
    }
}

ModularPolynomial load_modular_polynomial(int level, std::filesystem::path const & file)
{
    if (level > 13)
        throw ModpolyError("modular polynomial levels above 13 are not supported");
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw ModpolyError("cannot open modular polynomial file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ModularPolynomial phi = ModularPolynomial::parse(buf.str());
    if (phi.level() != level)
        throw ModpolyError("file " + file.string() + " holds level " + std::to_string(phi.level()) + ", expected " +
                           std::to_string(level));
    return phi;
}

ModularPolynomial find_modular_polynomial(int level, std::optional<std::filesystem::path> const & dir)
{
    if (dir) {
        auto file = *dir / ("phi_" + std::to_string(level) + ".txt");
        if (std::filesystem::exists(file))
            return load_modular_polynomial(level, file);
    }
    return load_modular_polynomial(level);
}

ReducedModularPolynomial::ReducedModularPolynomial(ModularPolynomial const & phi, PrimeField const & field)
    : field_(field), level_(phi.level())
{
    if (static_cast<std::uint64_t>(level_) >= field.p())
        throw ModpolyError("instantiate: level " + std::to_string(level_) + " must be below p = " +
                           std::to_string(field.p()));
    int n = level_ + 2;
    table_.assign(n * n, 0);
    mpz_class p(static_cast<unsigned long>(field.p()));
    for (auto const & [e, c] : phi.stored_coefficients()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        std::uint64_t v = r.get_ui();
        table_[e.first * n + e.second] = v;
        table_[e.second * n + e.first] = v;
    }
}

PolyOverFp2 ReducedModularPolynomial::instantiate(QuadExtElement const & j) const
{
    if (!(j.field() == field_))
        throw std::invalid_argument("instantiate: j-invariant from a different field");
    int n = level_ + 2;
    std::vector<QuadExtElement> jpow;
    jpow.reserve(n);
    jpow.emplace_back(field_, 1, 0);
    for (int k = 1; k < n; ++k)
        jpow.push_back(jpow.back() * j);
    std::vector<QuadExtElement> coeffs;
    coeffs.reserve(n);
    for (int i = 0; i < n; ++i) {
        QuadExtElement acc(field_);
        for (int k = 0; k < n; ++k) {
            std::uint64_t c = table_[i * n + k];
            if (c)
                acc += QuadExtElement(field_, c) * jpow[k];
        }
        coeffs.push_back(acc);
    }
    return PolyOverFp2(field_, std::move(coeffs));
}

PolyOverFp2 ReducedModularPolynomial::diagonal() const
{
    int n = level_ + 2;
    std::vector<QuadExtElement> coeffs(2 * n - 1, QuadExtElement(field_));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            coeffs[i + k] += QuadExtElement(field_, table_[i * n + k]);
    return PolyOverFp2(field_, std::move(coeffs));
}

PolyOverFp2 instantiate(ModularPolynomial const & phi, QuadExtElement const & j, PrimeField const & field)
{
    return ReducedModularPolynomial(phi, field).instantiate(j);
}

}  // namespace isocycles
