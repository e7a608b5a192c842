#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "isocycles/ff.hpp"

namespace isocycles {

struct ModpolyError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/*
 * Classical modular polynomial Phi_l(X, Y), symmetric, monic of degree l+1
 * in each variable. Only the coefficients c_{i,j} with i >= j are stored.
 * Coefficients stay over Z; reduction mod p happens at instantiation.
 */
class ModularPolynomial
{
  public:
    using Exponents = std::pair<int, int>;
    using CoefficientMap = std::map<Exponents, mpz_class, std::greater<Exponents>>;

  private:
    int level_ = 0;
    CoefficientMap coeffs_;

    void validate() const;

  public:
    ModularPolynomial(int level, CoefficientMap coeffs);

    // Strict parser for the text format (header "ell=<l>", then "<i> <j> <c>" lines).
    static ModularPolynomial parse(std::string_view text);
    std::string serialize() const;

    int level() const { return level_; }
    mpz_class coefficient(int i, int j) const;
    CoefficientMap const & stored_coefficients() const { return coeffs_; }
};

// Embedded data: levels 2 and 3.
ModularPolynomial load_modular_polynomial(int level);
// From a file in the text format; the header level must equal `level`.
ModularPolynomial load_modular_polynomial(int level, std::filesystem::path const & file);
// `<dir>/phi_<level>.txt` when present, else embedded data, else ModpolyError.
ModularPolynomial find_modular_polynomial(int level, std::optional<std::filesystem::path> const & dir);

std::vector<int> embedded_modular_polynomial_levels();

/* Phi_l with coefficients reduced mod p, ready for repeated instantiation. */
class ReducedModularPolynomial
{
    PrimeField field_;
    int level_;
    std::vector<std::uint64_t> table_;  // (l+2) x (l+2), row i = power of X

  public:
    ReducedModularPolynomial(ModularPolynomial const & phi, PrimeField const & field);

    int level() const { return level_; }
    PrimeField const & field() const { return field_; }
    std::uint64_t coefficient(int i, int j) const { return table_[i * (level_ + 2) + j]; }

    // Phi_l(X, j) as a polynomial in X.
    PolyOverFp2 instantiate(QuadExtElement const & j) const;
    // Phi_l(X, X).
    PolyOverFp2 diagonal() const;
};

PolyOverFp2 instantiate(ModularPolynomial const & phi, QuadExtElement const & j, PrimeField const & field);

}  // namespace isocycles
