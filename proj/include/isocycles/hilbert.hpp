#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include "isocycles/ff.hpp"
#include "isocycles/quadform.hpp"

namespace isocycles {

using Real = boost::multiprecision::mpfr_float;

struct Complex
{
    Real re, im;
};

constexpr unsigned max_j_precision = 8192;

struct HilbertPrecisionError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// j(tau) by the q-expansion E4^3 / Delta. Requires Im(tau) > 0 and bits <= max_j_precision.
Complex j_evaluate(Complex const & tau, unsigned precision_bits);
std::complex<double> j_evaluate(std::complex<double> tau, unsigned precision_bits = 128);

struct ClassPolynomial
{
    std::int64_t discriminant;
    std::vector<mpz_class> coefficients;  // lowest degree first, monic
    unsigned precision_bits;              // precision that passed the rounding check

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    // "D: c_0 c_1 ... c_h"
    std::string to_text() const;
};

unsigned hilbert_precision_bits(Discriminant const & D);

// |D| <= 1e5. Precision defaults to hilbert_precision_bits(D) and doubles up to three times.
ClassPolynomial hilbert_class_poly(Discriminant const & D);
ClassPolynomial hilbert_class_poly(Discriminant const & D, unsigned precision_bits);

// Coefficientwise reduction, embedded in F_{p^2}[X].
PolyOverFp2 hilbert_mod_p(Discriminant const & D, PrimeField const & field);

class IsogenyGraph;

struct RimCycle
{
    std::vector<std::size_t> vertices;  // graph vertex indices in walk order
};

struct RimLocationError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/*
 * Splits the roots of H_D mod p into closed walks of length equal to the
 * order of the class above ell. Each cycle starts at its least vertex and
 * takes the lexicographically least direction.
 */
std::vector<RimCycle> locate_rim_vertices(Discriminant const & D, IsogenyGraph const & graph);

}  // namespace isocycles
