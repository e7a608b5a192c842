#pragma once

#include <limits>

#include <gmpxx.h>
#include <json.hpp>

namespace isocycles {

// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
inline nlohmann::json integer_json(mpz_class const & z)
{
    if (z >= 0 && mpz_fits_ulong_p(z.get_mpz_t()))
        return static_cast<std::uint64_t>(z.get_ui());
    if (mpz_fits_slong_p(z.get_mpz_t()))
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

}  // namespace isocycles
