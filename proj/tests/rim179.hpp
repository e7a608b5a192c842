#pragma once

// Supersingular j-invariants for p = 179 written as a + b*i with i^2 = -1,
// converted to the a + b*s basis used by the library (s^2 = 2).

#include <algorithm>
#include <string>
#include <vector>

#include "isocycles/ff.hpp"

namespace rim179 {

inline isocycles::QuadExtElement sqrt_minus_one(isocycles::PrimeField const & f)
{
    for (std::uint64_t b = 1; b < f.p(); ++b) {
        isocycles::QuadExtElement x(f, 0, b);
        if (x * x == isocycles::QuadExtElement::from_int(f, -1))
            return x;
    }
    return isocycles::QuadExtElement(f);
}

inline isocycles::QuadExtElement gaussian(isocycles::PrimeField const & f, std::int64_t a, std::int64_t b)
{
    return isocycles::QuadExtElement::from_int(f, a) + isocycles::QuadExtElement::from_int(f, b) * sqrt_minus_one(f);
}

struct Named
{
    std::string name;
    isocycles::QuadExtElement value;
};

inline std::vector<Named> names(isocycles::PrimeField const & f)
{
    auto j1 = gaussian(f, 5, 64), j2 = gaussian(f, 107, 99), j3 = gaussian(f, 109, 5);
    std::vector<Named> out{{"j1", j1}, {"j2", j2}, {"j3", j3},
                           {"j1b", j1.conjugate()}, {"j2b", j2.conjugate()}, {"j3b", j3.conjugate()}};
    for (int v : {0, 22, 35, 61, 112, 120, 121, 140, 171})
        out.push_back({std::to_string(v), isocycles::QuadExtElement::from_int(f, v)});
    return out;
}

inline isocycles::QuadExtElement lookup(isocycles::PrimeField const & f, std::string const & name)
{
    for (auto const & n : names(f))
        if (n.name == name)
            return n.value;
    return isocycles::QuadExtElement::from_int(f, std::stoll(name));
}

inline std::vector<isocycles::QuadExtElement> sorted_values(isocycles::PrimeField const & f,
                                                            std::vector<std::string> const & labels)
{
    std::vector<isocycles::QuadExtElement> out;
    for (auto const & l : labels)
        out.push_back(lookup(f, l));
    std::sort(out.begin(), out.end());
    return out;
}

struct Row
{
    long disc;
    int h;
    std::vector<std::vector<std::string>> cycles;
};

inline std::vector<Row> rows()
{
    return {
        {-31, 3, {{"171", "j3", "j3b"}}},
        {-39, 4, {{"61", "j1", "140", "j1b"}}},
        {-47, 5, {{"22", "j2b", "j3b", "j3", "j2"}}},
        {-87, 6, {{"22", "j2b", "j1b", "140", "j1", "j2"}}},
        {-231, 12, {{"140", "j1", "j2", "j3", "171", "120"}, {"140", "j1b", "j2b", "j3b", "171", "120"}}},
        {-247, 6, {{"0", "121", "112", "35", "112", "121"}}},
        {-255, 12, {{"22", "j2", "j3", "171", "j3b", "j2b"}, {"0", "121", "112", "35", "112", "121"}}},
        {-135, 6, {{"61", "j1", "j2", "22", "j2b", "j1b"}}},
    };
}

}  // namespace rim179
