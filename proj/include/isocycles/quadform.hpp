#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace isocycles {

constexpr std::int64_t max_class_number_discriminant = 100'000'000;

/* Negative discriminant D = f^2 * D_K with D_K fundamental. */
class Discriminant
{
    std::int64_t value_ = 0;
    std::int64_t fundamental_ = 0;
    std::int64_t conductor_ = 0;

  public:
    explicit Discriminant(std::int64_t value);

    std::int64_t value() const { return value_; }
    std::int64_t fundamental() const { return fundamental_; }
    std::int64_t conductor() const { return conductor_; }

    bool operator==(Discriminant const & o) const { return value_ == o.value_; }
};

bool is_discriminant(std::int64_t value);

struct BinaryQuadraticForm
{
    std::int64_t a = 1, b = 1, c = 1;

    // Throws std::invalid_argument unless positive definite and primitive.
    static BinaryQuadraticForm make(std::int64_t a, std::int64_t b, std::int64_t c);

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    BinaryQuadraticForm inverse() const { return {a, -b, c}; }
    std::string to_string() const;

    bool operator==(BinaryQuadraticForm const &) const = default;
    auto operator<=>(BinaryQuadraticForm const &) const = default;
};

BinaryQuadraticForm reduce(BinaryQuadraticForm const & form);
BinaryQuadraticForm compose(BinaryQuadraticForm const & f1, BinaryQuadraticForm const & f2);
BinaryQuadraticForm principal_form(Discriminant const & D);
BinaryQuadraticForm power(BinaryQuadraticForm const & form, std::int64_t k);

// All primitive reduced forms, sorted.
std::vector<BinaryQuadraticForm> reduced_forms(Discriminant const & D);
std::int64_t class_number(Discriminant const & D);
// The subgroup of squares, as reduced forms.
std::set<BinaryQuadraticForm> square_classes(Discriminant const & D);
std::int64_t genus_number(Discriminant const & D);

struct ClassGroupSummary
{
    std::int64_t discriminant;
    std::int64_t h;
    std::int64_t g;
    std::int64_t square_subgroup_size;
};

ClassGroupSummary summarize_class_group(Discriminant const & D);

// Reduced class of a prime form above q, or nullopt when q is inert.
std::optional<BinaryQuadraticForm> prime_form(Discriminant const & D, std::int64_t q);
std::int64_t form_order(Discriminant const & D, BinaryQuadraticForm const & form);

enum class SplittingType { split, ramified, inert };

SplittingType splitting_type(Discriminant const & D, std::int64_t q);
char const * to_string(SplittingType t);

}  // namespace isocycles
