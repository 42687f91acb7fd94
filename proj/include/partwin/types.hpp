#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace partwin {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using MultiplicitySet = std::set<std::uint64_t>;

// Partitions of `total` into exactly `parts` parts, each in [1, max_part].
// An empty `multiplicities` means every value may be used any number of
// times; otherwise the usage count of each value in [1, max_part] must lie
// in the set (so 0 absent forces every value to appear).
struct PartitionQuery {
    std::uint64_t total = 0;
    std::uint64_t parts = 0;
    std::uint64_t max_part = 1;
    std::optional<MultiplicitySet> multiplicities;

    bool restricted() const noexcept { return multiplicities.has_value(); }

    // Throws InvalidArgument when max_part is 0 or an explicit
    // multiplicity set is empty.
    void validate() const;
};

// Canonical (non-decreasing) part sequence.
struct Partition {
    std::vector<std::uint64_t> parts;

    std::uint64_t sum() const noexcept;
    std::string to_string() const; // space-separated

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

inline constexpr std::uint64_t kDefaultGuardrail = 100'000'000;

std::string to_decimal(const BigInt& value);

} // namespace partwin
