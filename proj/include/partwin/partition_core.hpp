#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "partwin/types.hpp"

namespace partwin {

/// Number of multisets of size q.parts drawn from [1, q.max_part] summing to
/// q.total. Infeasible queries give 0. The query must be unrestricted.
BigInt count_partitions(const PartitionQuery& q);

/// Truncated coefficient array of the product over v in V of
/// (sum over u in U of y^u x^(u*v)). Entry (s, j) is the coefficient of
/// x^s y^j, for 0 <= s <= max_sum and 0 <= j <= max_parts.
class CoeffTable {
public:
    CoeffTable(std::uint64_t max_sum, std::uint64_t max_parts);

    std::uint64_t max_sum() const noexcept { return max_sum_; }
    std::uint64_t max_parts() const noexcept { return max_parts_; }

    const BigInt& at(std::uint64_t sum, std::uint64_t parts) const;
    BigInt& at(std::uint64_t sum, std::uint64_t parts);

private:
    std::uint64_t max_sum_;
    std::uint64_t max_parts_;
    std::vector<BigInt> coeff_; // row-major by sum
};

/// Builds the table factor by factor with truncation at (max_sum, max_parts).
/// Throws InvalidArgument on empty V or U or a zero part value, and
/// ResourceGuardrail when the table would exceed `guardrail` entries.
CoeffTable gf_coefficient_table(const std::set<std::uint64_t>& part_values,
                                const MultiplicitySet& multiplicities,
                                std::uint64_t max_sum, std::uint64_t max_parts,
                                std::uint64_t guardrail = kDefaultGuardrail);

/// The (total, parts) coefficient of the table over V = [1, max_part] with
/// the query's multiplicity set.
BigInt count_partitions_restricted(const PartitionQuery& q,
                                   std::uint64_t guardrail = kDefaultGuardrail);

/// Lexicographically smallest partition for q, or nullopt when infeasible.
std::optional<Partition> first_partition(const PartitionQuery& q);

/// Lexicographically next partition after p, or nullopt if p is the last.
/// Throws InvalidArgument when p is not a canonical partition for q.
std::optional<Partition> partition_successor(const Partition& p, const PartitionQuery& q);

/// Cursor over every partition of q in strictly increasing lexicographic
/// order. One consumer per instance.
class PartitionEnumerator {
public:
    explicit PartitionEnumerator(PartitionQuery q);

    std::optional<Partition> next();

private:
    PartitionQuery query_;
    std::optional<Partition> current_;
    bool started_ = false;
};

/// Materializes the enumeration. Convenience for small queries.
std::vector<Partition> enumerate_partitions(const PartitionQuery& q);

} // namespace partwin
