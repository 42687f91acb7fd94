#pragma once

// Naive reference implementations. Nothing here may call into the
// optimized partition or request-model code; tests compare the two.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "partwin/types.hpp"

namespace partwin::oracle {

inline constexpr std::uint64_t kMaxTotal = 40;
inline constexpr std::uint64_t kMaxParts = 10;
inline constexpr std::uint64_t kMaxPart = 15;
inline constexpr std::uint64_t kMaxTuples = 100'000'000;
inline constexpr std::size_t kMaxScanLength = 10'000;

/// True when q lies within the brute-force caps.
bool within_caps(const PartitionQuery& q) noexcept;

/// Exhaustive count over non-decreasing tuples. Throws InvalidArgument when
/// q exceeds the caps.
std::uint64_t brute_count_partitions(const PartitionQuery& q);

/// Full Cartesian enumeration of [1, max_index]^window. Throws
/// InvalidArgument when max_index^window exceeds kMaxTuples.
std::uint64_t brute_composition_count(std::uint64_t total, std::uint64_t window,
                                      std::uint64_t max_index);

/// Tries every (start, length) in order and returns the first whose sum
/// equals target.
std::optional<std::pair<std::size_t, std::size_t>>
brute_window_scan(std::span<const std::uint64_t> values, std::uint64_t target);

} // namespace partwin::oracle
