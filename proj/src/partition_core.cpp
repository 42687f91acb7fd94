#include "partwin/partition_core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "partwin/errors.hpp"

namespace partwin {

namespace {

using Wide = unsigned __int128;

bool feasible(std::uint64_t total, std::uint64_t parts, std::uint64_t max_part) {
    if (parts == 0) return total == 0;
    return total >= parts && static_cast<Wide>(total) <= static_cast<Wide>(parts) * max_part;
}

// Lexicographically smallest non-decreasing fill of `length` slots with
// values in [lo, max_part] summing to `remaining`. Caller guarantees
// length * lo <= remaining <= length * max_part.
void append_min_fill(std::vector<std::uint64_t>& out, std::uint64_t lo, std::uint64_t length,
                     std::uint64_t remaining, std::uint64_t max_part) {
    std::uint64_t prev = lo;
    for (std::uint64_t left = length; left > 0; --left) {
        const Wide tail_cap = static_cast<Wide>(left - 1) * max_part;
        std::uint64_t v = prev;
        if (static_cast<Wide>(remaining) > tail_cap + v) {
            v = static_cast<std::uint64_t>(remaining - tail_cap);
        }
        out.push_back(v);
        remaining -= v;
        prev = v;
    }
}

bool multiplicities_allowed(const Partition& p, const PartitionQuery& q) {
    const auto& allowed = *q.multiplicities;
    std::map<std::uint64_t, std::uint64_t> used;
    for (auto v : p.parts) ++used[v];
    if (!allowed.contains(0) && used.size() != q.max_part) return false;
    return std::all_of(used.begin(), used.end(),
                       [&](const auto& kv) { return allowed.contains(kv.second); });
}

void check_canonical(const Partition& p, const PartitionQuery& q) {
    if (p.parts.size() != q.parts) {
        throw InvalidArgument("partition has " + std::to_string(p.parts.size()) +
                              " parts, query expects " + std::to_string(q.parts));
    }
    Wide sum = 0;
    std::uint64_t prev = 1;
    for (auto v : p.parts) {
        if (v < prev || v > q.max_part) {
            throw InvalidArgument("partition " + p.to_string() +
                                  " is not non-decreasing within [1, max_part]");
        }
        prev = v;
        sum += v;
    }
    if (sum != q.total) {
        throw InvalidArgument("partition " + p.to_string() + " does not sum to " +
                              std::to_string(q.total));
    }
}

} // namespace

BigInt count_partitions(const PartitionQuery& q) {
    q.validate();
    if (q.restricted()) {
        throw InvalidArgument("count_partitions takes an unrestricted query");
    }
    if (!feasible(q.total, q.parts, q.max_part)) return 0;
    if (q.parts == 0) return 1;

    // ways[s][j]: partitions of s into j parts, all parts <= m, after
    // processing largest-part layer m. Adding layer m applies
    //   count(s, j, m) = count(s - m, j - 1, m) + count(s, j, m - 1).
    const std::uint64_t total = q.total;
    const std::uint64_t k = q.parts;
    const std::uint64_t top = std::min(q.max_part, total - k + 1);
    const std::size_t width = k + 1;
    std::vector<BigInt> ways((total + 1) * width);
    ways[0] = 1;
    for (std::uint64_t m = 1; m <= top; ++m) {
        for (std::uint64_t s = m; s <= total; ++s) {
            for (std::uint64_t j = 1; j <= k; ++j) {
                const auto& from = ways[(s - m) * width + (j - 1)];
                if (!from.is_zero()) ways[s * width + j] += from;
            }
        }
    }
    return ways[total * width + k];
}

CoeffTable::CoeffTable(std::uint64_t max_sum, std::uint64_t max_parts)
    : max_sum_(max_sum), max_parts_(max_parts), coeff_((max_sum + 1) * (max_parts + 1)) {}

const BigInt& CoeffTable::at(std::uint64_t sum, std::uint64_t parts) const {
    if (sum > max_sum_ || parts > max_parts_) {
        throw InvalidArgument("coefficient (" + std::to_string(sum) + ", " +
                              std::to_string(parts) + ") outside table");
    }
    return coeff_[sum * (max_parts_ + 1) + parts];
}

BigInt& CoeffTable::at(std::uint64_t sum, std::uint64_t parts) {
    return const_cast<BigInt&>(std::as_const(*this).at(sum, parts));
}

CoeffTable gf_coefficient_table(const std::set<std::uint64_t>& part_values,
                                const MultiplicitySet& multiplicities,
                                std::uint64_t max_sum, std::uint64_t max_parts,
                                std::uint64_t guardrail) {
    if (part_values.empty()) throw InvalidArgument("part value set V is empty");
    if (multiplicities.empty()) throw InvalidArgument("multiplicity set U is empty");
    if (part_values.contains(0)) throw InvalidArgument("part values must be positive");
    const Wide entries = (static_cast<Wide>(max_sum) + 1) * (static_cast<Wide>(max_parts) + 1);
    if (entries > guardrail) {
        throw ResourceGuardrail("coefficient table of " + std::to_string(max_sum + 1) + "x" +
                                std::to_string(max_parts + 1) + " entries exceeds guardrail " +
                                std::to_string(guardrail));
    }

    CoeffTable acc(max_sum, max_parts);
    acc.at(0, 0) = 1;
    for (auto v : part_values) {
        CoeffTable next(max_sum, max_parts);
        for (std::uint64_t s = 0; s <= max_sum; ++s) {
            for (std::uint64_t j = 0; j <= max_parts; ++j) {
                const BigInt& c = acc.at(s, j);
                if (c.is_zero()) continue;
                for (auto u : multiplicities) {
                    if (u > max_parts - j) break;
                    const Wide shift = static_cast<Wide>(u) * v;
                    if (shift > max_sum - s) break;
                    next.at(s + static_cast<std::uint64_t>(shift), j + u) += c;
                }
            }
        }
        acc = std::move(next);
    }
    return acc;
}

BigInt count_partitions_restricted(const PartitionQuery& q, std::uint64_t guardrail) {
    q.validate();
    if (!q.restricted()) {
        throw InvalidArgument("count_partitions_restricted needs an explicit multiplicity set");
    }
    std::set<std::uint64_t> values;
    for (std::uint64_t v = 1; v <= q.max_part; ++v) values.insert(values.end(), v);
    return gf_coefficient_table(values, *q.multiplicities, q.total, q.parts, guardrail)
        .at(q.total, q.parts);
}

std::optional<Partition> first_partition(const PartitionQuery& q) {
    q.validate();
    if (!feasible(q.total, q.parts, q.max_part)) return std::nullopt;
    Partition p;
    p.parts.reserve(q.parts);
    append_min_fill(p.parts, 1, q.parts, q.total, q.max_part);
    return p;
}

std::optional<Partition> partition_successor(const Partition& p, const PartitionQuery& q) {
    q.validate();
    check_canonical(p, q);
    const auto& a = p.parts;
    const std::uint64_t k = a.size();
    if (k < 2) return std::nullopt;

    std::vector<std::uint64_t> prefix(k + 1, 0);
    for (std::uint64_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + a[i];

    // The next sequence keeps the longest possible prefix and bumps the
    // following slot by exactly one; the suffix is refilled minimally.
    for (std::uint64_t i = k - 1; i-- > 0;) {
        const std::uint64_t bumped = a[i] + 1;
        if (bumped > q.max_part) continue;
        const std::uint64_t length = k - 1 - i;
        const std::uint64_t remaining = q.total - prefix[i] - bumped;
        if (static_cast<Wide>(length) * bumped > remaining) continue;

        Partition next;
        next.parts.reserve(k);
        next.parts.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
        next.parts.push_back(bumped);
        append_min_fill(next.parts, bumped, length, remaining, q.max_part);
        return next;
    }
    return std::nullopt;
}

PartitionEnumerator::PartitionEnumerator(PartitionQuery q) : query_(std::move(q)) {
    query_.validate();
}

std::optional<Partition> PartitionEnumerator::next() {
    do {
        if (!started_) {
            started_ = true;
            current_ = first_partition(query_);
        } else if (current_) {
            current_ = partition_successor(*current_, query_);
        }
    } while (current_ && query_.restricted() && !multiplicities_allowed(*current_, query_));
    return current_;
}

std::vector<Partition> enumerate_partitions(const PartitionQuery& q) {
    std::vector<Partition> out;
    PartitionEnumerator it(q);
    while (auto p = it.next()) out.push_back(std::move(*p));
    return out;
}

} // namespace partwin
