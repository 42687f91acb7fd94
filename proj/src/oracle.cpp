#include "partwin/oracle.hpp"

#include <map>
#include <vector>

#include "partwin/errors.hpp"

namespace partwin::oracle {

namespace {

struct Walker {
    const PartitionQuery& q;
    std::vector<std::uint64_t> tuple;
    std::uint64_t hits = 0;

    bool allowed() const {
        if (!q.multiplicities) return true;
        std::map<std::uint64_t, std::uint64_t> used;
        for (std::uint64_t v = 1; v <= q.max_part; ++v) used[v] = 0;
        for (auto v : tuple) ++used[v];
        for (const auto& [value, times] : used) {
            if (!q.multiplicities->contains(times)) return false;
        }
        return true;
    }

    void walk(std::uint64_t lo, std::uint64_t sum) {
        if (tuple.size() == q.parts) {
            if (sum == q.total && allowed()) ++hits;
            return;
        }
        for (std::uint64_t v = lo; v <= q.max_part; ++v) {
            tuple.push_back(v);
            walk(v, sum + v);
            tuple.pop_back();
        }
    }
};

} // namespace

bool within_caps(const PartitionQuery& q) noexcept {
    return q.total <= kMaxTotal && q.parts <= kMaxParts && q.max_part <= kMaxPart;
}

std::uint64_t brute_count_partitions(const PartitionQuery& q) {
    if (q.max_part == 0) throw InvalidArgument("max_part must be at least 1");
    if (!within_caps(q)) throw InvalidArgument("query exceeds brute-force caps");
    Walker w{q, {}, 0};
    w.walk(1, 0);
    return w.hits;
}

std::uint64_t brute_composition_count(std::uint64_t total, std::uint64_t window,
                                      std::uint64_t max_index) {
    if (max_index == 0) throw InvalidArgument("max_index must be at least 1");
    std::uint64_t tuples = 1;
    for (std::uint64_t i = 0; i < window; ++i) {
        tuples *= max_index;
        if (tuples > kMaxTuples) throw InvalidArgument("tuple space exceeds brute-force cap");
    }

    std::vector<std::uint64_t> digits(window, 1);
    std::uint64_t hits = 0;
    for (std::uint64_t n = 0; n < tuples; ++n) {
        std::uint64_t sum = 0;
        for (auto d : digits) sum += d;
        if (sum == total) ++hits;
        // odometer increment
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] < max_index) {
                ++digits[i];
                break;
            }
            digits[i] = 1;
        }
    }
    return hits;
}

std::optional<std::pair<std::size_t, std::size_t>>
brute_window_scan(std::span<const std::uint64_t> values, std::uint64_t target) {
    if (values.size() > kMaxScanLength) throw InvalidArgument("stream exceeds brute-force cap");
    for (std::size_t start = 0; start < values.size(); ++start) {
        std::uint64_t sum = 0;
        for (std::size_t length = 1; start + length <= values.size(); ++length) {
            sum += values[start + length - 1];
            if (sum == target) return std::make_pair(start, length);
        }
    }
    return std::nullopt;
}

} // namespace partwin::oracle
