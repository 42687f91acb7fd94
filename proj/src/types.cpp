#include "partwin/types.hpp"

#include <numeric>

#include "partwin/errors.hpp"

namespace partwin {

void PartitionQuery::validate() const {
    if (max_part == 0) throw InvalidArgument("max_part must be at least 1");
    if (multiplicities && multiplicities->empty()) {
        throw InvalidArgument("explicit multiplicity set must not be empty");
    }
}

std::uint64_t Partition::sum() const noexcept {
    return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
}

std::string Partition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(parts[i]);
    }
    return out;
}

std::string to_decimal(const BigInt& value) { return value.str(); }

} // namespace partwin
