#include "partwin/request_model.hpp"

#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "partwin/errors.hpp"
#include "partwin/partition_core.hpp"

namespace partwin {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

BigInt falling_product(std::uint64_t from_exclusive, std::uint64_t to_inclusive) {
    BigInt out = 1;
    for (std::uint64_t i = from_exclusive + 1; i <= to_inclusive; ++i) out *= i;
    return out;
}

BigInt factorial(std::uint64_t n) { return falling_product(0, n); }

} // namespace

Moments moments(std::uint64_t max_index) {
    if (max_index == 0) throw InvalidArgument("max_index must be at least 1");
    const BigInt n = max_index;
    return {Rational(n + 1, 2), Rational(n * n - 1, 12)};
}

Rational quoted_variance_formula(std::uint64_t max_index) {
    if (max_index == 0) throw InvalidArgument("max_index must be at least 1");
    const BigInt n = max_index;
    return Rational((8 * n + 6) * (n * n - 1), 24);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

CltInterval::CltInterval(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha < beta)) {
        throw InvalidArgument("CLT interval needs finite alpha < beta");
    }
}

double clt_interval_probability(const CltInterval& iv) {
    // Subtract in the tail nearer zero to keep relative accuracy.
    if (iv.alpha() > 0) return std_normal_cdf(-iv.alpha()) - std_normal_cdf(-iv.beta());
    return std_normal_cdf(iv.beta()) - std_normal_cdf(iv.alpha());
}

std::string_view to_string(DistributionKind kind) {
    switch (kind) {
    case DistributionKind::exact: return "exact";
    case DistributionKind::empirical: return "empirical";
    case DistributionKind::clt: return "clt";
    }
    return "unknown";
}

double SumDistribution::at(std::uint64_t sum) const noexcept {
    if (sum < min_sum() || sum > max_sum()) return 0.0;
    return mass[sum - window];
}

double SumDistribution::total_mass() const noexcept {
    return std::accumulate(mass.begin(), mass.end(), 0.0);
}

std::vector<BigInt> window_sum_counts(std::uint64_t window, std::uint64_t max_index,
                                      std::uint64_t guardrail) {
    if (window == 0) throw InvalidArgument("window must be at least 1");
    if (max_index == 0) throw InvalidArgument("max_index must be at least 1");
    if (static_cast<unsigned __int128>(window) * max_index > guardrail) {
        throw ResourceGuardrail("window * max_index exceeds guardrail " +
                                std::to_string(guardrail));
    }

    // counts over offsets o = s - j after j draws; support [0, j*(N-1)].
    std::vector<BigInt> counts(1, BigInt(1));
    for (std::uint64_t j = 1; j <= window; ++j) {
        std::vector<BigInt> next(counts.size() + max_index - 1);
        BigInt running = 0;
        for (std::size_t o = 0; o < next.size(); ++o) {
            if (o < counts.size()) running += counts[o];
            if (o >= max_index) running -= counts[o - max_index];
            next[o] = running;
        }
        counts = std::move(next);
    }
    return counts;
}

SumDistribution exact_window_sum_pmf(std::uint64_t window, std::uint64_t max_index,
                                     std::uint64_t guardrail) {
    const auto counts = window_sum_counts(window, max_index, guardrail);
    const BigInt denom = boost::multiprecision::pow(BigInt(max_index), static_cast<unsigned>(window));
    const BigFloat denom_f(denom);

    SumDistribution d{window, max_index, DistributionKind::exact, {}};
    d.mass.reserve(counts.size());
    for (const auto& c : counts) d.mass.push_back(static_cast<double>(BigFloat(c) / denom_f));
    return d;
}

BigInt composition_count(std::uint64_t total, std::uint64_t window, std::uint64_t max_index) {
    if (max_index == 0) throw InvalidArgument("max_index must be at least 1");
    if (window == 0) return total == 0 ? 1 : 0;
    if (total < window || static_cast<unsigned __int128>(window) * max_index < total) return 0;

    // Substitute r_i = 1 + t_i with 0 <= t_i <= N-1 and sum t_i = total - window;
    // subtract the tuples where some t_i >= N.
    const std::uint64_t excess = total - window;
    BigInt acc = 0;
    for (std::uint64_t j = 0; j <= window && j * max_index <= excess; ++j) {
        BigInt term = binomial(window, j) * binomial(excess - j * max_index + window - 1, window - 1);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

double exact_standardized_probability(const SumDistribution& exact, const CltInterval& iv) {
    const auto m = moments(exact.max_index);
    const double mu = static_cast<double>(m.mean);
    const double sigma = std::sqrt(static_cast<double>(m.variance));
    const double scale = sigma * std::sqrt(static_cast<double>(exact.window));
    const double centre = static_cast<double>(exact.window) * mu;
    const double lo = iv.alpha() * scale + centre;
    const double hi = iv.beta() * scale + centre;

    double p = 0.0;
    for (std::uint64_t s = exact.min_sum(); s <= exact.max_sum(); ++s) {
        const double x = static_cast<double>(s);
        if (x > lo && x < hi) p += exact.at(s);
    }
    return p;
}

double total_variation_distance(const SumDistribution& a, const SumDistribution& b) {
    if (a.window != b.window || a.max_index != b.max_index) {
        throw InvalidArgument("distributions over different supports");
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < a.mass.size(); ++i) l1 += std::abs(a.mass[i] - b.mass[i]);
    return 0.5 * l1;
}

CltApproximation clt_count_approximation(std::uint64_t total, std::uint64_t window,
                                         std::uint64_t max_index, const CltInterval& iv) {
    (void)total;
    if (max_index == 0) throw InvalidArgument("max_index must be at least 1");
    if (window < 2) throw InvalidArgument("window must be at least 2");

    CltApproximation out;
    out.permutation_factor = falling_product(window / 2, window);
    out.interval_probability = clt_interval_probability(iv);
    if (!(out.interval_probability >= 1e-300)) {
        throw NumericGuard("CLT interval probability underflows; approximation undefined");
    }
    out.value = static_cast<double>(BigFloat(out.permutation_factor) / out.interval_probability);
    if (!std::isfinite(out.value)) {
        throw NumericGuard("CLT count approximation overflows double precision");
    }
    return out;
}

SpecialSum special_sum(std::uint64_t m, std::uint64_t k_count, std::uint64_t max_index) {
    if (m == 0) throw InvalidArgument("length m must be at least 1");
    if (k_count > m) throw InvalidArgument("k_count must not exceed m");
    if (max_index < 2) throw InvalidArgument("max_index must be at least 2");

    SpecialSum out;
    out.total = m * max_index - k_count;

    const PartitionQuery q{out.total, m, max_index, std::nullopt};
    out.partition_count = count_partitions(q);
    if (out.partition_count == 1) out.unique_partition = first_partition(q);

    out.two_value_partition.parts.assign(k_count, max_index - 1);
    out.two_value_partition.parts.resize(m, max_index);

    out.ordering_count = binomial(m, k_count);
    out.sequence_probability =
        Rational(out.ordering_count,
                 boost::multiprecision::pow(BigInt(max_index), static_cast<unsigned>(m)));
    out.paper_ordering_count = falling_product(k_count, m);
    out.paper_sequence_probability = Rational(factorial(k_count), factorial(m));
    return out;
}

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
    // Reject the first (2^64 mod bound) values so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next();
        if (x >= threshold) return x % bound;
    }
}

Stream simulate_stream(const StreamConfig& cfg) {
    if (cfg.max_index == 0) throw InvalidArgument("max_index must be at least 1");
    SplitMix64 rng(cfg.seed);
    Stream s{cfg.max_index, {}};
    s.indices.reserve(cfg.length);
    for (std::uint64_t i = 0; i < cfg.length; ++i) s.indices.push_back(rng.below(cfg.max_index) + 1);
    return s;
}

std::uint64_t stream_checksum(const Stream& stream) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : stream.indices) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

SumDistribution empirical_window_sum_pmf(const Stream& stream, std::uint64_t window,
                                         std::uint64_t stride) {
    const auto& v = stream.indices;
    if (window == 0) throw InvalidArgument("window must be at least 1");
    if (stride == 0) throw InvalidArgument("stride must be at least 1");
    if (window > v.size()) throw InvalidArgument("window exceeds stream length");

    std::vector<std::uint64_t> prefix(v.size() + 1, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 1 || v[i] > stream.max_index) {
            throw InvalidArgument("stream element outside [1, max_index]");
        }
        prefix[i + 1] = prefix[i] + v[i];
    }

    SumDistribution d{window, stream.max_index, DistributionKind::empirical, {}};
    std::vector<std::uint64_t> hist(window * (stream.max_index - 1) + 1, 0);
    std::uint64_t samples = 0;
    for (std::size_t start = 0; start + window <= v.size(); start += stride) {
        ++hist[prefix[start + window] - prefix[start] - window];
        ++samples;
    }
    d.mass.reserve(hist.size());
    for (auto h : hist) d.mass.push_back(static_cast<double>(h) / static_cast<double>(samples));
    return d;
}

std::optional<WindowMatch> find_window_with_sum(std::span<const std::uint64_t> values,
                                                std::uint64_t target) {
    if (target == 0) return std::nullopt;
    std::size_t left = 0;
    std::uint64_t sum = 0;
    for (std::size_t right = 0; right < values.size(); ++right) {
        sum += values[right];
        while (sum > target && left <= right) sum -= values[left++];
        if (sum == target && left <= right) return WindowMatch{left, right - left + 1};
    }
    return std::nullopt;
}

} // namespace partwin
