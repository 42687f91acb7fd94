#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "partwin/types.hpp"

namespace partwin {

// ---------------------------------------------------------------------------
// Moments of a single uniform draw from [1, N]
// ---------------------------------------------------------------------------

struct Moments {
    Rational mean;
    Rational variance;
};

/// mean = (N+1)/2, variance = (N^2-1)/12, both exact.
Moments moments(std::uint64_t max_index);

/// The closed form (8N+6)(N^2-1)/24 sometimes quoted for the variance of a
/// uniform draw. Kept only so callers can report how far it is from the
/// directly evaluated variance.
Rational quoted_variance_formula(std::uint64_t max_index);

// ---------------------------------------------------------------------------
// Normal limit
// ---------------------------------------------------------------------------

/// Standard normal CDF, accurate to well below 1e-10 absolute.
double std_normal_cdf(double x);

class CltInterval {
public:
    /// Throws InvalidArgument unless alpha < beta and both are finite.
    CltInterval(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

private:
    double alpha_;
    double beta_;
};

/// Phi(beta) - Phi(alpha).
double clt_interval_probability(const CltInterval& iv);

// ---------------------------------------------------------------------------
// Window-sum distributions
// ---------------------------------------------------------------------------

enum class DistributionKind { exact, empirical, clt };

std::string_view to_string(DistributionKind kind);

// Probability mass over window sums s in [window, window * max_index].
struct SumDistribution {
    std::uint64_t window = 1;
    std::uint64_t max_index = 1;
    DistributionKind kind = DistributionKind::exact;
    std::vector<double> mass; // mass[s - window]

    std::uint64_t min_sum() const noexcept { return window; }
    std::uint64_t max_sum() const noexcept { return window * max_index; }
    double at(std::uint64_t sum) const noexcept;
    double total_mass() const noexcept;
};

/// Exact integer counts of ordered window-tuples per sum, by repeated
/// convolution of the uniform mass. counts[s - window]; they sum to N^window.
/// Throws ResourceGuardrail when window * max_index exceeds `guardrail`.
std::vector<BigInt> window_sum_counts(std::uint64_t window, std::uint64_t max_index,
                                      std::uint64_t guardrail = kDefaultGuardrail);

SumDistribution exact_window_sum_pmf(std::uint64_t window, std::uint64_t max_index,
                                     std::uint64_t guardrail = kDefaultGuardrail);

/// Number of ordered `window`-tuples over [1, max_index] summing to `total`,
/// by inclusion-exclusion over the parts that exceed max_index.
BigInt composition_count(std::uint64_t total, std::uint64_t window, std::uint64_t max_index);

/// Exact probability that the standardized sum of `window` uniform draws
/// lies strictly inside (alpha, beta), read off the exact distribution.
double exact_standardized_probability(const SumDistribution& exact, const CltInterval& iv);

/// Half the L1 distance. Both distributions must share window and max_index.
double total_variation_distance(const SumDistribution& a, const SumDistribution& b);

// ---------------------------------------------------------------------------
// Count approximation from the normal limit
// ---------------------------------------------------------------------------

struct CltApproximation {
    BigInt permutation_factor; // window! / floor(window/2)!
    double interval_probability = 0.0;
    double value = 0.0; // permutation_factor / interval_probability
};

/// Evaluates window! / floor(window/2)! / P(alpha, beta). `total` and
/// `max_index` identify the count being approximated but do not enter the
/// formula. Throws NumericGuard when the probability is below 1e-300 or the
/// result is not finite, InvalidArgument when window < 2.
CltApproximation clt_count_approximation(std::uint64_t total, std::uint64_t window,
                                         std::uint64_t max_index, const CltInterval& iv);

// ---------------------------------------------------------------------------
// Sums of the form m*N - k
// ---------------------------------------------------------------------------

struct SpecialSum {
    std::uint64_t total = 0;
    BigInt partition_count;
    std::optional<Partition> unique_partition; // set when partition_count == 1
    Partition two_value_partition;            // k copies of N-1, m-k copies of N
    BigInt ordering_count;                    // m! / (k! (m-k)!)
    Rational sequence_probability;            // ordering_count / N^m
    BigInt paper_ordering_count;              // m! / k!
    Rational paper_sequence_probability;      // k! / m!
};

/// Throws InvalidArgument when k_count > m, m == 0 or max_index < 2.
SpecialSum special_sum(std::uint64_t m, std::uint64_t k_count, std::uint64_t max_index);

// ---------------------------------------------------------------------------
// Request streams
// ---------------------------------------------------------------------------

struct StreamConfig {
    std::uint64_t max_index = 1;
    std::uint64_t length = 0;
    std::uint64_t seed = 0;
};

struct Stream {
    std::uint64_t max_index = 1;
    std::vector<std::uint64_t> indices;
};

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, fixed output function,
/// so a given seed produces the same sequence on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;

    /// Uniform draw from [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

Stream simulate_stream(const StreamConfig& cfg);

/// 64-bit FNV-1a over the little-endian bytes of each index.
std::uint64_t stream_checksum(const Stream& stream);

/// Histogram of sums over windows starting at 0, stride, 2*stride, ...
/// Throws InvalidArgument when window is 0, stride is 0, or window exceeds
/// the stream length.
SumDistribution empirical_window_sum_pmf(const Stream& stream, std::uint64_t window,
                                         std::uint64_t stride = 1);

struct WindowMatch {
    std::size_t start = 0;
    std::size_t length = 0;

    friend bool operator==(const WindowMatch&, const WindowMatch&) = default;
};

/// Earliest contiguous window (smallest start) summing exactly to target.
/// Elements must be positive; uses a two-pointer scan.
std::optional<WindowMatch> find_window_with_sum(std::span<const std::uint64_t> values,
                                                std::uint64_t target);

inline std::optional<WindowMatch> find_window_with_sum(const Stream& stream, std::uint64_t target) {
    return find_window_with_sum(std::span<const std::uint64_t>(stream.indices), target);
}

} // namespace partwin
