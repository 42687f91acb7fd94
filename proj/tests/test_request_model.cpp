#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "partwin/errors.hpp"
#include "partwin/oracle.hpp"
#include "partwin/partition_core.hpp"
#include "partwin/request_model.hpp"

using namespace partwin;

namespace {

// Composite Simpson over the normal density. Independent of erfc.
double normal_density_integral(double a, double b, int intervals = 20000) {
    const auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); };
    const double h = (b - a) / intervals;
    double acc = phi(a) + phi(b);
    for (int i = 1; i < intervals; ++i) acc += phi(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double phi_oracle(double x) { return x >= 0 ? 0.5 + normal_density_integral(0, x) : 0.5 - normal_density_integral(x, 0); }

BigInt multinomial_of(const Partition& p) {
    BigInt out = 1;
    std::uint64_t placed = 0;
    std::size_t i = 0;
    while (i < p.parts.size()) {
        std::size_t j = i;
        while (j < p.parts.size() && p.parts[j] == p.parts[i]) ++j;
        for (std::size_t r = 1; r <= j - i; ++r) {
            out *= ++placed;
            out /= r;
        }
        i = j;
    }
    return out;
}

} // namespace

TEST_CASE("moments") {
    CHECK(moments(10).mean == Rational(11, 2));
    CHECK(moments(10).variance == Rational(33, 4));
    CHECK(moments(1).mean == 1);
    CHECK(moments(1).variance == 0);
    CHECK_THROWS_AS(moments(0), InvalidArgument);

    for (std::uint64_t n = 1; n <= 100; ++n) {
        Rational sum = 0, sq = 0;
        for (std::uint64_t i = 1; i <= n; ++i) {
            sum += i;
            sq += i * i;
        }
        const Rational mean = sum / n;
        CHECK(moments(n).mean == mean);
        CHECK(moments(n).variance == sq / n - mean * mean);
    }
    // The (8N+6)(N^2-1)/24 closed form only agrees where N^2 - 1 vanishes.
    CHECK(quoted_variance_formula(1) == moments(1).variance);
    CHECK(quoted_variance_formula(10) != moments(10).variance);
}

TEST_CASE("std_normal_cdf") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std::abs(std_normal_cdf(1.959963985) - 0.975) < 1e-6);
    CHECK(std_normal_cdf(-8.0) < 1e-14);
    CHECK(std_normal_cdf(-8.0) > 0.0);
    for (double x = -6.0; x <= 6.0; x += 0.37) {
        CAPTURE(x);
        CHECK(std::abs(std_normal_cdf(x) - phi_oracle(x)) < 1e-10);
    }
    CHECK(std::abs(std_normal_cdf(-8.0) - normal_density_integral(8.0, 40.0)) < 1e-20);
}

TEST_CASE("clt_interval_probability") {
    CHECK(std::abs(clt_interval_probability({-1.959963985, 1.959963985}) - 0.95) < 1e-6);
    CHECK(std::abs(clt_interval_probability({-38, 38}) - 1.0) < 1e-12);
    CHECK(clt_interval_probability({-1e-9, 1e-9}) < 1e-8);
    CHECK(std::abs(clt_interval_probability({0.5, 2.0}) - normal_density_integral(0.5, 2.0)) < 1e-12);
    CHECK(std::abs(clt_interval_probability({9.0, 10.0}) - normal_density_integral(9.0, 10.0)) < 1e-25);
    CHECK_THROWS_AS(CltInterval(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(CltInterval(2.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(CltInterval(0.0, INFINITY), InvalidArgument);
}

TEST_CASE("exact_window_sum_pmf") {
    const auto dice = exact_window_sum_pmf(2, 6);
    CHECK(dice.at(7) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(dice.kind == DistributionKind::exact);

    for (std::uint64_t n = 1; n <= 6; ++n) {
        const auto one = exact_window_sum_pmf(1, n);
        for (std::uint64_t s = 1; s <= n; ++s) CHECK(one.at(s) == doctest::Approx(1.0 / n));
    }
    CHECK(exact_window_sum_pmf(3, 2).at(4) == doctest::Approx(3.0 / 8.0));

    for (std::uint64_t k = 1; k <= 12; ++k) {
        for (std::uint64_t n = 1; n <= 9; ++n) {
            const auto d = exact_window_sum_pmf(k, n);
            CHECK(d.mass.size() == k * (n - 1) + 1);
            CHECK(std::abs(d.total_mass() - 1.0) < 1e-9);
            CHECK(d.at(k) > 0.0);
            CHECK(d.at(k * n) > 0.0);
            CHECK(d.at(k - 1) == 0.0);
            CHECK(d.at(k * n + 1) == 0.0);
            for (std::uint64_t s = k; s <= k * n; ++s) CHECK(d.at(s) == d.at(k * (n + 1) - s));
        }
    }
    CHECK_THROWS_AS(exact_window_sum_pmf(0, 5), InvalidArgument);
    CHECK_THROWS_AS(exact_window_sum_pmf(1000, 1000, 10'000), ResourceGuardrail);
}

TEST_CASE("window_sum_counts and composition_count agree with brute force") {
    CHECK(composition_count(7, 2, 6) == 6);
    CHECK(composition_count(5, 5, 9) == 1);
    CHECK(composition_count(4, 5, 9) == 0);
    CHECK(composition_count(46, 5, 9) == 0);
    CHECK(composition_count(0, 0, 3) == 1);

    for (std::uint64_t k = 1; k <= 6; ++k) {
        for (std::uint64_t n = 1; n <= 6; ++n) {
            const auto counts = window_sum_counts(k, n);
            BigInt total = 0;
            for (std::uint64_t s = 0; s <= k * n + 2; ++s) {
                const auto c = composition_count(s, k, n);
                total += c;
                CHECK(c == oracle::brute_composition_count(s, k, n));
                if (s >= k && s <= k * n) CHECK(c == counts[s - k]);
            }
            CHECK(total == boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k)));
        }
    }
}

TEST_CASE("composition_count is the permutation-weighted sum over partitions") {
    for (std::uint64_t k = 1; k <= 6; ++k) {
        for (std::uint64_t n = 1; n <= 7; ++n) {
            for (std::uint64_t s = k; s <= k * n; ++s) {
                BigInt acc = 0;
                for (const auto& p : enumerate_partitions({s, k, n, std::nullopt})) acc += multinomial_of(p);
                CHECK(acc == composition_count(s, k, n));
            }
        }
    }
}

TEST_CASE("exact_standardized_probability converges to the normal limit") {
    const CltInterval iv(-1.959963985, 1.959963985);
    const double target = clt_interval_probability(iv);
    CHECK(std::abs(exact_standardized_probability(exact_window_sum_pmf(30, 10), iv) - target) <= 0.05);
    CHECK(std::abs(exact_standardized_probability(exact_window_sum_pmf(300, 10), iv) - target) <= 0.01);
}

TEST_CASE("total_variation_distance") {
    const auto a = exact_window_sum_pmf(2, 3);
    CHECK(total_variation_distance(a, a) == 0.0);
    auto b = a;
    b.mass.assign(b.mass.size(), 0.0);
    b.mass.front() = 1.0;
    CHECK(total_variation_distance(a, b) == doctest::Approx(1.0 - a.mass.front()));
    CHECK_THROWS_AS(total_variation_distance(a, exact_window_sum_pmf(3, 3)), InvalidArgument);
}

TEST_CASE("clt_count_approximation") {
    const CltInterval iv(-1.959963985, 1.959963985);
    const double p = clt_interval_probability(iv);

    const auto two = clt_count_approximation(3, 2, 5, iv);
    CHECK(two.permutation_factor == 2);
    CHECK(two.value == doctest::Approx(2.0 / p));

    const auto four = clt_count_approximation(10, 4, 5, iv);
    CHECK(four.permutation_factor == 12); // 4! / 2!
    CHECK(four.value == doctest::Approx(12.0 / 0.95).epsilon(1e-6));

    const auto five = clt_count_approximation(10, 5, 5, iv);
    CHECK(five.permutation_factor == 60); // 5! / 2!

    for (std::uint64_t w = 2; w <= 40; ++w) {
        const auto r = clt_count_approximation(w * 3, w, 5, iv);
        CHECK(std::isfinite(r.value));
        CHECK(r.value > 0.0);
    }
    CHECK_THROWS_AS(clt_count_approximation(3, 1, 5, iv), InvalidArgument);
    CHECK_THROWS_AS(clt_count_approximation(3, 2, 5, CltInterval(39.0, 40.0)), NumericGuard);
    CHECK_THROWS_AS(clt_count_approximation(3, 400, 5, iv), NumericGuard);
}

TEST_CASE("special_sum") {
    const auto r = special_sum(6, 2, 8);
    CHECK(r.total == 46);
    // 46 = 7+7+8+8+8+8 = 6+8+8+8+8+8: the two-valued partition is not unique.
    CHECK(r.partition_count == 2);
    CHECK_FALSE(r.unique_partition.has_value());
    CHECK(r.two_value_partition.to_string() == "7 7 8 8 8 8");
    CHECK(r.ordering_count == 15);
    CHECK(r.paper_ordering_count == 360);
    CHECK(r.paper_sequence_probability == Rational(1, 360));
    CHECK(r.sequence_probability == Rational(15, 262144));

    const auto one = special_sum(6, 1, 8);
    CHECK(one.partition_count == 1);
    CHECK(one.unique_partition->to_string() == "7 8 8 8 8 8");

    const auto all_n = special_sum(3, 0, 5);
    CHECK(all_n.total == 15);
    CHECK(all_n.partition_count == 1);
    CHECK(all_n.unique_partition->to_string() == "5 5 5");
    CHECK(all_n.ordering_count == 1);
    CHECK(all_n.sequence_probability == Rational(1, 125));

    CHECK_THROWS_AS(special_sum(3, 4, 5), InvalidArgument);
    CHECK_THROWS_AS(special_sum(3, 1, 1), InvalidArgument);
}

TEST_CASE("special_sum: ordering count matches arrangement enumeration") {
    for (std::uint64_t m = 1; m <= 8; ++m) {
        for (std::uint64_t k = 0; k <= m; ++k) {
            const auto r = special_sum(m, k, 6);
            auto seq = r.two_value_partition.parts;
            std::uint64_t arrangements = 0;
            do {
                ++arrangements;
            } while (std::next_permutation(seq.begin(), seq.end()));
            CHECK(r.ordering_count == arrangements);
            CHECK(composition_count(r.total, m, 6) >= arrangements);
        }
    }
}

TEST_CASE("special_sum: uniqueness holds only for k <= 1 or N = 2") {
    for (std::uint64_t m = 1; m <= 8; ++m) {
        for (std::uint64_t k = 0; k <= m; ++k) {
            for (std::uint64_t n = 2; n <= 10; ++n) {
                const PartitionQuery q{m * n - k, m, n, std::nullopt};
                const auto c = special_sum(m, k, n).partition_count;
                if (oracle::within_caps(q)) CHECK(c == oracle::brute_count_partitions(q));
                CHECK((c == 1) == (k <= 1 || n == 2));
            }
        }
    }
}

TEST_CASE("SplitMix64 reference output") {
    // First outputs for seed 1234567 from the published reference implementation.
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ULL);
    CHECK(rng.next() == 3203168211198807973ULL);
    CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("simulate_stream") {
    CHECK(simulate_stream({1, 5, 42}).indices == std::vector<std::uint64_t>(5, 1));
    CHECK(simulate_stream({10, 1000, 7}).indices == simulate_stream({10, 1000, 7}).indices);
    CHECK(simulate_stream({10, 1000, 7}).indices != simulate_stream({10, 1000, 8}).indices);
    CHECK(simulate_stream({10, 0, 7}).indices.empty());
    CHECK_THROWS_AS(simulate_stream({0, 5, 1}), InvalidArgument);

    const std::uint64_t n = 1'000'000;
    const auto s = simulate_stream({10, n, 2024});
    std::vector<std::uint64_t> freq(11, 0);
    for (auto v : s.indices) {
        REQUIRE(v >= 1);
        REQUIRE(v <= 10);
        ++freq[v];
    }
    // Binomial(n, 1/10): sigma = sqrt(n * 0.1 * 0.9) = 300.
    for (std::uint64_t v = 1; v <= 10; ++v) CHECK(std::abs(static_cast<double>(freq[v]) - 1e5) <= 4 * 300.0);
}

TEST_CASE("empirical_window_sum_pmf") {
    const Stream ones{1, {1, 1, 1, 1}};
    CHECK(empirical_window_sum_pmf(ones, 2).at(2) == 1.0);

    const Stream s{3, {1, 2, 3}};
    const auto d = empirical_window_sum_pmf(s, 2);
    CHECK(d.at(3) == 0.5);
    CHECK(d.at(5) == 0.5);
    CHECK(d.at(4) == 0.0);
    CHECK(d.kind == DistributionKind::empirical);

    const Stream t{3, {1, 2, 3, 1, 3}};
    const auto strided = empirical_window_sum_pmf(t, 2, 2); // windows (1,2) (3,1)
    CHECK(strided.at(3) == 0.5);
    CHECK(strided.at(4) == 0.5);

    CHECK_THROWS_AS(empirical_window_sum_pmf(s, 4), InvalidArgument);
    CHECK_THROWS_AS(empirical_window_sum_pmf(s, 0), InvalidArgument);
    CHECK_THROWS_AS(empirical_window_sum_pmf(s, 1, 0), InvalidArgument);
    CHECK_THROWS_AS(empirical_window_sum_pmf(Stream{3, {1, 4}}, 1), InvalidArgument);
}

TEST_CASE("find_window_with_sum") {
    const std::vector<std::uint64_t> v{5, 1, 7, 21};
    CHECK(find_window_with_sum(v, 8) == WindowMatch{1, 2});
    CHECK_FALSE(find_window_with_sum(v, 4).has_value());
    CHECK(find_window_with_sum(v, 5) == WindowMatch{0, 1});
    CHECK(find_window_with_sum(v, 34) == WindowMatch{0, 4});
    CHECK(find_window_with_sum(v, 21) == WindowMatch{3, 1});
    CHECK_FALSE(find_window_with_sum(std::vector<std::uint64_t>{}, 3).has_value());
    CHECK_FALSE(find_window_with_sum(v, 0).has_value());
}

TEST_CASE("find_window_with_sum agrees with the O(n^2) scan") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = simulate_stream({1 + rng.below(12), 1 + rng.below(60), rng.next()});
        const std::uint64_t target = 1 + rng.below(80);
        const auto fast = find_window_with_sum(s, target);
        const auto slow = oracle::brute_window_scan(s.indices, target);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(fast->start == slow->first);
            CHECK(fast->length == slow->second);
        }
    }
}

TEST_CASE("stream_checksum") {
    CHECK(stream_checksum(Stream{1, {}}) == 0xcbf29ce484222325ULL);
    CHECK(stream_checksum(simulate_stream({10, 100, 1})) == stream_checksum(simulate_stream({10, 100, 1})));
    CHECK(stream_checksum(Stream{3, {1, 2}}) != stream_checksum(Stream{3, {2, 1}}));
}
