#include "partwin/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include "partwin/errors.hpp"
#include "partwin/oracle.hpp"
#include "partwin/partition_core.hpp"
#include "partwin/request_model.hpp"

namespace partwin::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kStreamInlineLimit = 10'000;

std::uint64_t parse_uint(std::string_view token) {
    std::uint64_t value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty()) {
        throw InvalidArgument("not a non-negative integer: '" + std::string(token) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

Json list_json(const std::set<std::uint64_t>& values) {
    Json arr = Json::array();
    for (auto v : values) arr.push_back(v);
    return arr;
}

Json parts_json(const Partition& p) {
    Json arr = Json::array();
    for (auto v : p.parts) arr.push_back(v);
    return arr;
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Envelope {
    std::string command;
    Json params = Json::object();
    Json results = Json::object();
    Json notes = Json::array();

    void write(std::ostream& out) const {
        Json doc;
        doc["command"] = command;
        doc["params"] = params;
        doc["results"] = results;
        doc["notes"] = notes;
        doc["version"] = std::string(kVersion);
        out << doc.dump(2) << '\n';
    }
};

// ---------------------------------------------------------------------------

struct CountArgs {
    std::uint64_t sum = 0, parts = 0, max_part = 0;
    std::string mult_set;
    bool verify = false;
    std::uint64_t guardrail = kDefaultGuardrail;
};

int cmd_count(const CountArgs& a, std::ostream& out) {
    PartitionQuery q{a.sum, a.parts, a.max_part, std::nullopt};
    if (!a.mult_set.empty()) q.multiplicities = parse_list(a.mult_set);
    q.validate();

    Envelope env{"count"};
    env.params["sum"] = a.sum;
    env.params["parts"] = a.parts;
    env.params["max_part"] = a.max_part;
    env.params["mult_set"] = q.multiplicities ? list_json(*q.multiplicities) : Json(nullptr);
    env.params["verify"] = a.verify;

    const BigInt count = q.restricted() ? count_partitions_restricted(q, a.guardrail)
                                        : count_partitions(q);
    env.results["count"] = to_decimal(count);

    if (a.verify) {
        if (!oracle::within_caps(q)) {
            env.notes.push_back("verify:skipped (query outside brute-force caps)");
        } else {
            const auto expected = oracle::brute_count_partitions(q);
            if (count != expected) {
                throw VerifyMismatch("count " + to_decimal(count) + " disagrees with brute force " +
                                     std::to_string(expected));
            }
            env.notes.push_back("verify:ok");
        }
    }
    env.write(out);
    return 0;
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
    std::uint64_t sum = 0, parts = 0, max_part = 0;
    std::uint64_t limit = 0; // 0 = unlimited
    std::string format = "json";
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
    const PartitionQuery q{a.sum, a.parts, a.max_part, std::nullopt};
    PartitionEnumerator it(q);

    std::uint64_t emitted = 0;
    bool truncated = false;
    Json rows = Json::array();

    if (a.format == "csv") {
        for (std::uint64_t i = 1; i <= a.parts; ++i) out << (i > 1 ? "," : "") << "part_" << i;
        out << '\n';
    }
    while (auto p = it.next()) {
        if (a.limit && emitted == a.limit) {
            truncated = true;
            break;
        }
        ++emitted;
        if (a.format == "lines") {
            out << p->to_string() << '\n';
        } else if (a.format == "csv") {
            for (std::size_t i = 0; i < p->parts.size(); ++i) out << (i ? "," : "") << p->parts[i];
            out << '\n';
        } else {
            rows.push_back(parts_json(*p));
        }
    }

    if (a.format != "json") {
        if (truncated) err << "# truncated at limit " << a.limit << '\n';
        return 0;
    }
    Envelope env{"enumerate"};
    env.params["sum"] = a.sum;
    env.params["parts"] = a.parts;
    env.params["max_part"] = a.max_part;
    env.params["limit"] = a.limit ? Json(a.limit) : Json(nullptr);
    env.results["emitted"] = emitted;
    env.results["truncated"] = truncated;
    env.results["partitions"] = std::move(rows);
    if (truncated) env.notes.push_back("truncated at limit " + std::to_string(a.limit));
    env.write(out);
    return 0;
}

// ---------------------------------------------------------------------------

struct PmfArgs {
    std::uint64_t window = 0, max_part = 0;
    std::string mode;
    std::uint64_t samples = 0, seed = 0, stride = 1;
    double alpha = 0, beta = 0;
    bool has_samples = false, has_alpha = false, has_beta = false;
    std::uint64_t guardrail = kDefaultGuardrail;
};

Json mass_rows(const SumDistribution& d, const std::vector<BigInt>* counts) {
    Json rows = Json::array();
    for (std::uint64_t s = d.min_sum(); s <= d.max_sum(); ++s) {
        Json row;
        row["sum"] = s;
        if (counts) row["count"] = to_decimal((*counts)[s - d.min_sum()]);
        row["mass"] = d.at(s);
        rows.push_back(std::move(row));
    }
    return rows;
}

void variance_note(Envelope& env, std::uint64_t max_index) {
    const auto m = moments(max_index);
    const auto quoted = quoted_variance_formula(max_index);
    if (quoted != m.variance) {
        env.notes.push_back("variance: using (N^2-1)/12 = " + rational_string(m.variance) +
                            "; the closed form (8N+6)(N^2-1)/24 gives " + rational_string(quoted) +
                            " and disagrees with the direct sum");
    }
}

int cmd_pmf(const PmfArgs& a, std::ostream& out) {
    Envelope env{"pmf"};
    env.params["window"] = a.window;
    env.params["max_part"] = a.max_part;
    env.params["mode"] = a.mode;

    if (a.mode == "exact") {
        const auto counts = window_sum_counts(a.window, a.max_part, a.guardrail);
        const auto d = exact_window_sum_pmf(a.window, a.max_part, a.guardrail);
        env.results["kind"] = std::string(to_string(d.kind));
        env.results["denominator"] = to_decimal(
            boost::multiprecision::pow(BigInt(a.max_part), static_cast<unsigned>(a.window)));
        env.results["rows"] = mass_rows(d, &counts);
        env.results["total_mass"] = d.total_mass();
    } else if (a.mode == "empirical") {
        if (!a.has_samples) throw InvalidArgument("--samples is required in empirical mode");
        env.params["samples"] = a.samples;
        env.params["seed"] = a.seed;
        env.params["stride"] = a.stride;
        const auto exact = exact_window_sum_pmf(a.window, a.max_part, a.guardrail);
        const auto stream = simulate_stream({a.max_part, a.samples, a.seed});
        const auto d = empirical_window_sum_pmf(stream, a.window, a.stride);
        env.results["kind"] = std::string(to_string(d.kind));
        env.results["windows"] = (a.samples - a.window) / a.stride + 1;
        env.results["rows"] = mass_rows(d, nullptr);
        env.results["tv_distance_to_exact"] = total_variation_distance(d, exact);
    } else if (a.mode == "clt") {
        if (!a.has_alpha || !a.has_beta) {
            throw InvalidArgument("--alpha and --beta are required in clt mode");
        }
        const CltInterval iv(a.alpha, a.beta);
        env.params["alpha"] = a.alpha;
        env.params["beta"] = a.beta;
        const auto exact = exact_window_sum_pmf(a.window, a.max_part, a.guardrail);
        const double clt = clt_interval_probability(iv);
        const double ex = exact_standardized_probability(exact, iv);
        env.results["kind"] = std::string(to_string(DistributionKind::clt));
        env.results["clt_probability"] = clt;
        env.results["exact_probability"] = ex;
        env.results["abs_difference"] = std::abs(clt - ex);
        variance_note(env, a.max_part);
    } else {
        throw InvalidArgument("unknown mode '" + a.mode + "'");
    }
    env.write(out);
    return 0;
}

// ---------------------------------------------------------------------------

struct ApproxArgs {
    std::uint64_t sum = 0, window = 0, max_part = 0;
    double alpha = 0, beta = 0;
};

int cmd_approx(const ApproxArgs& a, std::ostream& out) {
    const CltInterval iv(a.alpha, a.beta);
    Envelope env{"approx"};
    env.params["sum"] = a.sum;
    env.params["window"] = a.window;
    env.params["max_part"] = a.max_part;
    env.params["alpha"] = a.alpha;
    env.params["beta"] = a.beta;

    const auto approx = clt_count_approximation(a.sum, a.window, a.max_part, iv);
    const BigInt exact = count_partitions({a.sum, a.window, a.max_part, std::nullopt});
    env.results["approx"] = approx.value;
    env.results["permutation_factor"] = to_decimal(approx.permutation_factor);
    env.results["clt_probability"] = approx.interval_probability;
    env.results["exact"] = to_decimal(exact);
    env.results["exact_over_approx"] =
        static_cast<double>(boost::multiprecision::cpp_bin_float_50(exact) / approx.value);
    env.notes.push_back("approx = window!/floor(window/2)! / P(alpha,beta); no accuracy is "
                        "promised at finite window");
    env.write(out);
    return 0;
}

// ---------------------------------------------------------------------------

struct SpecialArgs {
    std::uint64_t length = 0, count_nminus1 = 0, max_part = 0;
};

int cmd_special(const SpecialArgs& a, std::ostream& out) {
    const auto r = special_sum(a.length, a.count_nminus1, a.max_part);
    Envelope env{"special"};
    env.params["length"] = a.length;
    env.params["count_nminus1"] = a.count_nminus1;
    env.params["max_part"] = a.max_part;

    env.results["total"] = r.total;
    env.results["partition_count"] = to_decimal(r.partition_count);
    env.results["unique_partition"] =
        r.unique_partition ? Json(r.unique_partition->to_string()) : Json(nullptr);
    env.results["two_value_partition"] = r.two_value_partition.to_string();
    env.results["ordering_count"] = to_decimal(r.ordering_count);
    env.results["sequence_probability"] = static_cast<double>(r.sequence_probability);
    env.results["sequence_probability_exact"] = rational_string(r.sequence_probability);
    env.results["paper_ordering_count"] = to_decimal(r.paper_ordering_count);
    env.results["paper_sequence_probability"] = static_cast<double>(r.paper_sequence_probability);
    env.results["paper_sequence_probability_exact"] = rational_string(r.paper_sequence_probability);

    if (r.partition_count != 1) {
        env.notes.push_back("uniqueness: " + to_decimal(r.partition_count) + " partitions of " +
                            std::to_string(r.total) + " into " + std::to_string(a.length) +
                            " parts; the two-valued one is not the only one");
    }
    if (r.ordering_count != r.paper_ordering_count) {
        env.notes.push_back("ordering: arrangements of the two-valued multiset number m!/(k!(m-k)!) = " +
                            to_decimal(r.ordering_count) + "; m!/k! = " +
                            to_decimal(r.paper_ordering_count) + " overcounts");
    }
    env.write(out);
    return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::uint64_t length = 0, max_part = 0, seed = 0;
    std::uint64_t window = 0, stride = 1, find_sum = 0;
    bool has_window = false, has_find_sum = false, full = false, verify = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto stream = simulate_stream({a.max_part, a.length, a.seed});
    Envelope env{"simulate"};
    env.params["length"] = a.length;
    env.params["max_part"] = a.max_part;
    env.params["seed"] = a.seed;

    if (a.length <= kStreamInlineLimit || a.full) {
        Json arr = Json::array();
        for (auto v : stream.indices) arr.push_back(v);
        env.results["stream"] = std::move(arr);
    } else {
        Json digest;
        digest["length"] = a.length;
        digest["seed"] = a.seed;
        digest["checksum"] = hex64(stream_checksum(stream));
        env.results["stream_digest"] = std::move(digest);
    }

    if (a.has_window) {
        env.params["window"] = a.window;
        env.params["stride"] = a.stride;
        const auto d = empirical_window_sum_pmf(stream, a.window, a.stride);
        env.results["window_histogram"] = mass_rows(d, nullptr);
    }

    if (a.has_find_sum) {
        env.params["find_sum"] = a.find_sum;
        if (a.find_sum == 0) throw InvalidArgument("--find-sum must be positive");
        const auto match = find_window_with_sum(stream, a.find_sum);
        Json res;
        res["target"] = a.find_sum;
        res["found"] = match.has_value();
        res["start"] = match ? Json(match->start) : Json(nullptr);
        res["length"] = match ? Json(match->length) : Json(nullptr);
        env.results["find_sum"] = std::move(res);

        if (a.verify) {
            if (stream.indices.size() > oracle::kMaxScanLength) {
                env.notes.push_back("verify:skipped (stream longer than brute-force cap)");
            } else {
                const auto ref = oracle::brute_window_scan(stream.indices, a.find_sum);
                const bool same = ref.has_value() == match.has_value() &&
                                  (!ref || (ref->first == match->start && ref->second == match->length));
                if (!same) throw VerifyMismatch("window search disagrees with brute-force scan");
                env.notes.push_back("verify:ok");
            }
        }
    }
    env.write(out);
    return 0;
}

// ---------------------------------------------------------------------------

struct GfTableArgs {
    std::string values, mults;
    std::uint64_t max_sum = 0, max_parts = 0;
    std::string format = "json";
    std::uint64_t guardrail = kDefaultGuardrail;
};

int cmd_gf_table(const GfTableArgs& a, std::ostream& out) {
    const auto v = parse_list(a.values);
    const auto u = parse_list(a.mults);
    const auto table = gf_coefficient_table(v, u, a.max_sum, a.max_parts, a.guardrail);

    if (a.format == "csv") {
        out << "s,j,coefficient\n";
        for (std::uint64_t s = 0; s <= a.max_sum; ++s) {
            for (std::uint64_t j = 0; j <= a.max_parts; ++j) {
                out << s << ',' << j << ',' << to_decimal(table.at(s, j)) << '\n';
            }
        }
        return 0;
    }
    Envelope env{"gf-table"};
    env.params["values"] = list_json(v);
    env.params["mults"] = list_json(u);
    env.params["max_sum"] = a.max_sum;
    env.params["max_parts"] = a.max_parts;
    Json rows = Json::array();
    for (std::uint64_t s = 0; s <= a.max_sum; ++s) {
        Json row = Json::array();
        for (std::uint64_t j = 0; j <= a.max_parts; ++j) row.push_back(to_decimal(table.at(s, j)));
        rows.push_back(std::move(row));
    }
    env.results["coefficients"] = std::move(rows);
    env.notes.push_back("coefficients[s][j] is the coefficient of x^s y^j");
    env.write(out);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_moments(std::uint64_t max_part, std::ostream& out) {
    const auto m = moments(max_part);
    Envelope env{"moments"};
    env.params["max_part"] = max_part;
    env.results["mean"] = rational_string(m.mean);
    env.results["variance"] = rational_string(m.variance);
    env.results["quoted_variance_formula"] = rational_string(quoted_variance_formula(max_part));
    variance_note(env, max_part);
    env.write(out);
    return 0;
}

} // namespace

std::set<std::uint64_t> parse_list(std::string_view text) {
    constexpr std::uint64_t kMaxRange = 1'000'000;
    std::set<std::uint64_t> out;
    while (true) {
        const auto comma = text.find(',');
        const auto token = trim(text.substr(0, comma));
        if (token.empty()) throw InvalidArgument("empty entry in list");
        if (const auto dots = token.find(".."); dots != std::string_view::npos) {
            const auto lo = parse_uint(trim(token.substr(0, dots)));
            const auto hi = parse_uint(trim(token.substr(dots + 2)));
            if (lo > hi || hi - lo >= kMaxRange) {
                throw InvalidArgument("bad range '" + std::string(token) + "'");
            }
            for (auto v = lo; v <= hi; ++v) out.insert(v);
        } else {
            out.insert(parse_uint(token));
        }
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and approximate analytics for fixed-size bounded partitions and "
                 "window sums of uniform request streams",
                 "partwin"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    const auto positive = CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max());

    CountArgs count;
    auto* c = app.add_subcommand("count", "Exact number of partitions of S into K parts <= N");
    c->add_option("--sum", count.sum, "Total S")->required();
    c->add_option("--parts", count.parts, "Number of parts K")->required();
    c->add_option("--max-part", count.max_part, "Largest allowed part N")->required()->check(positive);
    c->add_option("--mult-set", count.mult_set, "Allowed multiplicities, e.g. 0,1 or 0..3");
    c->add_flag("--verify", count.verify, "Cross-check against the brute-force oracle");
    c->add_option("--guardrail", count.guardrail, "Max coefficient-table entries");

    EnumerateArgs en;
    auto* e = app.add_subcommand("enumerate", "List every partition in lexicographic order");
    e->add_option("--sum", en.sum)->required();
    e->add_option("--parts", en.parts)->required();
    e->add_option("--max-part", en.max_part)->required()->check(positive);
    e->add_option("--limit", en.limit, "Stop after L partitions")->check(positive);
    e->add_option("--format", en.format)->check(CLI::IsMember({"json", "csv", "lines"}));

    PmfArgs pmf;
    auto* p = app.add_subcommand("pmf", "Distribution of a window sum of uniform draws");
    p->add_option("--window", pmf.window)->required()->check(positive);
    p->add_option("--max-part", pmf.max_part)->required()->check(positive);
    p->add_option("--mode", pmf.mode)->required()->check(CLI::IsMember({"exact", "empirical", "clt"}));
    auto* samples_opt = p->add_option("--samples", pmf.samples, "Simulated stream length");
    p->add_option("--seed", pmf.seed);
    p->add_option("--stride", pmf.stride)->check(positive);
    auto* alpha_opt = p->add_option("--alpha", pmf.alpha);
    auto* beta_opt = p->add_option("--beta", pmf.beta);
    p->add_option("--guardrail", pmf.guardrail, "Max window * max-part");

    ApproxArgs ap;
    auto* a = app.add_subcommand("approx", "Normal-limit estimate of a partition count");
    a->add_option("--sum", ap.sum)->required();
    a->add_option("--window", ap.window)->required()->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max()));
    a->add_option("--max-part", ap.max_part)->required()->check(positive);
    a->add_option("--alpha", ap.alpha)->required();
    a->add_option("--beta", ap.beta)->required();

    SpecialArgs sp;
    auto* s = app.add_subcommand("special", "Sums m*N - k built from N-1 and N");
    s->add_option("--length", sp.length)->required()->check(positive);
    s->add_option("--count-nminus1", sp.count_nminus1)->required();
    s->add_option("--max-part", sp.max_part)->required();

    SimulateArgs sim;
    auto* m = app.add_subcommand("simulate", "Seeded uniform request stream");
    m->add_option("--length", sim.length)->required();
    m->add_option("--max-part", sim.max_part)->required()->check(positive);
    m->add_option("--seed", sim.seed)->required();
    auto* window_opt = m->add_option("--window", sim.window, "Histogram window sums")->check(positive);
    m->add_option("--stride", sim.stride)->check(positive);
    auto* find_opt = m->add_option("--find-sum", sim.find_sum, "Earliest window with this sum");
    m->add_flag("--full", sim.full, "Emit the stream even when long");
    m->add_flag("--verify", sim.verify, "Cross-check --find-sum against the brute-force scan");

    GfTableArgs gf;
    auto* g = app.add_subcommand("gf-table", "Coefficient table of the restricted generating function");
    g->add_option("--values", gf.values, "Part values V, e.g. 1..6")->required();
    g->add_option("--mults", gf.mults, "Multiplicities U, e.g. 0..10")->required();
    g->add_option("--max-sum", gf.max_sum)->required();
    g->add_option("--max-parts", gf.max_parts)->required();
    g->add_option("--format", gf.format)->check(CLI::IsMember({"json", "csv"}));
    g->add_option("--guardrail", gf.guardrail, "Max table entries");

    std::uint64_t moments_n = 0;
    auto* mo = app.add_subcommand("moments", "Mean and variance of one uniform draw");
    mo->add_option("--max-part", moments_n)->required()->check(positive);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c->parsed()) return cmd_count(count, out);
        if (e->parsed()) return cmd_enumerate(en, out, err);
        if (p->parsed()) {
            pmf.has_samples = samples_opt->count() > 0;
            pmf.has_alpha = alpha_opt->count() > 0;
            pmf.has_beta = beta_opt->count() > 0;
            return cmd_pmf(pmf, out);
        }
        if (a->parsed()) return cmd_approx(ap, out);
        if (s->parsed()) return cmd_special(sp, out);
        if (m->parsed()) {
            sim.has_window = window_opt->count() > 0;
            sim.has_find_sum = find_opt->count() > 0;
            return cmd_simulate(sim, out);
        }
        if (g->parsed()) return cmd_gf_table(gf, out);
        if (mo->parsed()) return cmd_moments(moments_n, out);
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return ex.exit_code();
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace partwin::cli
