#include "sortsum/adversary.hpp"
#include "sortsum/approx_region.hpp"
#include "sortsum/approx_sum.hpp"
#include "sortsum/cli.hpp"
#include "sortsum/errors.hpp"
#include "sortsum/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ostream>
#include <string>

namespace sortsum::cli
{
namespace
{
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct InputFlags
{
    std::string generator;
    std::string input;
    std::string input_format = "auto";
    std::uint64_t seed = 0;
    std::int64_t n = 0;  // 0: whole input
};

void add_input_flags(CLI::App& app, InputFlags& flags)
{
    auto* gen = app.add_option("--generator", flags.generator, "synthetic input, e.g. linear:100 or constant:0:1000");
    auto* in = app.add_option("--input", flags.input, "file with one number per line, or a .bin/.f64 binary array");
    gen->excludes(in);
    app.add_option("--input-format", flags.input_format, "auto, text or binary")
        ->check(CLI::IsMember({"auto", "text", "binary"}));
    app.add_option("--seed", flags.seed, "seed for randomized generators");
    app.add_option("--n", flags.n, "use only the first n elements");
}

SortedView open_input(const InputFlags& flags, bool forbid_negative)
{
    SortedView view = [&] {
        if (!flags.generator.empty())
            return make_view(parse_generator(flags.generator, flags.seed));
        if (flags.input.empty())
            throw ParameterError("one of --generator or --input is required");
        const FileFormat format = flags.input_format == "text"     ? FileFormat::text
                                  : flags.input_format == "binary" ? FileFormat::binary
                                                                   : FileFormat::automatic;
        std::vector<double> values = read_numbers(flags.input, format);
        validate_numbers(values, forbid_negative);
        return SortedView::from_values(std::move(values), Validation::skip);
    }();
    if (flags.n < 0 || flags.n > view.length())
        throw ParameterError("--n must lie in [1, " + std::to_string(view.length()) + "]");
    return view;
}

Position prefix(const InputFlags& flags, const SortedView& view) { return flags.n > 0 ? flags.n : view.length(); }

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string csv_cell(const json& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_float())
        return format_number(v.get<double>());
    return v.dump();
}

// Scalar fields of each object as one CSV table.
void write_csv(std::ostream& out, const std::vector<json>& rows)
{
    if (rows.empty())
        return;
    std::vector<std::string> keys;
    for (const auto& [key, value] : rows.front().items())
        if (value.is_primitive())
            keys.push_back(key);
    for (std::size_t i = 0; i < keys.size(); ++i)
        out << (i ? "," : "") << keys[i];
    out << "\n";
    for (const auto& row : rows)
    {
        for (std::size_t i = 0; i < keys.size(); ++i)
            out << (i ? "," : "") << csv_cell(row.contains(keys[i]) ? row.at(keys[i]) : json(nullptr));
        out << "\n";
    }
}

void emit(std::ostream& out, const std::string& format, const json& doc)
{
    if (format == "csv")
    {
        if (doc.is_array())
            write_csv(out, std::vector<json>(doc.begin(), doc.end()));
        else
            write_csv(out, {doc});
        return;
    }
    out << doc.dump(2) << "\n";
}

json region_json(const Region& r)
{
    if (r.is_empty())
        return nullptr;
    return json::array({r.lo(), r.hi()});
}

// ---------------------------------------------------------------------------

struct SumFlags
{
    InputFlags input;
    double epsilon = 0.0;
    bool exact = false;
    std::string format = "json";
};

int cmd_sum(const SumFlags& flags, std::ostream& out)
{
    SortedView view = open_input(flags.input, true);
    const Position n = prefix(flags.input, view);

    const auto start = Clock::now();
    SumOptions options;
    options.record_entries = false;
    const SumBreakdown result = approximate_sum(view, flags.epsilon, n, options);
    const double elapsed = ms_since(start);

    RunReport report;
    report.n = n;
    report.epsilon = flags.epsilon;
    report.estimate = result.estimate;
    report.queries = view.ledger().count();
    report.cycles = result.cycles;
    report.regions = result.cycles;
    report.wall_ms = elapsed;
    if (flags.exact)
    {
        SortedView scan = view;
        scan.ledger().reset();
        const SumCertificate cert = verify_sum(scan, n, result.estimate, flags.epsilon);
        report.exact = cert.exact;
        report.verdict = cert.pass;
    }

    if (flags.format == "csv")
        out << to_csv(report);
    else
        out << to_json(report).dump(2) << "\n";
    return report.verdict.value_or(true) ? kOk : kFail;
}

struct RegionFlags
{
    InputFlags input;
    double b = 0.0;
    double delta = 0.0;
    bool exact = false;
    std::string format = "json";
};

int cmd_region(const RegionFlags& flags, std::ostream& out)
{
    SortedView view = open_input(flags.input, false);
    const Position n = prefix(flags.input, view);
    const auto start = Clock::now();
    const RegionTrace trace = approximate_region_traced(view, flags.b, flags.delta, n);
    const double elapsed = ms_since(start);

    json doc;
    doc["n"] = n;
    doc["b"] = flags.b;
    doc["delta"] = flags.delta;
    doc["region"] = region_json(trace.region);
    doc["size"] = trace.region.size();
    doc["queries"] = view.ledger().count();
    doc["exit"] = trace.exit;
    doc["growth_cycles"] = trace.growth_cycles;
    doc["shrink_cycles"] = trace.shrink_cycles;
    doc["trimmed"] = trace.trimmed;
    doc["wall_ms"] = elapsed;
    int code = kOk;
    if (flags.exact)
    {
        SortedView scan = view;
        scan.ledger().reset();
        const Region exact = exact_b_region_bisect(scan, flags.b, n);
        const RegionVerdict verdict = verify_region_certificate(scan, flags.b, flags.delta, trace.region, n);
        doc["exact_region"] = region_json(exact);
        doc["exact_size"] = exact.size();
        doc["verdict"] = verdict.pass ? "pass" : "fail";
        if (!verdict.pass)
        {
            doc["reason"] = verdict.reason;
            code = kFail;
        }
    }
    emit(out, flags.format, doc);
    return code;
}

struct BenchFlags
{
    std::vector<double> epsilons{0.1, 0.01, 0.001, 0.0001};
    std::int64_t n = 10'000'000;
    int repeats = 100;
    std::string format = "json";
};

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

int cmd_bench(const BenchFlags& flags, std::ostream& out)
{
    if (flags.n < 1 || flags.repeats < 1)
        throw ParameterError("--n and --repeats must be positive");
    const GeneratorSpec linear{"linear", {static_cast<double>(flags.n)}, 0};

    std::vector<double> exact_times;
    double exact = 0.0;
    std::uint64_t exact_queries = 0;
    for (int k = 0; k < flags.repeats; ++k)
    {
        SortedView view = make_view(linear);
        const auto start = Clock::now();
        exact = exact_sum(view, flags.n);
        exact_times.push_back(ms_since(start));
        exact_queries = view.ledger().count();
    }
    const double exact_ms = median(exact_times);

    json rows = json::array();
    for (const double eps : flags.epsilons)
    {
        std::vector<double> times;
        SumBreakdown result;
        std::uint64_t queries = 0;
        SumOptions options;
        options.record_entries = false;
        for (int k = 0; k < flags.repeats; ++k)
        {
            SortedView view = make_view(linear);
            const auto start = Clock::now();
            result = approximate_sum(view, eps, flags.n, options);
            times.push_back(ms_since(start));
            queries = view.ledger().count();
        }
        const double approx_ms = median(times);
        json row;
        row["epsilon"] = eps;
        row["n"] = flags.n;
        row["repeats"] = flags.repeats;
        row["approx_queries"] = queries;
        row["exact_queries"] = exact_queries;
        row["cycles"] = result.cycles;
        row["estimate"] = result.estimate;
        row["exact"] = exact;
        row["verdict"] = check_sum(exact, result.estimate, eps).pass ? "pass" : "fail";
        row["approx_median_ms"] = approx_ms;
        row["exact_median_ms"] = exact_ms;
        row["speedup"] = approx_ms > 0 ? exact_ms / approx_ms : 0.0;
        row["flag"] = queries >= static_cast<std::uint64_t>(flags.n) ? "may exceed brute force" : "";
        rows.push_back(row);
    }
    emit(out, flags.format, rows);
    return kOk;
}

// ---------------------------------------------------------------------------

struct AdversaryFlags
{
    std::int64_t n = 4294967296;
    std::optional<double> d;
    double delta = 0.5;
    unsigned m = 16;
    std::string algo;
    std::optional<std::uint64_t> budget;
    std::string prefix = "zeros";
    std::uint64_t zeros = 0;
    std::int64_t skip = 0;
    std::string format = "json";
};

json transcript_json(const std::vector<QueryRecord>& transcript)
{
    json t = json::array();
    for (const auto& q : transcript)
        t.push_back(json::array({q.position, q.answer}));
    return t;
}

int cmd_adversary_region(const AdversaryFlags& flags, std::ostream& out)
{
    const std::string algo = flags.algo.empty() ? "truncated-binsearch" : flags.algo;
    const double d = flags.d.value_or(3.0);
    const RegionFinder finder = builtin_region_finder(algo, d, flags.budget);
    const RegionGameReport r = referee_region_game(finder, flags.n, d, flags.budget, algo);
    json doc;
    doc["game"] = "region";
    doc["algorithm"] = r.algorithm;
    doc["n"] = r.n;
    doc["d"] = r.d;
    doc["budget"] = r.budget ? json(*r.budget) : json(nullptr);
    doc["queries"] = r.queries;
    doc["lower_bound"] = r.lower_bound;
    doc["output"] = r.outcome == GameOutcome::budget_violation ? json(nullptr) : region_json(r.output);
    doc["final_interval"] = region_json(r.final_interval);
    doc["final_ones"] = region_json(r.final_ones);
    doc["l1_first_one"] = r.lists.l1.first_one;
    doc["l2_first_one"] = r.lists.l2.first_one;
    doc["fails_l1"] = r.fails_l1;
    doc["fails_l2"] = r.fails_l2;
    doc["outcome"] = std::string(to_string(r.outcome));
    doc["detail"] = r.detail;
    doc["transcript"] = transcript_json(r.transcript);
    emit(out, flags.format, doc);
    return r.outcome == GameOutcome::not_defeated ? kOk : kFail;
}

int cmd_adversary_block(const AdversaryFlags& flags, std::ostream& out)
{
    const std::string algo = flags.algo.empty() ? "prefix-sampler" : flags.algo;
    BlockListSpec spec;
    spec.d = flags.d.value_or(2.0);
    spec.delta = flags.delta;
    spec.m = flags.m;
    spec.prefix = flags.prefix == "spike" ? PrefixKind::spike : PrefixKind::zeros;
    spec.prefix_zeros = flags.zeros;
    const SumEstimator estimator = builtin_sum_estimator(algo, spec.d);
    const BlockGameReport r = referee_block_game(estimator, spec, flags.budget, algo);
    const BlockLists lists = build_block_lists(spec, {});
    json doc;
    doc["game"] = "block";
    doc["algorithm"] = r.algorithm;
    doc["d"] = spec.d;
    doc["delta"] = spec.delta;
    doc["c"] = lists.ratio();
    doc["m"] = spec.m;
    doc["n"] = lists.length();
    doc["budget"] = r.budget ? json(*r.budget) : json(nullptr);
    doc["bound_applies"] = r.bound_applies;
    doc["queries"] = r.queries;
    doc["outcome"] = std::string(to_string(r.outcome));
    if (r.outcome != GameOutcome::budget_violation)
    {
        doc["estimate"] = r.estimate;
        doc["sum_l1"] = r.sum_l1.str();
        doc["sum_l2"] = r.sum_l2.str();
        doc["sum_l1_upper_bound"] = lists.l1_upper_bound().str();
        doc["sum_l2_lower_bound"] = lists.l2_lower_bound().str();
        doc["blocks_upgraded"] = r.blocks_upgraded;
        doc["fails_l1"] = r.fails_l1;
        doc["fails_l2"] = r.fails_l2;
    }
    doc["detail"] = r.detail;
    doc["transcript"] = transcript_json(r.transcript);
    emit(out, flags.format, doc);
    return r.outcome == GameOutcome::not_defeated ? kOk : kFail;
}

int cmd_adversary_negative(const AdversaryFlags& flags, std::ostream& out)
{
    const auto m = static_cast<std::uint64_t>(flags.m);
    const Position skip = flags.skip > 0 ? flags.skip : static_cast<Position>(m + 1);
    const NegativePair pair = negative_list_pair(m, skip);
    SortedView l1 = SortedView::from_values(pair.l1);
    SortedView l2 = SortedView::from_values(pair.l2);
    json doc;
    doc["game"] = "negative";
    doc["m"] = m;
    doc["n"] = pair.l1.size();
    doc["skipped"] = pair.skipped;
    doc["skipped_value_l1"] = pair.l1[static_cast<std::size_t>(skip - 1)];
    doc["skipped_value_l2"] = pair.l2[static_cast<std::size_t>(skip - 1)];
    doc["sum_l1"] = exact_sum(l1, l1.length());
    doc["sum_l2"] = exact_sum(l2, l2.length());
    if (pair.l1.size() <= 32)
    {
        doc["l1"] = pair.l1;
        doc["l2"] = pair.l2;
    }
    emit(out, flags.format, doc);
    return kOk;
}
}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sublinear approximate sums of sorted lists, with oracles and lower-bound adversaries", "sortsum"};
    app.require_subcommand(1);

    SumFlags sum;
    auto* sum_cmd = app.add_subcommand("sum", "(1+epsilon)-approximate sum of a sorted nonnegative list");
    add_input_flags(*sum_cmd, sum.input);
    sum_cmd->add_option("--epsilon", sum.epsilon, "accuracy, in (0, 1)")->required();
    sum_cmd->add_flag("--exact", sum.exact, "also compute the exact sum and a pass/fail verdict");
    sum_cmd->add_option("--format", sum.format)->check(CLI::IsMember({"json", "csv"}));

    RegionFlags region;
    auto* region_cmd = app.add_subcommand("region", "(1+delta)-approximate b-region of a sorted list");
    add_input_flags(*region_cmd, region.input);
    region_cmd->add_option("--b", region.b, "threshold, > 0")->required();
    region_cmd->add_option("--delta", region.delta, "slack, in (0, 1)")->required();
    region_cmd->add_flag("--exact", region.exact, "also compute the exact region and check the certificate");
    region_cmd->add_option("--format", region.format)->check(CLI::IsMember({"json", "csv"}));

    BenchFlags bench;
    auto* bench_cmd = app.add_subcommand("bench", "approximate vs. brute-force summation of x(i) = i");
    bench_cmd->add_option("--epsilons", bench.epsilons, "accuracies to run")->delimiter(',');
    bench_cmd->add_option("--n", bench.n, "list length");
    bench_cmd->add_option("--repeats", bench.repeats, "timed repetitions per setting");
    bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember({"json", "csv"}));

    AdversaryFlags adv;
    auto* adv_cmd = app.add_subcommand("adversary", "play a lower-bound game against a built-in algorithm");
    adv_cmd->require_subcommand(1);
    auto add_common = [&](CLI::App* c) {
        c->add_option("--algo", adv.algo, "built-in algorithm");
        c->add_option("--budget", adv.budget, "query budget");
        c->add_option("--format", adv.format)->check(CLI::IsMember({"json", "csv"}));
    };
    auto* adv_region = adv_cmd->add_subcommand("region", "adaptive adversary for d-approximate 1-regions");
    adv_region->add_option("--n", adv.n, "list length");
    adv_region->add_option("--d", adv.d, "approximation factor, > 1 (default 3)");
    add_common(adv_region);
    auto* adv_block = adv_cmd->add_subcommand("block", "hard list pair for d-approximate sums");
    adv_block->add_option("--d", adv.d, "approximation factor, > 1 (default 2)");
    adv_block->add_option("--m", adv.m, "number of blocks");
    adv_block->add_option("--delta", adv.delta, "slack making (4+delta) d^2 an integer");
    adv_block->add_option("--prefix", adv.prefix, "zeros or spike")->check(CLI::IsMember({"zeros", "spike"}));
    adv_block->add_option("--zeros", adv.zeros, "number of leading zeros for --prefix zeros");
    add_common(adv_block);
    auto* adv_negative = adv_cmd->add_subcommand("negative", "pair of lists with a negative head and sums 0 and 1");
    adv_negative->add_option("--m", adv.m, "number of positive elements");
    adv_negative->add_option("--skip", adv.skip, "position left unqueried (1 = head); default m+1");
    adv_negative->add_option("--format", adv.format)->check(CLI::IsMember({"json", "csv"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kOk;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try
    {
        if (sum_cmd->parsed())
            return cmd_sum(sum, out);
        if (region_cmd->parsed())
            return cmd_region(region, out);
        if (bench_cmd->parsed())
            return cmd_bench(bench, out);
        if (adv_region->parsed())
            return cmd_adversary_region(adv, out);
        if (adv_block->parsed())
            return cmd_adversary_block(adv, out);
        if (adv_negative->parsed())
            return cmd_adversary_negative(adv, out);
    }
    catch (const InputError& e)
    {
        err << "input error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const ParameterError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const MalformedCertificate& e)
    {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
}  // namespace sortsum::cli
