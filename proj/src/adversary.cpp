#include "sortsum/adversary.hpp"

#include "sortsum/approx_region.hpp"
#include "sortsum/approx_sum.hpp"
#include "sortsum/errors.hpp"
#include "sortsum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace sortsum
{
std::string_view to_string(GameOutcome outcome)
{
    switch (outcome)
    {
    case GameOutcome::defeated:
        return "defeated";
    case GameOutcome::not_defeated:
        return "not-defeated";
    case GameOutcome::budget_violation:
        return "budget-violation";
    }
    return "unknown";
}

namespace
{
BigRational exact_rational(double v)
{
    if (!std::isfinite(v))
        throw ParameterError("cannot represent a non-finite value exactly");
    const bool negative = v < 0;
    const Dyadic d = Dyadic::from_double(negative ? -v : v);
    BigRational r(BigInt(d.mantissa()), BigInt(1) << d.exponent());
    return negative ? BigRational(-r) : r;
}

BigInt big_pow(std::uint64_t base, unsigned e)
{
    BigInt out = 1;
    for (unsigned i = 0; i < e; ++i)
        out *= base;
    return out;
}

// S/d <= s <= d S over exact rationals.
bool within_factor_d(const BigRational& exact, double estimate, double d)
{
    const BigRational s = exact_rational(estimate);
    const BigRational factor = exact_rational(d);
    return exact <= s * factor && s <= factor * exact;
}

constexpr Position kMaxLength = std::numeric_limits<Position>::max() - 1;
}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t block_ratio(const BlockListSpec& spec)
{
    if (!(spec.d > 1.0) || !std::isfinite(spec.d))
        throw ParameterError("approximation factor d must be a finite number > 1");
    if (!(spec.delta > 0.0 && spec.delta < 1.0))
        throw ParameterError("delta must lie in (0, 1)");
    if (spec.m < 1)
        throw ParameterError("the block construction needs m >= 1");
    const double c = (4.0 + spec.delta) * spec.d * spec.d;
    const double rounded = std::round(c);
    if (std::abs(c - rounded) > 1e-9 * c || rounded < 5.0)
        throw ParameterError("(4+delta) d^2 = " + std::to_string(c) +
                             " must be an integer >= 5 so every block size c^(m-i) is integral; "
                             "pick delta = c/d^2 - 4 for an integer c > 4 d^2");
    return static_cast<std::uint64_t>(rounded);
}

BlockLists build_block_lists(const BlockListSpec& spec, std::span<const Position> transcript)
{
    BlockLists out;
    out.spec_ = spec;
    out.c_ = block_ratio(spec);
    out.m_ = spec.m;
    const std::uint64_t c = out.c_;
    const unsigned m = spec.m;

    const BigInt body = (big_pow(c, m) - 1) / (c - 1);  // n' = c^(m-1) + ... + 1
    const BigInt prefix = spec.prefix == PrefixKind::zeros ? BigInt(spec.prefix_zeros) : BigInt(1);
    const BigInt total = body + prefix;
    if (total > kMaxLength || total < 1)
        throw ParameterError("block lists would hold " + total.str() + " elements; the limit is 2^63 - 2");
    out.length_ = total.convert_to<Position>();
    out.prefix_length_ = prefix.convert_to<Position>();

    if (spec.prefix == PrefixKind::spike)
    {
        const double n = static_cast<double>(out.length_);
        out.prefix_value_ = spec.delta * static_cast<double>(c) / (n * n);
        out.prefix_exact_ = exact_rational(out.prefix_value_);
    }
    else
    {
        out.prefix_value_ = 0.0;
        out.prefix_exact_ = 0;
    }

    out.powers_.reserve(m + 2);
    for (unsigned k = 0; k <= m + 1; ++k)
        out.powers_.push_back(big_pow(c, k).convert_to<double>());

    Position start = out.prefix_length_ + 1;
    for (unsigned k = 1; k <= m; ++k)
    {
        out.starts_.push_back(start);
        start += big_pow(c, m - k).convert_to<Position>();
    }
    out.starts_.push_back(start);  // == length + 1

    out.upgraded_.assign(m, true);
    for (const Position p : transcript)
    {
        if (p < 1 || p > out.length_)
            throw ParameterError("transcript position " + std::to_string(p) + " outside the list");
        const unsigned k = out.block_of(p);
        if (k > 0)
            out.upgraded_[k - 1] = false;
    }

    const BigInt top = big_pow(c, m);
    const BigInt above = top * c;
    out.sum_l1_ = BigRational(out.prefix_exact_) + BigRational(top * m);
    BigInt body_l2 = 0;
    for (unsigned k = 1; k <= m; ++k)
        body_l2 += out.upgraded_[k - 1] ? above : top;
    out.sum_l2_ = BigRational(out.prefix_exact_) + BigRational(body_l2);
    return out;
}

Position BlockLists::block_start(unsigned k) const
{
    if (k < 1 || k > m_ + 1)
        throw ParameterError("block index out of range");
    return starts_[k - 1];
}

unsigned BlockLists::block_of(Position p) const
{
    if (p <= prefix_length_)
        return 0;
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), p);
    return static_cast<unsigned>(it - starts_.begin());
}

bool BlockLists::upgraded(unsigned k) const
{
    if (k < 1 || k > m_)
        throw ParameterError("block index out of range");
    return upgraded_[k - 1];
}

unsigned BlockLists::upgraded_count() const
{
    return static_cast<unsigned>(std::count(upgraded_.begin(), upgraded_.end(), true));
}

double BlockLists::value(Position p, bool second) const
{
    const unsigned k = block_of(p);
    if (k == 0)
        return prefix_value_;
    return powers_[(second && upgraded_[k - 1]) ? k + 1 : k];
}

double BlockLists::value_l1(Position p) const { return value(p, false); }
double BlockLists::value_l2(Position p) const { return value(p, true); }

SortedView BlockLists::view_l1() const
{
    auto self = std::make_shared<const BlockLists>(*this);
    return SortedView::from_generator(length_, [self](Position p) { return self->value_l1(p); });
}

SortedView BlockLists::view_l2() const
{
    auto self = std::make_shared<const BlockLists>(*this);
    return SortedView::from_generator(length_, [self](Position p) { return self->value_l2(p); });
}

std::vector<double> BlockLists::values_l1(Position limit) const
{
    if (length_ > limit)
        throw ParameterError("block list of " + std::to_string(length_) + " elements is too long to materialize");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(length_));
    for (Position p = 1; p <= length_; ++p)
        out.push_back(value_l1(p));
    return out;
}

std::vector<double> BlockLists::values_l2(Position limit) const
{
    if (length_ > limit)
        throw ParameterError("block list of " + std::to_string(length_) + " elements is too long to materialize");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(length_));
    for (Position p = 1; p <= length_; ++p)
        out.push_back(value_l2(p));
    return out;
}

BigRational BlockLists::l1_upper_bound() const
{
    return (exact_rational(spec_.delta) + 1) * BigRational(big_pow(c_, m_) * m_);
}

BigRational BlockLists::l2_lower_bound() const
{
    return BigRational(BigInt(m_), 4) * BigRational(big_pow(c_, m_ + 1));
}

BlockGameReport referee_block_game(const SumEstimator& estimator, const BlockListSpec& spec,
                                   std::optional<std::uint64_t> budget, std::string name)
{
    BlockGameReport report;
    report.algorithm = std::move(name);
    report.budget = budget;
    report.bound_applies = budget && *budget <= (3ULL * spec.m) / 4;

    const BlockLists l1_only = build_block_lists(spec, {});
    SortedView channel = l1_only.view_l1();
    channel.ledger().enable_transcript();
    channel.set_query_limit(budget);

    try
    {
        report.estimate = estimator(channel);
    }
    catch (const BudgetExceeded& e)
    {
        report.outcome = GameOutcome::budget_violation;
        report.queries = channel.ledger().count();
        report.transcript = channel.ledger().transcript();
        report.detail = std::string("aborted: ") + e.what();
        return report;
    }
    report.queries = channel.ledger().count();
    report.transcript = channel.ledger().transcript();

    const std::vector<Position> touched = channel.ledger().distinct_positions();
    const BlockLists lists = build_block_lists(spec, touched);
    report.sum_l1 = lists.sum_l1();
    report.sum_l2 = lists.sum_l2();
    report.blocks_upgraded = lists.upgraded_count();
    report.fails_l1 = !within_factor_d(lists.sum_l1(), report.estimate, spec.d);
    report.fails_l2 = !within_factor_d(lists.sum_l2(), report.estimate, spec.d);
    report.outcome =
        (report.fails_l1 || report.fails_l2) ? GameOutcome::defeated : GameOutcome::not_defeated;

    std::ostringstream detail;
    if (report.fails_l1)
        detail << "estimate is not a " << spec.d << "-approximation of S1";
    if (report.fails_l2)
        detail << (report.fails_l1 ? "; " : "") << "estimate is not a " << spec.d
               << "-approximation of S2 (" << report.blocks_upgraded << " blocks upgraded)";
    if (!report.fails_l1 && !report.fails_l2)
        detail << "estimate approximates both sums";
    report.detail = detail.str();
    return report;
}

namespace
{
double epsilon_for(double d) { return std::min(0.5, 0.9 * (d - 1.0)); }
}  // namespace

SumEstimator builtin_sum_estimator(std::string_view name, double d)
{
    if (name == "prefix-sampler")
    {
        return [](SortedView& view) {
            const std::uint64_t limit = view.query_limit().value_or(16);
            const Position take = static_cast<Position>(std::min<std::uint64_t>(
                limit, static_cast<std::uint64_t>(view.length())));
            if (take == 0)
                return 0.0;
            double total = 0.0;
            for (Position p = 1; p <= take; ++p)
                total += view.get(p).value();
            return total / static_cast<double>(take) * static_cast<double>(view.length());
        };
    }
    if (name == "truncated")
    {
        const double eps = epsilon_for(d);
        return [eps](SortedView& view) {
            SumOptions options;
            options.stop_on_budget = true;
            options.record_entries = false;
            return approximate_sum(view, eps, view.length(), options).estimate;
        };
    }
    if (name == "approx-sum")
    {
        const double eps = epsilon_for(d);
        return [eps](SortedView& view) {
            SumOptions options;
            options.record_entries = false;
            return approximate_sum(view, eps, view.length(), options).estimate;
        };
    }
    if (name == "exact-scanner")
        return [](SortedView& view) { return exact_sum(view, view.length()); };
    if (name == "constant-output")
        return [](SortedView&) { return 0.0; };
    throw ParameterError("unknown sum estimator '" + std::string(name) + "'");
}

std::vector<std::string> builtin_sum_estimator_names()
{
    return {"prefix-sampler", "truncated", "approx-sum", "exact-scanner", "constant-output"};
}

// ---------------------------------------------------------------------------

SortedView StepList::view() const
{
    const StepList copy = *this;
    return SortedView::from_generator(n, [copy](Position p) { return copy.at(p); });
}

std::vector<double> StepList::values() const
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Position p = 1; p <= n; ++p)
        out.push_back(at(p));
    return out;
}

RegionAdversary::RegionAdversary(Position n) : n_(n), zeros_through_(1), ones_from_(n)
{
    if (n < 2 || n > kMaxLength)
        throw ParameterError("the region adversary needs 2 <= n < 2^63 - 1");
}

int RegionAdversary::answer(Position p)
{
    if (p < 1 || p > n_)
        throw ParameterError("query position " + std::to_string(p) + " outside [1, " + std::to_string(n_) + "]");
    ++stage_;
    if (p <= zeros_through_)
    {
        last_case_ = AnswerCase::decided_zero;
        return 0;
    }
    if (p >= ones_from_)
    {
        last_case_ = AnswerCase::decided_one;
        return 1;
    }
    using u128 = unsigned __int128;
    const auto tail = static_cast<u128>(n_ - p + 1);
    const auto whole = static_cast<u128>(n_ - zeros_through_ + 1);
    const auto right = static_cast<u128>(n_ - ones_from_ + 1);
    // |[p,n]| / |I^R| >= sqrt(|I| / |I^R|), squared.
    if (tail * tail >= whole * right)
    {
        zeros_through_ = p;
        last_case_ = AnswerCase::cut_zero;
        return 0;
    }
    ones_from_ = p;
    last_case_ = AnswerCase::cut_one;
    return 1;
}

std::optional<int> RegionAdversary::decided(Position p) const
{
    if (p <= zeros_through_)
        return 0;
    if (p >= ones_from_)
        return 1;
    return std::nullopt;
}

bool RegionAdversary::size_invariant_holds(long double tolerance) const
{
    const long double whole = static_cast<long double>(n_ - zeros_through_ + 1);
    const long double right = static_cast<long double>(n_ - ones_from_ + 1);
    const long double have = std::log2(whole) - std::log2(right);
    const long double need = std::ldexp(std::log2(static_cast<long double>(n_)), -static_cast<int>(
                                                                                   std::min<std::uint64_t>(stage_, 20000)));
    return have + tolerance * std::max(1.0L, need) >= need;
}

FinalLists RegionAdversary::finalize() const
{
    return FinalLists{StepList{n_, ones_from_}, StepList{n_, zeros_through_ + 1}};
}

bool is_approximate_one_region(const StepList& list, const Region& r, double d)
{
    if (r.is_empty() || r.hi() != list.n || r.lo() < 1)
        return false;
    if (r.lo() > list.first_one)
        return false;
    const Dyadic ones{list.ones()};
    return Dyadic{r.size()} <= Dyadic::from_double(d) * ones;
}

RegionGameReport referee_region_game(const RegionFinder& finder, Position n, double d,
                                     std::optional<std::uint64_t> budget, std::string name)
{
    if (!(d > 1.0) || !std::isfinite(d))
        throw ParameterError("approximation factor d must be a finite number > 1");
    RegionGameReport report;
    report.algorithm = std::move(name);
    report.n = n;
    report.d = d;
    report.budget = budget;
    report.lower_bound = std::log2(std::log2(static_cast<double>(n))) - std::log2(std::log2(d + 1.0));

    auto adversary = std::make_shared<RegionAdversary>(n);
    SortedView channel = SortedView::from_generator(
        n, [adversary](Position p) { return static_cast<double>(adversary->answer(p)); });
    channel.ledger().enable_transcript();
    channel.set_query_limit(budget);

    std::optional<Region> output;
    try
    {
        output = finder(channel);
    }
    catch (const BudgetExceeded& e)
    {
        report.detail = std::string("aborted: ") + e.what();
    }
    report.queries = channel.ledger().count();
    report.transcript = channel.ledger().transcript();
    report.final_interval = adversary->interval();
    report.final_ones = adversary->ones();
    report.lists = adversary->finalize();
    if (!output)
    {
        report.outcome = GameOutcome::budget_violation;
        return report;
    }
    report.output = *output;
    report.fails_l1 = !is_approximate_one_region(report.lists.l1, *output, d);
    report.fails_l2 = !is_approximate_one_region(report.lists.l2, *output, d);
    report.outcome =
        (report.fails_l1 || report.fails_l2) ? GameOutcome::defeated : GameOutcome::not_defeated;

    std::ostringstream detail;
    if (report.fails_l1)
        detail << "output is not a " << d << "-approximate 1-region of L1 (ones from "
               << report.lists.l1.first_one << ")";
    if (report.fails_l2)
        detail << (report.fails_l1 ? "; " : "") << "output is not a " << d
               << "-approximate 1-region of L2 (ones from " << report.lists.l2.first_one << ")";
    if (!report.fails_l1 && !report.fails_l2)
        detail << "output is valid for both lists";
    report.detail = detail.str();
    return report;
}

namespace
{
// First position holding a 1, bracketed in [lo, hi); stops early when the
// query allowance runs out and answers [lo, n], which holds every possible one.
Region bisect_ones(SortedView& view, std::optional<std::uint64_t> budget)
{
    const Position n = view.length();
    Position lo = 1;
    Position hi = n + 1;
    std::uint64_t used = 0;
    while (lo < hi)
    {
        if (budget && used >= *budget)
            break;
        const Position mid = lo + (hi - lo) / 2;
        ++used;
        bool one = false;
        try
        {
            one = view.get(mid) >= 1.0;
        }
        catch (const BudgetExceeded&)
        {
            break;
        }
        if (one)
            hi = mid;
        else
            lo = mid + 1;
    }
    return Region{lo, n};
}

std::optional<std::uint64_t> tighter(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b)
{
    if (a && b)
        return std::min(*a, *b);
    return a ? a : b;
}
}  // namespace

RegionFinder builtin_region_finder(std::string_view name, double d, std::optional<std::uint64_t> budget)
{
    if (name == "truncated-binsearch")
        return [budget](SortedView& view) { return bisect_ones(view, tighter(budget, view.query_limit())); };
    if (name == "full-binsearch")
        return [](SortedView& view) { return bisect_ones(view, std::nullopt); };
    if (name == "approx-region")
    {
        const double delta = std::min(0.5, d - 1.0);
        return [delta](SortedView& view) {
            try
            {
                return approximate_region(view, 1.0, delta, view.length());
            }
            catch (const BudgetExceeded&)
            {
                return Region{1, view.length()};
            }
        };
    }
    if (name == "constant-output")
        return [](SortedView& view) { return Region{1, view.length()}; };
    throw ParameterError("unknown region finder '" + std::string(name) + "'");
}

std::vector<std::string> builtin_region_finder_names()
{
    return {"truncated-binsearch", "full-binsearch", "approx-region", "constant-output"};
}

// ---------------------------------------------------------------------------

NegativePair negative_list_pair(std::uint64_t m, Position skipped)
{
    if (m < 1 || m > (1ULL << 25))
        throw ParameterError("m must lie in [1, 2^25]");
    if (skipped < 1 || skipped > static_cast<Position>(m + 1))
        throw ParameterError("skipped position must lie in [1, m+1]");
    NegativePair out;
    out.skipped = skipped;
    out.l1.reserve(m + 1);
    out.l1.push_back(-static_cast<double>(m * (m + 1)));
    for (std::uint64_t k = 1; k <= m; ++k)
        out.l1.push_back(static_cast<double>(2 * k));
    out.l2 = out.l1;
    out.l2[static_cast<std::size_t>(skipped - 1)] += 1.0;
    return out;
}
}  // namespace sortsum
