#pragma once

#include "sortsum/core.hpp"
#include "sortsum/dyadic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sortsum
{
using BigRational = boost::multiprecision::cpp_rational;

// Executable lower-bound constructions. Each referee owns the query channel
// (a SortedView with a query limit and a transcript), so budgets are enforced
// centrally rather than trusted to the algorithm.

enum class GameOutcome
{
    defeated,
    not_defeated,
    budget_violation,
};

std::string_view to_string(GameOutcome outcome);

// ---------------------------------------------------------------------------
// Hard list pair for approximate sums.
//
// L1 = L0 R_1 R_2 ... R_m where block R_i holds c^(m-i) copies of c^i and
// c = (4+delta) d^2. L2 replaces every block the algorithm never touched by
// as many copies of the next block's value, which multiplies that block's
// contribution by c while keeping both lists sorted and identical on every
// queried position.

enum class PrefixKind
{
    zeros,  // t zeros
    spike,  // a single element h = delta c / n^2
};

struct BlockListSpec
{
    double d = 2.0;
    double delta = 0.5;
    unsigned m = 1;
    PrefixKind prefix = PrefixKind::zeros;
    std::uint64_t prefix_zeros = 0;  // t, for PrefixKind::zeros
};

// Exact c for the spec; ParameterError unless (4+delta) d^2 is an integer >= 5.
std::uint64_t block_ratio(const BlockListSpec& spec);

class BlockLists
{
public:
    [[nodiscard]] std::uint64_t ratio() const noexcept { return c_; }
    [[nodiscard]] unsigned blocks() const noexcept { return m_; }
    [[nodiscard]] Position length() const noexcept { return length_; }
    [[nodiscard]] Position prefix_length() const noexcept { return prefix_length_; }
    [[nodiscard]] double prefix_value() const noexcept { return prefix_value_; }

    // First position of block k (1..m); block_start(m+1) = length()+1.
    [[nodiscard]] Position block_start(unsigned k) const;
    // 0 for the prefix, k for R_k.
    [[nodiscard]] unsigned block_of(Position p) const;
    // Whether R_k was upgraded in L2 (untouched by the transcript).
    [[nodiscard]] bool upgraded(unsigned k) const;
    [[nodiscard]] unsigned upgraded_count() const;

    [[nodiscard]] double value_l1(Position p) const;
    [[nodiscard]] double value_l2(Position p) const;
    [[nodiscard]] SortedView view_l1() const;
    [[nodiscard]] SortedView view_l2() const;
    // Materialized lists; ParameterError above `limit` elements.
    [[nodiscard]] std::vector<double> values_l1(Position limit = 1 << 22) const;
    [[nodiscard]] std::vector<double> values_l2(Position limit = 1 << 22) const;

    // Exact sums of the mathematical lists (values c^k, not their doubles).
    [[nodiscard]] const BigRational& sum_l1() const noexcept { return sum_l1_; }
    [[nodiscard]] const BigRational& sum_l2() const noexcept { return sum_l2_; }

    // (delta+1) m c^m and (m - 3m/4) c^(m+1): the bounds the lower-bound
    // argument compares S1 and S2 against.
    [[nodiscard]] BigRational l1_upper_bound() const;
    [[nodiscard]] BigRational l2_lower_bound() const;

private:
    friend BlockLists build_block_lists(const BlockListSpec& spec, std::span<const Position> transcript);

    [[nodiscard]] double value(Position p, bool second) const;

    BlockListSpec spec_;
    std::uint64_t c_ = 0;
    unsigned m_ = 0;
    Position prefix_length_ = 0;
    double prefix_value_ = 0.0;
    BigRational prefix_exact_;
    Position length_ = 0;
    std::vector<Position> starts_;        // starts_[k-1] = first position of R_k, plus end sentinel
    std::vector<double> powers_;          // powers_[k] = c^k as double, k = 0..m+1
    std::vector<bool> upgraded_;          // per block, index k-1
    BigRational sum_l1_;
    BigRational sum_l2_;
};

BlockLists build_block_lists(const BlockListSpec& spec, std::span<const Position> transcript);

using SumEstimator = std::function<double(SortedView&)>;

struct BlockGameReport
{
    GameOutcome outcome = GameOutcome::not_defeated;
    std::string algorithm;
    std::optional<std::uint64_t> budget;
    std::uint64_t queries = 0;
    std::vector<QueryRecord> transcript;
    double estimate = 0.0;
    BigRational sum_l1;
    BigRational sum_l2;
    bool fails_l1 = false;  // estimate outside [S1/d, d S1]
    bool fails_l2 = false;
    unsigned blocks_upgraded = 0;
    // budget <= floor(3m/4): the construction guarantees defeat of any estimator.
    bool bound_applies = false;
    std::string detail;
};

// Runs the estimator on L1 under the budget (nullopt = unlimited), builds L2
// from its transcript and judges the single answer against both lists.
BlockGameReport referee_block_game(const SumEstimator& estimator, const BlockListSpec& spec,
                                   std::optional<std::uint64_t> budget, std::string name = "custom");

// Built-in estimators: prefix-sampler, truncated, approx-sum, exact-scanner,
// constant-output. `d` picks epsilon for the approx-sum based ones.
SumEstimator builtin_sum_estimator(std::string_view name, double d);
std::vector<std::string> builtin_sum_estimator_names();

// ---------------------------------------------------------------------------
// Adaptive adversary for the d-approximate 1-region problem on 0/1 lists.
//
// Keeps I_j = [a_j, n] ⊇ I_j^R = [b_j, n]; positions <= a_j are decided 0 and
// positions >= b_j decided 1. A query in the undecided gap answers 0 and
// moves a_j up when that keeps |I|/|I^R| at least the square root of its old
// value, otherwise answers 1 and moves b_j down. After j answers
// |I_j| >= n^(1/2^j) |I_j^R|.

enum class AnswerCase
{
    decided_zero = 1,
    decided_one = 2,
    cut_zero = 3,
    cut_one = 4,
};

// A 0/1 list that is 0 before first_one and 1 from first_one on.
struct StepList
{
    Position n = 0;
    Position first_one = 0;

    [[nodiscard]] double at(Position p) const { return p >= first_one ? 1.0 : 0.0; }
    [[nodiscard]] std::uint64_t ones() const { return static_cast<std::uint64_t>(n - first_one + 1); }
    [[nodiscard]] SortedView view() const;
    [[nodiscard]] std::vector<double> values() const;

    friend bool operator==(const StepList&, const StepList&) = default;
};

struct FinalLists
{
    StepList l1;  // ones exactly on I_m^R
    StepList l2;  // ones on [a_m + 1, n]
};

class RegionAdversary
{
public:
    explicit RegionAdversary(Position n);

    // Answer for position p (1 <= p <= n).
    int answer(Position p);

    [[nodiscard]] Position n() const noexcept { return n_; }
    [[nodiscard]] Region interval() const noexcept { return Region{zeros_through_, n_}; }  // I_j
    [[nodiscard]] Region ones() const noexcept { return Region{ones_from_, n_}; }          // I_j^R
    [[nodiscard]] std::uint64_t stage() const noexcept { return stage_; }
    [[nodiscard]] std::optional<AnswerCase> last_case() const noexcept { return last_case_; }
    [[nodiscard]] std::optional<int> decided(Position p) const;

    // |I_j| >= n^(1/2^j) |I_j^R|, checked in log space with relative slack `tolerance`.
    [[nodiscard]] bool size_invariant_holds(long double tolerance = 1e-12L) const;

    // Fill undecided positions: L1 puts ones only on I_m^R, L2 on (a_m, n].
    [[nodiscard]] FinalLists finalize() const;

private:
    Position n_;
    Position zeros_through_;  // a_j
    Position ones_from_;      // b_j
    std::uint64_t stage_ = 0;
    std::optional<AnswerCase> last_case_;
};

inline int adversary_answer(RegionAdversary& state, Position p) { return state.answer(p); }
inline FinalLists adversary_finalize(const RegionAdversary& state) { return state.finalize(); }

// Whether region d is a d-approximate 1-region of the list.
bool is_approximate_one_region(const StepList& list, const Region& r, double d);

using RegionFinder = std::function<Region(SortedView&)>;

struct RegionGameReport
{
    GameOutcome outcome = GameOutcome::not_defeated;
    std::string algorithm;
    Position n = 0;
    double d = 0.0;
    std::optional<std::uint64_t> budget;
    std::uint64_t queries = 0;
    std::vector<QueryRecord> transcript;
    Region output;
    Region final_interval;  // I_m
    Region final_ones;      // I_m^R
    FinalLists lists;
    bool fails_l1 = false;  // |D|/d > |I_m^R| or D misses a one of L1
    bool fails_l2 = false;  // D misses a one of L2, i.e. |D| < |I_m| - 1
    double lower_bound = 0.0;  // log2 log2 n - log2 log2 (d+1)
    std::string detail;
};

RegionGameReport referee_region_game(const RegionFinder& finder, Position n, double d,
                                     std::optional<std::uint64_t> budget, std::string name = "custom");

// Built-in finders: truncated-binsearch, full-binsearch, approx-region,
// constant-output. Each answers within the budget it is given (the
// truncated ones return the smallest region certainly holding every one).
RegionFinder builtin_region_finder(std::string_view name, double d, std::optional<std::uint64_t> budget);
std::vector<std::string> builtin_region_finder_names();

// ---------------------------------------------------------------------------
// Negative head: [-m(m+1), 2, 4, ..., 2m] sums to 0; bumping any one element
// by 1 keeps it sorted and sums to 1, so an algorithm that skips a position
// cannot approximate both.

struct NegativePair
{
    std::vector<double> l1;
    std::vector<double> l2;
    Position skipped = 0;
};

// skipped: 1 for the head, k+1 for the element 2k.
NegativePair negative_list_pair(std::uint64_t m, Position skipped);
}  // namespace sortsum
