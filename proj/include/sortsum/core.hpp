#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace sortsum
{
using Position = std::int64_t;

// A real number or negative infinity. Positions <= 0 of every list read as
// negative infinity, so boundary checks disappear from the search loops.
class ExtendedNumber
{
public:
    static constexpr ExtendedNumber negative_infinity() noexcept { return ExtendedNumber{}; }
    static constexpr ExtendedNumber finite(double v) noexcept { return ExtendedNumber{v}; }

    [[nodiscard]] constexpr bool is_negative_infinity() const noexcept { return !finite_; }
    [[nodiscard]] constexpr bool is_finite() const noexcept { return finite_; }

    // Finite value; -inf for the sentinel.
    [[nodiscard]] constexpr double value() const noexcept
    {
        return finite_ ? value_ : -std::numeric_limits<double>::infinity();
    }

    friend constexpr std::partial_ordering operator<=>(const ExtendedNumber& a, double b) noexcept
    {
        if (!a.finite_)
            return std::partial_ordering::less;
        return a.value_ <=> b;
    }

    friend constexpr std::partial_ordering operator<=>(const ExtendedNumber& a,
                                                       const ExtendedNumber& b) noexcept
    {
        if (!a.finite_ || !b.finite_)
            return a.finite_ <=> b.finite_;
        return a.value_ <=> b.value_;
    }

    friend constexpr bool operator==(const ExtendedNumber& a, double b) noexcept
    {
        return a.finite_ && a.value_ == b;
    }
    friend constexpr bool operator==(const ExtendedNumber&, const ExtendedNumber&) = default;

private:
    constexpr ExtendedNumber() noexcept = default;
    constexpr explicit ExtendedNumber(double v) noexcept : value_(v), finite_(true) {}

    double value_ = 0.0;
    bool finite_ = false;
};

// Closed interval [lo, hi] of 1-based positions, or the empty region.
class Region
{
public:
    constexpr Region() noexcept = default;  // empty
    constexpr Region(Position lo, Position hi) noexcept : lo_(lo), hi_(hi)
    {
        if (hi_ < lo_)
        {
            lo_ = 1;
            hi_ = 0;
        }
    }

    static constexpr Region empty() noexcept { return Region{}; }

    [[nodiscard]] constexpr bool is_empty() const noexcept { return hi_ < lo_; }
    [[nodiscard]] constexpr Position lo() const noexcept { return lo_; }
    [[nodiscard]] constexpr Position hi() const noexcept { return hi_; }

    [[nodiscard]] constexpr std::uint64_t size() const noexcept
    {
        return is_empty() ? 0 : static_cast<std::uint64_t>(hi_ - lo_) + 1;
    }

    [[nodiscard]] constexpr bool contains(Position p) const noexcept { return lo_ <= p && p <= hi_; }

    [[nodiscard]] constexpr bool contains(const Region& other) const noexcept
    {
        return other.is_empty() || (!is_empty() && lo_ <= other.lo_ && other.hi_ <= hi_);
    }

    friend constexpr bool operator==(const Region&, const Region&) = default;

private:
    Position lo_ = 1;
    Position hi_ = 0;
};

constexpr std::uint64_t region_size(const Region& r) noexcept { return r.size(); }

struct QueryRecord
{
    Position position;
    double answer;

    friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

// Counts list accesses. Accesses to positions <= 0 are sentinel reads and are
// never recorded.
class QueryLedger
{
public:
    [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
    [[nodiscard]] bool transcript_enabled() const noexcept { return record_; }
    [[nodiscard]] const std::vector<QueryRecord>& transcript() const noexcept { return transcript_; }

    void enable_transcript(bool on = true) { record_ = on; }

    void reset() noexcept
    {
        count_ = 0;
        transcript_.clear();
    }

    void record(Position p, double answer)
    {
        ++count_;
        if (record_)
            transcript_.push_back({p, answer});
    }

    // Positions in the transcript, sorted, duplicates removed.
    [[nodiscard]] std::vector<Position> distinct_positions() const;

private:
    std::uint64_t count_ = 0;
    bool record_ = false;
    std::vector<QueryRecord> transcript_;
};

enum class Validation
{
    eager,
    skip,
};

// Read-only, metered random access to a nondecreasing sequence X[1..n].
//
// The source is either an in-memory array or a position -> value function.
// Copies share the source but own an independent ledger.
class SortedView
{
public:
    using Generator = std::function<double(Position)>;

    // Throws InputError naming the first inversion (or non-finite value)
    // unless validation is skipped.
    static SortedView from_values(std::vector<double> values, Validation validation = Validation::eager);

    // The generator is trusted to be nondecreasing; see spot_check().
    static SortedView from_generator(Position length, Generator generator);

    [[nodiscard]] Position length() const noexcept { return length_; }
    [[nodiscard]] bool is_generated() const noexcept { return static_cast<bool>(generator_); }

    // X[i]. Negative infinity for i <= 0 (free); ContractViolation for i > n.
    // Throws BudgetExceeded when a query limit is set and already reached.
    ExtendedNumber get(Position i);

    // Unmetered read of an in-range position, for invariant checks and oracles
    // that must not disturb the ledger.
    [[nodiscard]] double peek(Position i) const;

    [[nodiscard]] QueryLedger& ledger() noexcept { return ledger_; }
    [[nodiscard]] const QueryLedger& ledger() const noexcept { return ledger_; }

    void set_query_limit(std::optional<std::uint64_t> limit) noexcept { limit_ = limit; }
    [[nodiscard]] std::optional<std::uint64_t> query_limit() const noexcept { return limit_; }

    // Samples `samples` adjacent pairs (plus both ends) without metering and
    // returns the first sampled i with X[i] > X[i+1], if any.
    [[nodiscard]] std::optional<Position> spot_check(std::size_t samples, std::uint64_t seed) const;

private:
    SortedView() = default;

    Position length_ = 0;
    std::shared_ptr<const std::vector<double>> values_;
    Generator generator_;
    QueryLedger ledger_;
    std::optional<std::uint64_t> limit_;
};

// Position n - width + 1 counted from the end of X[1..n], floored at 0 so that
// widths beyond n land on the sentinel.
constexpr Position position_from_end(Position n, unsigned __int128 width) noexcept
{
    if (width > static_cast<unsigned __int128>(n))
        return 0;
    return n - static_cast<Position>(width) + 1;
}
}  // namespace sortsum
