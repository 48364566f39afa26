#pragma once

#include "sortsum/core.hpp"
#include "sortsum/dyadic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sortsum
{
// The shrink factor of the region search, held exactly.
//
// Tower phase: 2^(2^k). Fraction phase: 1 + 2^-j. step() is an approximate
// square root: step(v)^2 >= v, exact on the tower and one dyadic step per
// call below 2, so no irrational arithmetic is ever needed.
class LadderValue
{
public:
    enum class Phase
    {
        tower,
        fraction,
    };

    static LadderValue tower(unsigned k);
    static LadderValue fraction(unsigned j);

    [[nodiscard]] Phase phase() const noexcept { return phase_; }
    [[nodiscard]] unsigned index() const noexcept { return index_; }

    [[nodiscard]] LadderValue step() const;
    [[nodiscard]] LadderValue square() const;  // tower phase only

    [[nodiscard]] Dyadic exact() const;
    [[nodiscard]] double numeric() const;

    // numeric() >= 1 + delta, decided exactly.
    [[nodiscard]] bool at_least_one_plus(double delta) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const LadderValue&, const LadderValue&) = default;

private:
    LadderValue(Phase phase, unsigned index) : phase_(phase), index_(index) {}

    Phase phase_;
    unsigned index_;
};

inline LadderValue ladder_step(const LadderValue& v) { return v.step(); }

struct RegionOptions
{
    // Re-check the search invariants after each cycle with unmetered reads.
    bool check_invariants = false;
    // Record every shrink cycle in the trace.
    bool trace = false;
};

// One cycle of the shrinking loop.
struct RegionStep
{
    LadderValue factor;    // m_{i+1}
    Dyadic width_before;   // r_i
    BigInt probe_width;    // floor(m_{i+1} * r_i)
    Position probe;        // n - probe_width + 1 (0 when beyond the list)
    bool widened = false;  // probe held a value >= b, r_{i+1} = m_{i+1} r_i
};

struct RegionTrace
{
    Region region;
    // How the region was decided: "empty", "last", "all", or "search".
    std::string exit;
    unsigned growth_cycles = 0;
    LadderValue growth_factor = LadderValue::tower(0);  // m after the growth loop
    std::vector<RegionStep> steps;
    std::uint64_t shrink_cycles = 0;
    Dyadic final_width;           // r at exit
    LadderValue final_factor = LadderValue::tower(0);
    bool trimmed = false;         // left end dropped; it is known to lie below b
};

// Returns a (1+delta)-approximate b-region of X[1..n]: a suffix [s, n]
// holding every position with X[j] >= b in which at least |R|/(1+delta)
// positions hold values >= b. Empty iff X[n] < b.
//
// Uses O(log(1/delta) + log log n) queries: a growth loop squares m until
// X[n - m^2 + 1] < b, then a shrinking loop brackets the boundary between
// floor(r) known hits and floor(m r) known misses, taking approximate square
// roots of m until the bracket is tight enough to certify.
Region approximate_region(SortedView& view, double b, double delta, Position n,
                          const RegionOptions& options = {});

RegionTrace approximate_region_traced(SortedView& view, double b, double delta, Position n,
                                      RegionOptions options = {});
}  // namespace sortsum
