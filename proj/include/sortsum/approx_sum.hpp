#pragma once

#include "sortsum/approx_region.hpp"
#include "sortsum/core.hpp"

#include <cstdint>
#include <vector>

namespace sortsum
{
struct SumEntry
{
    Region region;     // R_i
    double threshold;  // b_i
    double partial;    // s_i = |R_i| * b_i
};

struct SumBreakdown
{
    std::vector<SumEntry> entries;
    double estimate = 0.0;
    std::uint64_t cycles = 0;
    double delta = 0.0;
    // Set when the view refused a query and stop_on_budget was requested; the
    // estimate then covers only the completed cycles.
    bool truncated = false;
};

struct SumOptions
{
    // Return the partial estimate instead of propagating BudgetExceeded.
    bool stop_on_budget = false;
    // Keep per-cycle entries (off for long benchmark runs).
    bool record_entries = true;
    RegionOptions region;
};

// (1+epsilon)-approximation of X[1] + ... + X[n] for a nondecreasing,
// nonnegative list.
//
// With delta = 3 epsilon / 4, peels regions off the right end: R_1 is a
// (1+delta)-approximate region for b_1 = X[n]/(1+delta), R_{i+1} the one for
// b_{i+1} = X[r_i - 1]/(1+delta) within X[1 .. r_i - 1], each contributing
// |R_i| b_i. Stops once the remaining prefix is too small to matter (every
// element left is below delta X[n] / (3 n (1+delta))) or is exhausted.
SumBreakdown approximate_sum(SortedView& view, double epsilon, Position n, const SumOptions& options = {});
}  // namespace sortsum
