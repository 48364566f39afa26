#pragma once

#include "sortsum/core.hpp"

#include <optional>
#include <string>

namespace sortsum
{
// Brute-force references. Every function here reads through the view, so
// exact_sum's n queries show up in the ledger like any other algorithm's.

// X[1] + ... + X[n], left to right in binary64. n = 0 gives 0.
double exact_sum(SortedView& view, Position n);

// Maximal suffix [n', n] of X[1..n] with every value >= b; empty if X[n] < b.
Region exact_b_region(SortedView& view, double b, Position n);
Region exact_b_region_bisect(SortedView& view, double b, Position n);

struct RegionVerdict
{
    bool pass = false;
    // Witness on failure: a position >= b left of the region, or the region's
    // left end when too few hits are inside.
    std::optional<Position> counterexample;
    std::uint64_t hits = 0;
    std::string reason;
};

// Checks R against the definition of a (1+delta)-approximate b-region of
// X[1..n] by full scan. Throws MalformedCertificate if R is non-empty and
// does not end at n.
RegionVerdict verify_region_certificate(SortedView& view, double b, double delta, const Region& r,
                                        Position n);

struct SumCertificate
{
    double exact = 0.0;
    double estimate = 0.0;
    double epsilon = 0.0;
    bool pass = false;
    double ratio = 0.0;  // estimate / exact; 1 when both are 0, inf when only exact is 0
};

// Pass iff exact/(1+eps) <= estimate <= (1+eps) exact.
SumCertificate check_sum(double exact, double estimate, double epsilon);
SumCertificate verify_sum(SortedView& view, Position n, double estimate, double epsilon);
}  // namespace sortsum
