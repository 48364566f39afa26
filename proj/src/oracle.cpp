#include "sortsum/oracle.hpp"

#include "sortsum/errors.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace sortsum
{
double exact_sum(SortedView& view, Position n)
{
    if (n < 0 || n > view.length())
        throw ParameterError("prefix length " + std::to_string(n) + " outside [0, " +
                             std::to_string(view.length()) + "]");
    double s = 0.0;
    for (Position i = 1; i <= n; ++i)
        s += view.get(i).value();
    return s;
}

Region exact_b_region(SortedView& view, double b, Position n)
{
    Position lo = n + 1;
    while (lo > 1 && view.get(lo - 1) >= b)
        --lo;
    return Region{lo, n};
}

Region exact_b_region_bisect(SortedView& view, double b, Position n)
{
    // First position in [1, n+1) holding a value >= b.
    Position lo = 1;
    Position hi = n + 1;
    while (lo < hi)
    {
        const Position mid = lo + (hi - lo) / 2;
        if (view.get(mid) >= b)
            hi = mid;
        else
            lo = mid + 1;
    }
    return Region{lo, n};
}

namespace
{
// size <= (1 + delta) * hits with integer counts and a binary64 delta,
// evaluated as (size - hits) * 2^-E <= M * hits where delta = M * 2^E.
bool within_factor(std::uint64_t size, std::uint64_t hits, double delta)
{
    if (size <= hits)
        return true;
    if (delta == std::numeric_limits<double>::infinity())
        return hits > 0;
    if (delta == 0.0)
        return false;
    int e = 0;
    const double f = std::frexp(delta, &e);
    const auto mant = static_cast<unsigned __int128>(std::ldexp(f, 53));
    const int shift = 53 - e;  // delta = mant * 2^-shift
    const unsigned __int128 rhs = mant * hits;  // < 2^117
    const unsigned __int128 excess = size - hits;
    if (shift <= 0)
    {
        if (hits == 0)
            return false;
        return -shift >= 11 || excess <= (rhs << -shift);
    }
    if (shift >= 128 || std::bit_width(static_cast<std::uint64_t>(excess)) + shift > 126)
        return false;
    return (excess << shift) <= rhs;
}
}  // namespace

RegionVerdict verify_region_certificate(SortedView& view, double b, double delta, const Region& r, Position n)
{
    if (!(delta >= 0.0))
        throw ParameterError("delta must be nonnegative");
    RegionVerdict out;
    if (r.is_empty())
    {
        out.pass = view.get(n) < b;
        if (!out.pass)
        {
            out.counterexample = n;
            out.reason = "empty region but the last element is >= b";
        }
        return out;
    }
    if (r.hi() != n || r.lo() < 1)
        throw MalformedCertificate("region [" + std::to_string(r.lo()) + ", " + std::to_string(r.hi()) +
                                   "] is not a suffix of [1, " + std::to_string(n) + "]");

    for (Position j = 1; j < r.lo(); ++j)
    {
        if (view.get(j) >= b)
        {
            out.counterexample = j;
            out.reason = "position " + std::to_string(j) + " holds a value >= b outside the region";
            return out;
        }
    }
    for (Position j = r.lo(); j <= n; ++j)
    {
        if (view.get(j) >= b)
            ++out.hits;
    }
    out.pass = within_factor(r.size(), out.hits, delta);
    if (!out.pass)
    {
        out.counterexample = r.lo();
        out.reason = std::to_string(out.hits) + " hits in a region of size " + std::to_string(r.size()) +
                     " is below |R|/(1+delta)";
    }
    return out;
}

SumCertificate check_sum(double exact, double estimate, double epsilon)
{
    SumCertificate c;
    c.exact = exact;
    c.estimate = estimate;
    c.epsilon = epsilon;
    c.pass = exact / (1.0 + epsilon) <= estimate && estimate <= (1.0 + epsilon) * exact;
    if (exact == 0.0)
        c.ratio = estimate == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    else
        c.ratio = estimate / exact;
    return c;
}

SumCertificate verify_sum(SortedView& view, Position n, double estimate, double epsilon)
{
    return check_sum(exact_sum(view, n), estimate, epsilon);
}
}  // namespace sortsum
