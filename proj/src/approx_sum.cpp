#include "sortsum/approx_sum.hpp"

#include "sortsum/errors.hpp"

#include <cmath>
#include <string>

namespace sortsum
{
namespace
{
double read_nonnegative(SortedView& view, Position p)
{
    const double v = view.get(p).value();
    if (v < 0)
        throw InputError("element " + std::to_string(p) +
                             " is negative; sums of sorted lists with a negative element admit no "
                             "sublinear approximation",
                         p);
    return v;
}
}  // namespace

SumBreakdown approximate_sum(SortedView& view, double epsilon, Position n, const SumOptions& options)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ParameterError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    if (n < 1 || n > view.length())
        throw ParameterError("prefix length " + std::to_string(n) + " outside [1, " +
                             std::to_string(view.length()) + "]");

    SumBreakdown out;
    out.delta = 3.0 * epsilon / 4.0;
    const double delta = out.delta;

    try
    {
        const double top = read_nonnegative(view, n);
        if (top == 0.0)
            return out;

        // Every element left of the last region is below this value, so the
        // uncovered tail sums to less than delta X[n] / (3 (1+delta)).
        const double negligible = delta * top / (3.0 * static_cast<double>(n) * (1.0 + delta));

        Position right = n;  // r_i'
        double head = top;   // X[r_i']
        while (right >= 1 && head >= negligible && head > 0.0)
        {
            const double b = head / (1.0 + delta);
            const Region region = approximate_region(view, b, delta, right, options.region);
            if (region.is_empty() || region.hi() != right)
                throw InternalError("region search returned " +
                                    (region.is_empty() ? std::string("an empty region")
                                                       : "[" + std::to_string(region.lo()) + ", " +
                                                             std::to_string(region.hi()) + "]") +
                                    " for threshold " + std::to_string(b) + " at prefix " +
                                    std::to_string(right));
            const double partial = static_cast<double>(region.size()) * b;
            out.estimate += partial;
            ++out.cycles;
            if (options.record_entries)
                out.entries.push_back({region, b, partial});

            right = region.lo() - 1;
            if (right >= 1)
                head = read_nonnegative(view, right);
        }
    }
    catch (const BudgetExceeded&)
    {
        if (!options.stop_on_budget)
            throw;
        out.truncated = true;
    }
    return out;
}
}  // namespace sortsum
