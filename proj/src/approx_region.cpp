#include "sortsum/approx_region.hpp"

#include "sortsum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sortsum
{
LadderValue LadderValue::tower(unsigned k) { return LadderValue{Phase::tower, k}; }

LadderValue LadderValue::fraction(unsigned j)
{
    if (j == 0)
        throw ParameterError("fraction ladder index starts at 1");
    return LadderValue{Phase::fraction, j};
}

LadderValue LadderValue::step() const
{
    if (phase_ == Phase::tower)
        return index_ > 0 ? tower(index_ - 1) : fraction(1);
    return fraction(index_ + 1);
}

LadderValue LadderValue::square() const
{
    if (phase_ != Phase::tower)
        throw ContractViolation("only tower ladder values square exactly");
    return tower(index_ + 1);
}

Dyadic LadderValue::exact() const
{
    if (phase_ == Phase::tower)
        return Dyadic{BigInt(1) << (std::uint64_t{1} << index_), 0};
    return Dyadic{(BigInt(1) << index_) + 1, index_};
}

double LadderValue::numeric() const
{
    if (phase_ == Phase::tower)
        return index_ >= 11 ? HUGE_VAL : std::ldexp(1.0, 1 << index_);
    return 1.0 + std::ldexp(1.0, -static_cast<int>(index_));
}

bool LadderValue::at_least_one_plus(double delta) const
{
    if (phase_ == Phase::tower)
    {
        if (delta <= 1.0)
            return true;  // every tower value is >= 2
        return exact() >= Dyadic{1} + Dyadic::from_double(delta);
    }
    // 1 + 2^-j >= 1 + delta  <=>  2^-j >= delta; 2^-j is an exact double
    // (or underflows to 0 below every positive delta).
    return std::ldexp(1.0, -static_cast<int>(std::min(index_, 1100u))) >= delta;
}

std::string LadderValue::to_string() const
{
    if (phase_ == Phase::tower)
        return "2^(2^" + std::to_string(index_) + ")";
    return "1+2^-" + std::to_string(index_);
}

namespace
{
Position probe_position(Position n, const BigInt& width)
{
    if (width > n)
        return 0;
    return n - width.convert_to<Position>() + 1;
}

// size <= (1 + delta) * hits, exactly.
bool certifies(const BigInt& size, const BigInt& hits, const Dyadic& delta)
{
    if (size <= hits)
        return true;
    return Dyadic{BigInt(size - hits), 0} <= delta * Dyadic{hits, 0};
}

void validate(const SortedView& view, double b, double delta, Position n)
{
    if (!(delta > 0.0 && delta < 1.0))
        throw ParameterError("delta must lie in (0, 1), got " + std::to_string(delta));
    if (!(b > 0.0) || !std::isfinite(b))
        throw ParameterError("threshold b must be a positive finite number, got " + std::to_string(b));
    if (n < 1 || n > view.length())
        throw ParameterError("prefix length " + std::to_string(n) + " outside [1, " +
                             std::to_string(view.length()) + "]");
}

ExtendedNumber unmetered(const SortedView& view, Position p)
{
    return p <= 0 ? ExtendedNumber::negative_infinity() : ExtendedNumber::finite(view.peek(p));
}

void check_bracket(const SortedView& view, double b, Position n, const LadderValue& m, const Dyadic& r)
{
    const Position known_hit = probe_position(n, r.floor());
    const Position known_miss = probe_position(n, (m.exact() * r).floor());
    if (!(unmetered(view, known_hit) >= b))
        throw InternalError("region search lost its hit bound at position " + std::to_string(known_hit));
    if (!(unmetered(view, known_miss) < b))
        throw InternalError("region search lost its miss bound at position " + std::to_string(known_miss));
}
}  // namespace

RegionTrace approximate_region_traced(SortedView& view, double b, double delta, Position n,
                                      RegionOptions options)
{
    validate(view, b, delta, n);
    RegionTrace out;

    if (view.get(n) < b)
    {
        out.region = Region::empty();
        out.exit = "empty";
        return out;
    }
    if (view.get(n - 1) < b)
    {
        out.region = Region{n, n};
        out.exit = "last";
        return out;
    }
    if (view.get(1) >= b)
    {
        out.region = Region{1, n};
        out.exit = "all";
        return out;
    }
    out.exit = "search";

    // Growth: afterwards X[n-m+1] >= b and X[n-m^2+1] < b.
    LadderValue m = LadderValue::tower(0);
    while (view.get(probe_position(n, m.square().exact().floor())) >= b)
    {
        m = m.square();
        ++out.growth_cycles;
    }
    out.growth_factor = m;
    if (options.check_invariants)
        check_bracket(view, b, n, m, m.exact());

    // Shrink: keep X[n-floor(r)+1] >= b and X[n-floor(m r)+1] < b while m
    // walks down the ladder.
    const Dyadic slack = Dyadic::from_double(delta);
    Dyadic r = m.exact();
    Dyadic m_exact = r;
    for (;;)
    {
        if (!m.at_least_one_plus(delta))
        {
            // The left end of [n-floor(mr)+1, n] is a known miss; dropping it
            // must leave a certified region before we stop.
            const BigInt misses_from = (m_exact * r).floor();
            if (certifies(misses_from - 1, r.floor(), slack))
                break;
        }
        const LadderValue next = m.step();
        Dyadic next_exact = next.exact();
        Dyadic widened = next_exact * r;
        const BigInt probe_width = widened.floor();
        const Position probe = probe_position(n, probe_width);
        const bool hit = view.get(probe) >= b;
        if (options.trace)
            out.steps.push_back(RegionStep{next, r, probe_width, probe, hit});
        if (hit)
            r = std::move(widened);
        m = next;
        m_exact = std::move(next_exact);
        ++out.shrink_cycles;
        if (options.check_invariants)
            check_bracket(view, b, n, m, r);
    }
    out.final_factor = m;
    out.final_width = r;

    const BigInt misses_from = (m_exact * r).floor();
    const BigInt hits = r.floor();
    BigInt width = misses_from;
    if (!(misses_from <= n && certifies(misses_from, hits, slack)))
    {
        width -= 1;
        out.trimmed = true;
    }
    const Position lo = probe_position(n, width);
    out.region = Region{lo < 1 ? 1 : lo, n};
    return out;
}

Region approximate_region(SortedView& view, double b, double delta, Position n, const RegionOptions& options)
{
    RegionOptions quiet = options;
    quiet.trace = false;
    return approximate_region_traced(view, b, delta, n, quiet).region;
}
}  // namespace sortsum
