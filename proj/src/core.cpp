#include "sortsum/core.hpp"

#include "sortsum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace sortsum
{
std::vector<Position> QueryLedger::distinct_positions() const
{
    std::vector<Position> out;
    out.reserve(transcript_.size());
    for (const auto& q : transcript_)
        out.push_back(q.position);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SortedView SortedView::from_values(std::vector<double> values, Validation validation)
{
    if (values.empty())
        throw InputError("a sorted view needs at least one element");
    if (validation == Validation::eager)
    {
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            if (!std::isfinite(values[i]))
                throw InputError("element " + std::to_string(i + 1) + " is not a finite number",
                                 static_cast<Position>(i + 1));
            if (i > 0 && values[i] < values[i - 1])
                throw InputError("list is not nondecreasing: element " + std::to_string(i + 1) +
                                     " is smaller than element " + std::to_string(i),
                                 static_cast<Position>(i + 1));
        }
    }
    SortedView view;
    view.length_ = static_cast<Position>(values.size());
    view.values_ = std::make_shared<const std::vector<double>>(std::move(values));
    return view;
}

SortedView SortedView::from_generator(Position length, Generator generator)
{
    if (length < 1)
        throw ParameterError("a sorted view needs at least one element");
    if (length == std::numeric_limits<Position>::max())
        throw ParameterError("view length must be below 2^63 - 1");
    if (!generator)
        throw ParameterError("generator must be callable");
    SortedView view;
    view.length_ = length;
    view.generator_ = std::move(generator);
    return view;
}

double SortedView::peek(Position i) const
{
    if (i < 1 || i > length_)
        throw ContractViolation("position " + std::to_string(i) + " outside [1, " +
                                std::to_string(length_) + "]");
    if (generator_)
        return generator_(i);
    return (*values_)[static_cast<std::size_t>(i - 1)];
}

ExtendedNumber SortedView::get(Position i)
{
    if (i <= 0)
        return ExtendedNumber::negative_infinity();
    if (i > length_)
        throw ContractViolation("query at position " + std::to_string(i) + " beyond list length " +
                                std::to_string(length_));
    if (limit_ && ledger_.count() >= *limit_)
        throw BudgetExceeded(*limit_);
    const double v = peek(i);
    ledger_.record(i, v);
    return ExtendedNumber::finite(v);
}

std::optional<Position> SortedView::spot_check(std::size_t samples, std::uint64_t seed) const
{
    if (length_ < 2)
        return std::nullopt;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Position> pick(1, length_ - 1);
    std::vector<Position> starts;
    starts.reserve(samples + 2);
    starts.push_back(1);
    starts.push_back(length_ - 1);
    for (std::size_t s = 0; s < samples; ++s)
        starts.push_back(pick(rng));
    std::sort(starts.begin(), starts.end());
    for (const Position i : starts)
    {
        if (peek(i) > peek(i + 1))
            return i;
    }
    return std::nullopt;
}
}  // namespace sortsum
