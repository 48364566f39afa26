#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace sortsum
{
// Caller passed a parameter outside its documented domain (epsilon, delta, b, ...).
class ParameterError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// The data itself breaks a precondition: unsorted, negative, non-finite.
class InputError : public std::runtime_error
{
public:
    InputError(const std::string& what, std::optional<std::int64_t> position = std::nullopt)
        : std::runtime_error(what), position_(position)
    {
    }

    // 1-based position of the first offending element, when one exists.
    [[nodiscard]] std::optional<std::int64_t> position() const noexcept { return position_; }

private:
    std::optional<std::int64_t> position_;
};

// Programming error: an algorithm asked for something it must never ask for.
class ContractViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// A query was refused because the view's query budget is spent.
class BudgetExceeded : public std::runtime_error
{
public:
    explicit BudgetExceeded(std::uint64_t budget)
        : std::runtime_error("query budget of " + std::to_string(budget) + " exhausted"),
          budget_(budget)
    {
    }

    [[nodiscard]] std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t budget_;
};

class MalformedCertificate : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// An invariant the algorithms rely on was observed broken.
class InternalError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};
}  // namespace sortsum
