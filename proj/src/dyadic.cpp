#include "sortsum/dyadic.hpp"

#include "sortsum/errors.hpp"

#include <cmath>

namespace sortsum
{
Dyadic::Dyadic(BigInt mantissa, std::uint64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent)
{
    if (mantissa_ < 0)
        throw ParameterError("dyadic values are nonnegative");
    normalize();
}

Dyadic Dyadic::from_double(double v)
{
    if (!std::isfinite(v) || v < 0)
        throw ParameterError("dyadic conversion needs a finite nonnegative double");
    if (v == 0)
        return Dyadic{};
    int e = 0;
    const double f = std::frexp(v, &e);  // v = f * 2^e, f in [0.5, 1)
    const auto m = static_cast<std::uint64_t>(std::ldexp(f, 53));
    const int shift = e - 53;
    if (shift >= 0)
        return Dyadic{BigInt(m) << shift, 0};
    return Dyadic{BigInt(m), static_cast<std::uint64_t>(-shift)};
}

void Dyadic::normalize()
{
    if (mantissa_ == 0)
    {
        exponent_ = 0;
        return;
    }
    if (exponent_ == 0)
        return;
    const auto trailing = static_cast<std::uint64_t>(boost::multiprecision::lsb(mantissa_));
    const std::uint64_t drop = trailing < exponent_ ? trailing : exponent_;
    if (drop > 0)
    {
        mantissa_ >>= drop;
        exponent_ -= drop;
    }
}

double Dyadic::to_double() const
{
    // Shift down to ~64 significant bits first so huge exponents don't overflow.
    const auto bits = mantissa_ == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(mantissa_)) + 1;
    if (bits > 64)
    {
        const unsigned drop = bits - 64;
        const double head = (mantissa_ >> drop).convert_to<double>();
        return std::ldexp(head, static_cast<int>(drop) - static_cast<int>(exponent_));
    }
    return std::ldexp(mantissa_.convert_to<double>(), -static_cast<int>(exponent_));
}

std::string Dyadic::to_string() const
{
    return mantissa_.str() + "/2^" + std::to_string(exponent_);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b)
{
    return Dyadic{a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_};
}

Dyadic operator+(const Dyadic& a, const Dyadic& b)
{
    if (a.exponent_ >= b.exponent_)
        return Dyadic{a.mantissa_ + (b.mantissa_ << (a.exponent_ - b.exponent_)), a.exponent_};
    return Dyadic{(a.mantissa_ << (b.exponent_ - a.exponent_)) + b.mantissa_, b.exponent_};
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b)
{
    const auto compare = [](const BigInt& lhs, const BigInt& rhs) {
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (rhs < lhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    };
    if (a.exponent_ == b.exponent_)
        return compare(a.mantissa_, b.mantissa_);
    if (a.exponent_ > b.exponent_)
        return compare(a.mantissa_, b.mantissa_ << (a.exponent_ - b.exponent_));
    return compare(a.mantissa_ << (b.exponent_ - a.exponent_), b.mantissa_);
}
}  // namespace sortsum
