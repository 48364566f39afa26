#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace sortsum
{
using BigInt = boost::multiprecision::cpp_int;

// Nonnegative dyadic rational mantissa * 2^-exponent, held exactly.
//
// Closed under multiplication, exact to compare and to floor. The mantissa
// is kept odd (or zero) so equal values have equal representations.
class Dyadic
{
public:
    Dyadic() = default;
    explicit Dyadic(std::uint64_t integer) : mantissa_(integer) { normalize(); }
    Dyadic(BigInt mantissa, std::uint64_t exponent);

    // Exact conversion of a finite, nonnegative double.
    static Dyadic from_double(double v);

    [[nodiscard]] const BigInt& mantissa() const noexcept { return mantissa_; }
    [[nodiscard]] std::uint64_t exponent() const noexcept { return exponent_; }

    [[nodiscard]] BigInt floor() const { return mantissa_ >> exponent_; }
    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string to_string() const;

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) = default;

private:
    void normalize();

    BigInt mantissa_ = 0;
    std::uint64_t exponent_ = 0;
};
}  // namespace sortsum
