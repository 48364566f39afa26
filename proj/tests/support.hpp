#pragma once

#include "sortsum/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sortsum::fixtures
{
// Random sorted nonnegative lists from a few shape families.
enum class Family
{
    linear,
    constant,
    geometric,
    power_blocks,
    spike,
    many_zeros,
    random_steps,
};

inline const std::vector<Family>& all_families()
{
    static const std::vector<Family> f{Family::linear, Family::constant,   Family::geometric,   Family::power_blocks,
                                       Family::spike,  Family::many_zeros, Family::random_steps};
    return f;
}

inline std::string family_name(Family f)
{
    switch (f)
    {
    case Family::linear: return "linear";
    case Family::constant: return "constant";
    case Family::geometric: return "geometric";
    case Family::power_blocks: return "power-blocks";
    case Family::spike: return "spike";
    case Family::many_zeros: return "many-zeros";
    case Family::random_steps: return "random-steps";
    }
    return "?";
}

// n drawn log-uniformly from [1, max_n] so tiny lists are exercised as often as large ones.
inline std::int64_t draw_length(std::mt19937_64& rng, std::int64_t max_n)
{
    std::uniform_real_distribution<double> u(0.0, std::log(static_cast<double>(max_n) + 1.0));
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::exp(u(rng))), 1, max_n);
}

inline std::vector<double> make_list(Family f, std::int64_t n, std::mt19937_64& rng)
{
    std::vector<double> x(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (f)
    {
    case Family::linear:
    {
        const double scale = std::ldexp(1.0, static_cast<int>(rng() % 21) - 10);
        for (std::int64_t i = 0; i < n; ++i)
            x[i] = scale * static_cast<double>(i + 1);
        break;
    }
    case Family::constant:
    {
        const double v = (rng() % 8 == 0) ? 0.0 : 1.0 + 100.0 * unit(rng);
        std::fill(x.begin(), x.end(), v);
        break;
    }
    case Family::geometric:
    {
        // Ratio kept small enough that the top stays finite.
        const double ratio = 1.0 + std::min(1.0, 600.0 / static_cast<double>(n)) * unit(rng);
        double v = 1e-3 + unit(rng);
        for (std::int64_t i = 0; i < n; ++i, v *= ratio)
            x[i] = v;
        break;
    }
    case Family::power_blocks:
    {
        const double c = 2.0 + static_cast<double>(rng() % 30);
        // Block sizes shrink by c going right, values grow by c.
        std::int64_t i = n;
        double value = std::pow(c, 1 + static_cast<int>(rng() % 4));
        std::int64_t size = 1;
        while (i > 0)
        {
            for (std::int64_t k = 0; k < size && i > 0; ++k)
                x[--i] = value;
            value /= c;
            size = size * static_cast<std::int64_t>(c) > n ? n : size * static_cast<std::int64_t>(c);
        }
        break;
    }
    case Family::spike:
    {
        const double base = (rng() % 2) ? 0.0 : unit(rng);
        std::fill(x.begin(), x.end(), base);
        x.back() = base + std::ldexp(1.0, static_cast<int>(rng() % 40));
        break;
    }
    case Family::many_zeros:
    {
        const auto zeros = static_cast<std::int64_t>(unit(rng) * static_cast<double>(n));
        for (std::int64_t i = 0; i < n; ++i)
            x[i] = i < zeros ? 0.0 : static_cast<double>(i - zeros + 1);
        break;
    }
    case Family::random_steps:
    {
        double v = 0.0;
        for (std::int64_t i = 0; i < n; ++i)
        {
            if (unit(rng) < 0.1)
                v += std::ldexp(unit(rng), static_cast<int>(rng() % 8));
            x[i] = v;
        }
        break;
    }
    }
    return x;
}

// A threshold that lands inside the list's value range most of the time.
inline double draw_threshold(const std::vector<double>& x, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double pick = x[static_cast<std::size_t>(rng() % x.size())];
    switch (rng() % 4)
    {
    case 0: return pick > 0 ? pick : 1.0;
    case 1: return pick > 0 ? pick * (0.5 + unit(rng)) : 0.5;
    case 2: return std::nextafter(pick > 0 ? pick : 1e-300, 1e308);
    default: return std::max(x.back() * unit(rng) * 1.2, 1e-9);
    }
}
}  // namespace sortsum::fixtures
