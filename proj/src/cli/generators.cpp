#include "sortsum/cli.hpp"
#include "sortsum/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <sstream>

namespace sortsum::cli
{
namespace
{
double parse_double(const std::string& token, const std::string& context)
{
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParameterError("cannot read '" + token + "' as a number in generator '" + context + "'");
    return v;
}

Position as_length(double v, const std::string& context)
{
    if (!(v >= 1.0) || v != std::floor(v) || v > 9.2e18)
        throw ParameterError("generator '" + context + "' needs a positive integer length");
    return static_cast<Position>(v);
}

void expect_params(const GeneratorSpec& spec, std::size_t count, const std::string& usage)
{
    if (spec.params.size() != count)
        throw ParameterError("generator '" + spec.kind + "' takes " + usage);
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SortedView power_blocks(double ratio, double blocks, const std::string& context)
{
    if (ratio < 2 || ratio != std::floor(ratio) || blocks < 1 || blocks != std::floor(blocks) || blocks > 62)
        throw ParameterError("generator '" + context + "' needs an integer ratio >= 2 and 1 <= M <= 62");
    const auto c = static_cast<std::uint64_t>(ratio);
    const auto m = static_cast<unsigned>(blocks);
    // starts[k-1] = first position of block k; sizes c^(m-k).
    auto starts = std::make_shared<std::vector<Position>>();
    Position start = 1;
    for (unsigned k = 1; k <= m; ++k)
    {
        starts->push_back(start);
        unsigned __int128 size = 1;
        for (unsigned e = 0; e < m - k; ++e)
        {
            size *= c;
            if (size > (static_cast<unsigned __int128>(1) << 62))
                throw ParameterError("generator '" + context + "' is longer than 2^62 elements");
        }
        start += static_cast<Position>(size);
        if (start > (Position{1} << 62))
            throw ParameterError("generator '" + context + "' is longer than 2^62 elements");
    }
    const Position length = start - 1;
    return SortedView::from_generator(length, [starts, c](Position p) {
        const auto k = static_cast<int>(std::upper_bound(starts->begin(), starts->end(), p) - starts->begin());
        return std::pow(static_cast<double>(c), k);
    });
}
}  // namespace

GeneratorSpec parse_generator(const std::string& text, std::uint64_t seed)
{
    GeneratorSpec spec;
    spec.seed = seed;
    std::stringstream stream(text);
    std::string token;
    if (!std::getline(stream, token, ':') || token.empty())
        throw ParameterError("empty generator specification");
    spec.kind = token;
    while (std::getline(stream, token, ':'))
        spec.params.push_back(parse_double(token, text));
    return spec;
}

SortedView make_view(const GeneratorSpec& spec)
{
    const std::string& k = spec.kind;
    if (k == "linear")
    {
        expect_params(spec, 1, "N");
        return SortedView::from_generator(as_length(spec.params[0], k),
                                          [](Position i) { return static_cast<double>(i); });
    }
    if (k == "constant")
    {
        expect_params(spec, 2, "V:N");
        const double v = spec.params[0];
        if (!(v >= 0) || !std::isfinite(v))
            throw ParameterError("constant generator needs a finite nonnegative value");
        return SortedView::from_generator(as_length(spec.params[1], k), [v](Position) { return v; });
    }
    if (k == "geometric")
    {
        expect_params(spec, 2, "R:N");
        const double r = spec.params[0];
        const Position n = as_length(spec.params[1], k);
        if (!(r >= 1.0) || !std::isfinite(std::pow(r, static_cast<double>(n - 1))))
            throw ParameterError("geometric generator needs R >= 1 with R^(N-1) finite");
        return SortedView::from_generator(n, [r](Position i) { return std::pow(r, static_cast<double>(i - 1)); });
    }
    if (k == "powerblocks")
    {
        expect_params(spec, 2, "C:M");
        return power_blocks(spec.params[0], spec.params[1], k);
    }
    if (k == "zipf")
    {
        expect_params(spec, 2, "S:N");
        const double s = spec.params[0];
        const Position n = as_length(spec.params[1], k);
        if (!(s > 0) || !std::isfinite(s))
            throw ParameterError("zipf generator needs a positive exponent");
        return SortedView::from_generator(
            n, [s, n](Position i) { return std::pow(static_cast<double>(n - i + 1), -s); });
    }
    if (k == "spike")
    {
        expect_params(spec, 2, "H:N");
        const double h = spec.params[0];
        const Position n = as_length(spec.params[1], k);
        if (!(h >= 1.0) || !std::isfinite(h))
            throw ParameterError("spike generator needs a finite height >= 1");
        return SortedView::from_generator(n, [h, n](Position i) { return i == n ? h : 1.0; });
    }
    if (k == "zeros")
    {
        expect_params(spec, 2, "K:N");
        const double zeros = spec.params[0];
        const Position n = as_length(spec.params[1], k);
        if (!(zeros >= 0) || zeros != std::floor(zeros) || zeros > static_cast<double>(n))
            throw ParameterError("zeros generator needs an integer 0 <= K <= N");
        const auto z = static_cast<Position>(zeros);
        return SortedView::from_generator(
            n, [z](Position i) { return i <= z ? 0.0 : static_cast<double>(i - z); });
    }
    if (k == "jitter")
    {
        expect_params(spec, 1, "N");
        const std::uint64_t seed = spec.seed;
        return SortedView::from_generator(as_length(spec.params[0], k), [seed](Position i) {
            const std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)));
            return static_cast<double>(i) + std::ldexp(static_cast<double>(h >> 11), -53);
        });
    }
    throw ParameterError("unknown generator kind '" + k +
                         "' (expected linear, constant, geometric, powerblocks, zipf, spike, zeros, jitter)");
}
}  // namespace sortsum::cli
