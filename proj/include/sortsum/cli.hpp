#pragma once

#include "sortsum/core.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sortsum::cli
{
// Synthetic input, written `kind:param:...`:
//   linear:N               x(i) = i
//   constant:V:N           x(i) = V
//   geometric:R:N          x(i) = R^(i-1), R >= 1
//   powerblocks:C:M        block k = 1..M holds C^(M-k) copies of C^k
//   zipf:S:N               x(i) = (N - i + 1)^-S
//   spike:H:N              N-1 ones, then H
//   zeros:K:N              K zeros, then 1, 2, ...
//   jitter:N               x(i) = i + u_seed(i), u in [0, 1)
// All are function-backed: no O(n) allocation.
struct GeneratorSpec
{
    std::string kind;
    std::vector<double> params;
    std::uint64_t seed = 0;
};

GeneratorSpec parse_generator(const std::string& text, std::uint64_t seed = 0);
SortedView make_view(const GeneratorSpec& spec);

// Text: one number per line, `#` starts a comment. Binary: little-endian
// uint64 count followed by that many little-endian binary64 values.
enum class FileFormat
{
    automatic,  // binary for .bin / .f64, text otherwise
    text,
    binary,
};

std::vector<double> read_numbers(const std::string& path, FileFormat format = FileFormat::automatic);
void write_binary(const std::string& path, const std::vector<double>& values);

// Throws InputError at the first inversion or non-finite value; with
// forbid_negative also at the first negative element.
void validate_numbers(const std::vector<double>& values, bool forbid_negative);

struct RunReport
{
    std::int64_t n = 0;
    double epsilon = 0.0;
    double estimate = 0.0;
    std::optional<double> exact;
    std::uint64_t queries = 0;
    std::uint64_t cycles = 0;
    std::uint64_t regions = 0;
    double wall_ms = 0.0;
    std::optional<bool> verdict;
};

nlohmann::ordered_json to_json(const RunReport& report);
std::string to_csv(const RunReport& report);  // header line + one row

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

// Full command-line entry point. Exit codes: 0 success or pass, 1 verdict
// failure or defeat, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}  // namespace sortsum::cli
