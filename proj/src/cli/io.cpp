#include "sortsum/cli.hpp"
#include "sortsum/errors.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace sortsum::cli
{
namespace
{
static_assert(std::endian::native == std::endian::little, "binary ingestion assumes a little-endian host");

bool has_suffix(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<double> read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end)
            throw InputError(path + ":" + std::to_string(line_no) + ": not a number: '" +
                             std::string(begin, end) + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<double> read_binary(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::uint64_t count = 0;
    if (!in.read(reinterpret_cast<char*>(&count), sizeof count))
        throw InputError("'" + path + "' is missing its 8-byte length header");
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::uint64_t>(in.tellg());
    if (bytes != 8 + count * 8)
        throw InputError("'" + path + "' declares " + std::to_string(count) + " values but holds " +
                         std::to_string(bytes) + " bytes");
    in.seekg(8);
    std::vector<double> out(count);
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(count * 8));
    return out;
}
}  // namespace

std::vector<double> read_numbers(const std::string& path, FileFormat format)
{
    if (format == FileFormat::automatic)
        format = (has_suffix(path, ".bin") || has_suffix(path, ".f64")) ? FileFormat::binary : FileFormat::text;
    return format == FileFormat::binary ? read_binary(path) : read_text(path);
}

void write_binary(const std::string& path, const std::vector<double>& values)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    const std::uint64_t count = values.size();
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * 8));
}

void validate_numbers(const std::vector<double>& values, bool forbid_negative)
{
    if (values.empty())
        throw InputError("input holds no numbers");
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        const auto pos = static_cast<Position>(i + 1);
        if (!std::isfinite(values[i]))
            throw InputError("element " + std::to_string(pos) + " is not finite", pos);
        if (i > 0 && values[i] < values[i - 1])
            throw InputError("input is not sorted: element " + std::to_string(pos) + " (" +
                                 format_number(values[i]) + ") is smaller than element " +
                                 std::to_string(pos - 1) + " (" + format_number(values[i - 1]) + ")",
                             pos);
    }
    if (forbid_negative && values.front() < 0)
        throw InputError("element 1 is negative (" + format_number(values.front()) +
                             "); no sublinear-time algorithm can approximate the sum of a sorted list "
                             "that contains a negative element",
                         1);
}

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

nlohmann::ordered_json to_json(const RunReport& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["epsilon"] = r.epsilon;
    j["estimate"] = r.estimate;
    j["exact"] = r.exact ? nlohmann::ordered_json(*r.exact) : nlohmann::ordered_json(nullptr);
    j["queries"] = r.queries;
    j["cycles"] = r.cycles;
    j["regions"] = r.regions;
    j["wall_ms"] = r.wall_ms;
    j["verdict"] = r.verdict ? nlohmann::ordered_json(*r.verdict ? "pass" : "fail") : nlohmann::ordered_json(nullptr);
    return j;
}

std::string to_csv(const RunReport& r)
{
    std::string out = "n,epsilon,estimate,exact,queries,cycles,regions,wall_ms,verdict\n";
    out += std::to_string(r.n) + "," + format_number(r.epsilon) + "," + format_number(r.estimate) + ",";
    out += (r.exact ? format_number(*r.exact) : std::string()) + ",";
    out += std::to_string(r.queries) + "," + std::to_string(r.cycles) + "," + std::to_string(r.regions) + ",";
    out += format_number(r.wall_ms) + ",";
    out += r.verdict ? (*r.verdict ? "pass" : "fail") : "";
    out += "\n";
    return out;
}
}  // namespace sortsum::cli
