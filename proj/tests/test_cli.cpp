#include "sortsum/cli.hpp"
#include "sortsum/errors.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sortsum;
using json = nlohmann::ordered_json;

namespace
{
struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("sortsum_test_" + name);
    std::ofstream(path) << content;
    return path;
}

std::vector<std::string> csv_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream s(line);
    std::string f;
    while (std::getline(s, f, ','))
        out.push_back(f);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}
}  // namespace

TEST(Generators, Shapes)
{
    auto linear = cli::make_view(cli::parse_generator("linear:100"));
    EXPECT_EQ(linear.length(), 100);
    EXPECT_EQ(linear.peek(37), 37.0);
    auto blocks = cli::make_view(cli::parse_generator("powerblocks:3:3"));
    EXPECT_EQ(blocks.length(), 9 + 3 + 1);
    EXPECT_EQ(blocks.peek(9), 3.0);
    EXPECT_EQ(blocks.peek(12), 9.0);
    EXPECT_EQ(blocks.peek(13), 27.0);
    auto spike = cli::make_view(cli::parse_generator("spike:64:10"));
    EXPECT_EQ(spike.peek(9), 1.0);
    EXPECT_EQ(spike.peek(10), 64.0);
    auto zeros = cli::make_view(cli::parse_generator("zeros:4:10"));
    EXPECT_EQ(zeros.peek(4), 0.0);
    EXPECT_EQ(zeros.peek(5), 1.0);
    EXPECT_THROW((void)cli::make_view(cli::parse_generator("linear:0")), ParameterError);
    EXPECT_THROW((void)cli::make_view(cli::parse_generator("bogus:3")), ParameterError);
    EXPECT_THROW((void)cli::parse_generator("linear:x"), ParameterError);
}

TEST(Generators, AllAreMonotone)
{
    for (const std::string g : {"linear:100000", "constant:3:1000", "geometric:1.001:5000", "powerblocks:5:8",
                                "zipf:1.2:100000", "spike:1000:77", "zeros:50:100", "jitter:100000"})
    {
        auto view = cli::make_view(cli::parse_generator(g, 9));
        EXPECT_FALSE(view.spot_check(2000, 1).has_value()) << g;
        EXPECT_GE(view.peek(1), 0.0) << g;
    }
}

TEST(Generators, JitterDependsOnSeedOnly)
{
    auto a = cli::make_view(cli::parse_generator("jitter:1000", 1));
    auto b = cli::make_view(cli::parse_generator("jitter:1000", 1));
    auto c = cli::make_view(cli::parse_generator("jitter:1000", 2));
    EXPECT_EQ(a.peek(500), b.peek(500));
    EXPECT_NE(a.peek(500), c.peek(500));
}

TEST(Files, TextAndBinaryRoundTrip)
{
    const auto text = temp_file("ok.txt", "# header\n1\n2.5  # inline\n\n4\n");
    EXPECT_EQ(cli::read_numbers(text.string()), (std::vector<double>{1, 2.5, 4}));
    const auto bin = std::filesystem::temp_directory_path() / "sortsum_test_ok.bin";
    cli::write_binary(bin.string(), {0.1, 0.2, 1e300});
    EXPECT_EQ(cli::read_numbers(bin.string()), (std::vector<double>{0.1, 0.2, 1e300}));
}

TEST(Files, Errors)
{
    const auto garbage = temp_file("bad.txt", "1\n2\nthree\n");
    try
    {
        (void)cli::read_numbers(garbage.string());
        FAIL();
    }
    catch (const InputError& e)
    {
        EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
    }
    const auto truncated = std::filesystem::temp_directory_path() / "sortsum_test_short.bin";
    {
        std::ofstream out(truncated, std::ios::binary);
        const std::uint64_t count = 5;
        out.write(reinterpret_cast<const char*>(&count), 8);
    }
    EXPECT_THROW((void)cli::read_numbers(truncated.string()), InputError);
    EXPECT_THROW((void)cli::read_numbers("/nonexistent/sortsum.txt"), InputError);
    try
    {
        cli::validate_numbers({1, 3, 2, 4}, true);
        FAIL();
    }
    catch (const InputError& e)
    {
        EXPECT_EQ(e.position(), 3);
    }
    EXPECT_THROW(cli::validate_numbers({-1, 3}, true), InputError);
    EXPECT_NO_THROW(cli::validate_numbers({-1, 3}, false));
}

TEST(Cli, SumWithExact)
{
    const Outcome o = run({"sum", "--generator", "linear:100", "--epsilon", "0.1", "--exact"});
    ASSERT_EQ(o.code, 0) << o.err;
    const json j = json::parse(o.out);
    EXPECT_EQ(j["exact"], 5050.0);
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["n"], 100);
}

TEST(Cli, SumOfZeros)
{
    const Outcome o = run({"sum", "--generator", "constant:0:1000", "--epsilon", "0.5"});
    ASSERT_EQ(o.code, 0) << o.err;
    const json j = json::parse(o.out);
    EXPECT_EQ(j["estimate"], 0.0);
    EXPECT_EQ(j["queries"], 1);
    EXPECT_TRUE(j["verdict"].is_null());
}

TEST(Cli, UnsortedFileIsAnInputError)
{
    const auto path = temp_file("unsorted.txt", "1\n2\n3\n2.5\n9\n");
    const Outcome o = run({"sum", "--input", path.string(), "--epsilon", "0.01"});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("element 4"), std::string::npos) << o.err;
}

TEST(Cli, NegativeFileNamesTheImpossibility)
{
    const auto path = temp_file("negative.txt", "-12\n2\n4\n6\n");
    const Outcome o = run({"sum", "--input", path.string(), "--epsilon", "0.1"});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("no sublinear-time algorithm"), std::string::npos) << o.err;
    // The region search itself has no sign restriction.
    EXPECT_EQ(run({"region", "--input", path.string(), "--b", "3", "--delta", "0.5", "--exact"}).code, 0);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"sum", "--generator", "linear:10"}).code, 2);                       // no epsilon
    EXPECT_EQ(run({"sum", "--generator", "linear:10", "--epsilon", "1.5"}).code, 2);  // out of range
    EXPECT_EQ(run({"sum", "--generator", "linear:10", "--epsilon", "0.1", "--n", "11"}).code, 2);
    EXPECT_EQ(run({"adversary", "region", "--algo", "nope", "--budget", "3"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RegionExample)
{
    const Outcome o = run({"region", "--generator", "linear:100", "--b", "90", "--delta", "0.5", "--exact"});
    ASSERT_EQ(o.code, 0) << o.err;
    const json j = json::parse(o.out);
    EXPECT_EQ(j["region"], json::array({89, 100}));
    EXPECT_EQ(j["exact_region"], json::array({90, 100}));
    EXPECT_EQ(j["verdict"], "pass");
}

TEST(Cli, JsonAndCsvCarryTheSameNumbers)
{
    const std::vector<std::string> base{"sum", "--generator", "geometric:1.0001:200000", "--epsilon", "0.05", "--exact"};
    auto with = [&](const std::string& format) {
        auto a = base;
        a.insert(a.end(), {"--format", format});
        return run(a);
    };
    const Outcome j = with("json");
    const Outcome c = with("csv");
    ASSERT_EQ(j.code, 0);
    ASSERT_EQ(c.code, 0);
    const json doc = json::parse(j.out);
    std::stringstream lines(c.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    const auto keys = csv_fields(header);
    const auto values = csv_fields(row);
    ASSERT_EQ(keys.size(), values.size());
    ASSERT_EQ(keys.size(), doc.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
    {
        const json& v = doc.at(keys[i]);
        if (keys[i] == "wall_ms")
            continue;
        if (v.is_number())
            EXPECT_EQ(std::stod(values[i]), v.get<double>()) << keys[i];
        else if (v.is_string())
            EXPECT_EQ(values[i], v.get<std::string>()) << keys[i];
    }
}

TEST(Cli, OutputIsDeterministic)
{
    auto strip = [](const std::string& text) {
        json j = json::parse(text);
        if (j.is_object())
            j.erase("wall_ms");
        return j.dump();
    };
    for (const std::vector<std::string> args :
         {std::vector<std::string>{"sum", "--generator", "jitter:100000", "--seed", "7", "--epsilon", "0.1", "--exact"},
          std::vector<std::string>{"region", "--generator", "zipf:1.5:100000", "--b", "0.001", "--delta", "0.1"},
          std::vector<std::string>{"adversary", "region", "--n", "1000000", "--budget", "3"}})
    {
        const Outcome a = run(args);
        const Outcome b = run(args);
        EXPECT_EQ(strip(a.out), strip(b.out));
    }
}

TEST(Cli, AdversaryGames)
{
    const Outcome region = run({"adversary", "region", "--n", "4294967296", "--d", "3", "--algo",
                                "truncated-binsearch", "--budget", "3"});
    EXPECT_EQ(region.code, 1);
    EXPECT_EQ(json::parse(region.out)["outcome"], "defeated");

    const Outcome block = run({"adversary", "block", "--d", "2", "--m", "16", "--budget", "12", "--algo",
                               "prefix-sampler"});
    EXPECT_EQ(block.code, 1);
    EXPECT_EQ(json::parse(block.out)["outcome"], "defeated");

    const Outcome negative = run({"adversary", "negative", "--m", "1000"});
    ASSERT_EQ(negative.code, 0);
    const json j = json::parse(negative.out);
    EXPECT_EQ(j["sum_l1"], 0.0);
    EXPECT_EQ(j["sum_l2"], 1.0);
}

TEST(Cli, BenchSmoke)
{
    const Outcome small = run({"bench", "--n", "1000", "--repeats", "1", "--epsilons", "0.1"});
    ASSERT_EQ(small.code, 0) << small.err;
    const json rows = json::parse(small.out);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0]["exact_queries"], 1000);
    EXPECT_EQ(rows[0]["verdict"], "pass");

    const Outcome tiny_eps = run({"bench", "--n", "1000", "--repeats", "1", "--epsilons", "0.00001", "--format", "csv"});
    ASSERT_EQ(tiny_eps.code, 0);
    EXPECT_NE(tiny_eps.out.find("may exceed brute force"), std::string::npos) << tiny_eps.out;
}
