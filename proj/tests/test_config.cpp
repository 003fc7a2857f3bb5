#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "hermite_mc/config.hpp"

using namespace hermite_mc;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("config")
{
    TEST_CASE("shipped configs round-trip")
    {
        int count = 0;
        for (const auto& entry : std::filesystem::directory_iterator(HERMITE_MC_CONFIG_DIR)) {
            if (entry.path().extension() != ".json") {
                continue;
            }
            INFO(entry.path().string());
            const ExperimentConfig once = parse_config(slurp(entry.path()));
            const std::string text = serialize_config(once);
            const ExperimentConfig twice = parse_config(text);
            CHECK(once == twice);
            CHECK(serialize_config(twice) == text);
            ++count;
        }
        CHECK(count >= 8);
    }

    TEST_CASE("every weight family round-trips")
    {
        const WeightSequenceSpec seqs[] = {
            WeightSequenceSpec::constant(0.1),
            WeightSequenceSpec::polynomial_decay(1.0 / 3.0, 2.5),
            WeightSequenceSpec::geometric(2.0, 0.7),
            WeightSequenceSpec::root_geometric(3.0),
            WeightSequenceSpec::affine_polynomial(1.0, 0.123456789012345678, 2.0),
            WeightSequenceSpec::table({0.9, 0.5, 1e-300}),
        };
        for (const auto& w : seqs) {
            CHECK(weight_from_json(Json::parse(dump_json(to_json(w)))) == w);
        }
    }

    TEST_CASE("bare numbers are constant sequences")
    {
        const auto c = parse_config(R"({"gamma": 0.5})");
        CHECK(*c.gamma == WeightSequenceSpec::constant(0.5));
    }

    TEST_CASE("full document")
    {
        const auto c = parse_config(R"({
            "space": {"family": "analytic", "s": 2, "omega": 0.25, "a": 1, "b": {"family": "constant", "c": 2}},
            "n": [10, 20], "replications": 5, "seed": 18446744073709551615,
            "eps": [0.5], "s_values": [3], "tol": 1e-9,
            "points": [{"x": [0, 1], "y": [2, 3]}], "format": "json", "output": "out.jsonl"})");
        REQUIRE(c.space.has_value());
        CHECK(c.space->is_analytic());
        CHECK(c.n == std::vector<std::uint64_t>{10, 20});
        CHECK(*c.seed == 18446744073709551615ull);
        CHECK(*c.format == OutputFormat::Json);
        CHECK(c.points.size() == 1);
        CHECK(parse_config(serialize_config(c)) == c);
    }

    TEST_CASE("fail fast on bad input")
    {
        const char* bad[] = {
            "not json",
            "[1, 2]",
            R"({"unknown": 1})",
            R"({"space": {"family": "sobolev", "s": 1}})",
            R"({"space": {"family": "finite_smoothness", "s": 1, "alpha": 1, "gamma": 1}})",
            R"({"space": {"family": "finite_smoothness", "s": 0, "alpha": 2, "gamma": 1}})",
            R"({"space": {"family": "finite_smoothness", "s": 1, "alpha": 2}})",
            R"({"space": {"family": "finite_smoothness", "s": 1, "alpha": 2, "gamma": 1, "extra": 3}})",
            R"({"space": {"family": "analytic", "s": 1, "omega": 1.5, "a": 1, "b": 1}})",
            R"({"gamma": {"family": "table", "values": [1, 2], "tail": "constant_last"}})",
            R"({"gamma": {"family": "table", "values": [1]}})",
            R"({"gamma": {"family": "table", "values": [1], "tail": "zero"}})",
            R"({"gamma": {"family": "constant", "c": -1}})",
            R"({"gamma": {"family": "weird"}})",
            R"({"replications": 1})",
            R"({"n": [0]})",
            R"({"n": [1.5]})",
            R"({"seed": -3})",
            R"({"eps": [1.0]})",
            R"({"tol": 0})",
            R"({"s_values": [0]})",
            R"({"format": "xml"})",
            R"({"space": {"family": "finite_smoothness", "s": 2, "alpha": 2, "gamma": 1}, "points": [{"x": [1], "y": [1]}]})",
            R"({"points": [{"x": [1, 2], "y": [1]}]})",
        };
        for (const char* text : bad) {
            INFO(text);
            CHECK_THROWS_AS(parse_config(text), ConfigError);
        }
    }

    TEST_CASE("number formatting")
    {
        CHECK(dump_json(Json{{"a", 0.1}}) == R"({"a":0.10000000000000001})");
        CHECK(dump_json(Json{{"a", 3}, {"b", "x"}}) == R"({"a":3,"b":"x"})");
        CHECK(dump_json(Json::array({std::numeric_limits<double>::infinity()})) == "[null]");
        CHECK(format_double(0.1, 12) == "0.1");
    }
}
