#include <sstream>
#include <string>

#include "doctest.h"

#include "hermite_mc/commands.hpp"

using namespace hermite_mc;

namespace {

struct Run {
    int code;
    std::string out;
    std::string log;
};

Run run(const std::string& cmd, const std::string& config_text, OutputFormat format = OutputFormat::Csv,
        unsigned threads = 1)
{
    std::ostringstream out;
    std::ostringstream log;
    const int code = run_command(cmd, parse_config(config_text), CommandOptions{format, threads}, out, log);
    return {code, out.str(), log.str()};
}

int count_lines(const std::string& s)
{
    int n = 0;
    for (char c : s) {
        n += c == '\n';
    }
    return n;
}

} // namespace

TEST_SUITE("commands")
{
    TEST_CASE("error-study rows")
    {
        const auto r = run("error-study", R"({"space": {"family": "finite_smoothness", "s": 3, "alpha": 2, "gamma": 1},
                                             "n": [100, 1000], "replications": 2000, "seed": 42})");
        CHECK(r.code == kExitOk);
        CHECK(count_lines(r.out) == 3);
        CHECK(r.out.find(",0.1,,") != std::string::npos);
        CHECK(r.out.find(",0.0316227766017,,") != std::string::npos);
        const auto j = run("error-study", R"({"space": {"family": "finite_smoothness", "s": 3, "alpha": 2, "gamma": 1},
                                             "n": [100], "replications": 50, "seed": 42})", OutputFormat::Json);
        const Json row = Json::parse(j.out);
        CHECK(row["theoretical_error"] == 0.1);
        CHECK(row["worst_case_index"] == Json::array({1, 0, 0}));
    }

    TEST_CASE("error-study needs its fields")
    {
        CHECK(run("error-study", R"({"n": [10], "replications": 10})").code == kExitConfig);
        CHECK(run("error-study", R"({"space": {"family": "finite_smoothness", "s": 1, "alpha": 2, "gamma": 1}, "n": [10]})").code ==
              kExitConfig);
        CHECK(run("frobnicate", "{}").code == kExitConfig);
    }

    TEST_CASE("tractability verdicts")
    {
        auto r = run("tractability", R"({"gamma": 1})", OutputFormat::Json);
        CHECK(r.code == kExitOk);
        Json doc = Json::parse(r.out);
        CHECK(doc["verdict"]["strong_polynomial"] == true);
        CHECK(doc["verdict"]["weak"] == true);
        CHECK(doc["diagnostic"].size() == 17);

        r = run("tractability", R"({"gamma": 2, "s_values": [1024]})");
        CHECK(r.out.find("1024,709.782712893,102.4,0.69314718056") != std::string::npos);
        CHECK(r.out.find(R"("strong_polynomial":false,"polynomial":false,"weak":false)") != std::string::npos);

        r = run("tractability", R"({"space": {"family": "analytic", "s": 3, "omega": 0.3, "a": 2, "b": 5}})",
                OutputFormat::Json);
        doc = Json::parse(r.out);
        CHECK(doc["verdict"]["polynomial"] == true);
        CHECK(doc["verdict"]["certificate"]["C"].get<double>() == doctest::Approx(0.09).epsilon(1e-15));

        CHECK(run("tractability", R"({"n": [1]})").code == kExitConfig);
        CHECK(run("tractability", R"({"gamma": 1, "s_values": [1, 2]})").code == kExitConfig);
    }

    TEST_CASE("nmc-table")
    {
        auto r = run("nmc-table", R"({"space": {"family": "finite_smoothness", "s": 7, "alpha": 2, "gamma": 1}, "eps": [0.1]})");
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("7,0.1,100,") != std::string::npos);
        CHECK(r.out.find(R"("slope":null)") != std::string::npos);
        r = run("nmc-table", R"({"space": {"family": "finite_smoothness", "s": 2, "alpha": 2,
                                 "gamma": {"family": "table", "values": [0.9, 0.5], "tail": "constant_last"}},
                                 "eps": [0.1, 0.01, 0.001, 0.0001]})",
                OutputFormat::Json);
        std::istringstream lines(r.out);
        std::string first;
        std::getline(lines, first);
        CHECK(Json::parse(first)["n_mc"] == 90);
        std::string last;
        for (std::string line; std::getline(lines, line);) {
            last = line;
        }
        const double slope = Json::parse(last)["epsilon_exponent"][0]["slope"].get<double>();
        CHECK(std::fabs(slope - 2.0) <= 0.01);
    }

    TEST_CASE("nmc-table overflow keeps earlier rows")
    {
        const auto r = run("nmc-table", R"({"space": {"family": "finite_smoothness", "s": 1, "alpha": 2, "gamma": 2},
                                            "eps": [0.1], "s_values": [1, 500]})");
        CHECK(r.code == kExitNumeric);
        CHECK(r.out.find("1,0.1,200,") != std::string::npos);
        CHECK(r.log.find("numeric failure") != std::string::npos);
    }

    TEST_CASE("kernel-eval")
    {
        auto r = run("kernel-eval", R"({"space": {"family": "analytic", "s": 1, "omega": 0.4, "a": 1, "b": 1},
                                        "points": [{"x": [0.3], "y": [-0.7]}, {"x": [-0.7], "y": [0.3]}]})",
                     OutputFormat::Json);
        CHECK(r.code == kExitOk);
        std::istringstream lines(r.out);
        std::string a, b;
        std::getline(lines, a);
        std::getline(lines, b);
        const Json ja = Json::parse(a), jb = Json::parse(b);
        CHECK(ja["K"] == jb["K"]);
        CHECK(std::fabs(ja["K"].get<double>() - ja["mehler"].get<double>()) <= 1e-9);

        r = run("kernel-eval", R"({"space": {"family": "analytic", "s": 1, "omega": 0.4, "a": 1, "b": 2},
                                   "points": [{"x": [11], "y": [0]}]})");
        CHECK(r.code == kExitWarnings);
        CHECK(r.out.find("mehler") == std::string::npos);
        CHECK(r.out.find("outside_validated_range") != std::string::npos);
    }

    TEST_CASE("output does not depend on thread count")
    {
        const std::string cfg = R"({"space": {"family": "finite_smoothness", "s": 2, "alpha": 2, "gamma": 1},
                                    "n": [30, 60], "replications": 300, "seed": 5})";
        const auto one = run("error-study", cfg, OutputFormat::Csv, 1);
        CHECK(run("error-study", cfg, OutputFormat::Csv, 3).out == one.out);
        CHECK(run("error-study", cfg, OutputFormat::Csv, 0).out == one.out);
    }
}
