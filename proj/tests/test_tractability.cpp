#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "hermite_mc/mc_engine.hpp"
#include "hermite_mc/tractability.hpp"

using namespace hermite_mc;

namespace {

HermiteSpace fs(std::size_t s, double alpha, WeightSequenceSpec g)
{
    return HermiteSpace(FiniteSmoothnessSpace(s, alpha, std::move(g)));
}

HermiteSpace an(std::size_t s, double omega, WeightSequenceSpec a, WeightSequenceSpec b)
{
    return HermiteSpace(AnalyticSpace(s, omega, std::move(a), std::move(b)));
}

std::uint64_t linear_scan(const HermiteSpace& sp, double eps)
{
    std::uint64_t n = 1;
    while (!(theoretical_error(sp, n) <= eps)) {
        ++n;
    }
    return n;
}

void check_hierarchy(const TractabilityVerdict& v)
{
    CHECK((!v.strong_polynomial || v.polynomial));
    CHECK((!v.polynomial || v.weak));
    CHECK(v.certificate.C.has_value() == v.strong_polynomial);
}

} // namespace

TEST_SUITE("tractability")
{
    TEST_CASE("n_mc examples")
    {
        CHECK(n_mc(fs(2, 2.0, WeightSequenceSpec::table({0.9, 0.5})), 0.1) == 90);
        CHECK(n_mc(fs(3, 2.0, WeightSequenceSpec::constant(1.0)), 0.5) == 4);
        CHECK(n_mc(fs(7, 2.0, WeightSequenceSpec::constant(1.0)), 0.1) == 100);
        CHECK(n_mc(an(3, 0.5, WeightSequenceSpec::constant(1.0), WeightSequenceSpec::constant(2.0)), 0.1) == 50);
        CHECK_THROWS_AS(n_mc(fs(1, 2.0, WeightSequenceSpec::constant(1.0)), 0.0), std::invalid_argument);
        CHECK_THROWS_AS(n_mc(fs(1, 2.0, WeightSequenceSpec::constant(1.0)), 1.0), std::invalid_argument);
        CHECK_THROWS_AS(n_mc(fs(200, 2.0, WeightSequenceSpec::constant(2.0)), 0.5), std::overflow_error);
    }

    TEST_CASE("n_mc is minimal and monotone")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int t = 0; t < 60; ++t) {
            const double eps = 0.02 + 0.9 * u(rng);
            const HermiteSpace sp = (t % 2 == 0)
                ? fs(1 + t % 4, 2.0, WeightSequenceSpec::table({0.2 + 2.0 * u(rng), 0.1 + 0.1 * u(rng)}))
                : an(1 + t % 3, 0.05 + 0.9 * u(rng), WeightSequenceSpec::constant(0.1 + 3.0 * u(rng)),
                     WeightSequenceSpec::constant(1.0));
            const auto n = n_mc(sp, eps);
            CHECK(n == linear_scan(sp, eps));
            CHECK(n_mc(sp, eps * 0.9) >= n);
        }
    }

    TEST_CASE("classifier table")
    {
        auto v = classify_finite(WeightSequenceSpec::constant(1.0));
        CHECK((v.strong_polynomial && v.polynomial && v.weak && !v.heuristic));
        CHECK(*v.certificate.C == 1.0);
        CHECK(*v.certificate.epsilon_exponent == 2.0);

        v = classify_finite(WeightSequenceSpec::constant(2.0));
        CHECK((!v.strong_polynomial && !v.polynomial && !v.weak));

        v = classify_finite(WeightSequenceSpec::root_geometric(2.0));
        CHECK((!v.strong_polynomial && v.polynomial && v.weak));
        CHECK(*v.certificate.A == doctest::Approx(std::log(2.0)).epsilon(1e-15));

        v = classify_finite(WeightSequenceSpec::affine_polynomial(1.0, 1.0, 2.0));
        CHECK(v.strong_polynomial);
        // prod (1 + 1/j^2) = sinh(pi)/pi
        CHECK(*v.certificate.C == doctest::Approx(std::sinh(M_PI) / M_PI).epsilon(1e-14));

        for (double c : {0.3, 1.0}) {
            for (double beta : {0.5, 1.0, 3.0}) {
                v = classify_finite(WeightSequenceSpec::polynomial_decay(c, beta));
                CHECK(v.strong_polynomial);
                CHECK(*v.certificate.C == doctest::Approx(c).epsilon(1e-15));
            }
        }
    }

    TEST_CASE("certificates of finite excess families")
    {
        // 3 j^-1: 3, 1.5, 1, ... -> sup of prefix products 4.5
        auto v = classify_finite(WeightSequenceSpec::polynomial_decay(3.0, 1.0));
        CHECK(v.strong_polynomial);
        CHECK(*v.certificate.C == doctest::Approx(4.5).epsilon(1e-14));
        // 4 * 0.5^j: 2, 1, 0.5 -> 2
        v = classify_finite(WeightSequenceSpec::geometric(4.0, 0.5));
        CHECK(*v.certificate.C == doctest::Approx(2.0).epsilon(1e-14));
        // 0.5 + j^-1: 1.5, 1, ... -> 1.5
        v = classify_finite(WeightSequenceSpec::affine_polynomial(0.5, 1.0, 1.0));
        CHECK(*v.certificate.C == doctest::Approx(1.5).epsilon(1e-14));
        // the certificate bounds max r in every dimension
        for (std::size_t s : {1u, 2u, 5u, 40u}) {
            CHECK(max_r_nonzero(fs(s, 2.0, WeightSequenceSpec::polynomial_decay(3.0, 1.0))).value <=
                  *classify_finite(WeightSequenceSpec::polynomial_decay(3.0, 1.0)).certificate.C * (1 + 1e-14));
        }
    }

    TEST_CASE("boundary affine families")
    {
        auto v = classify_finite(WeightSequenceSpec::affine_polynomial(1.0, 0.5, 1.0));
        CHECK((!v.strong_polynomial && v.polynomial && v.weak));
        CHECK(*v.certificate.A == 0.5);
        v = classify_finite(WeightSequenceSpec::affine_polynomial(1.0, 1.0, 0.5));
        CHECK((!v.strong_polynomial && !v.polynomial && v.weak));
        v = classify_finite(WeightSequenceSpec::affine_polynomial(1.1, 1.0, 2.0));
        CHECK((!v.strong_polynomial && !v.polynomial && !v.weak));
        CHECK_THROWS_AS(classify_finite(WeightSequenceSpec::table({1.0, 2.0})), std::invalid_argument);
    }

    TEST_CASE("closed forms agree with diagnostic trends")
    {
        const WeightSequenceSpec families[] = {
            WeightSequenceSpec::constant(1.0),
            WeightSequenceSpec::constant(2.0),
            WeightSequenceSpec::root_geometric(2.0),
            WeightSequenceSpec::affine_polynomial(1.0, 1.0, 2.0),
            WeightSequenceSpec::polynomial_decay(0.8, 1.5),
            WeightSequenceSpec::polynomial_decay(5.0, 2.0),
            WeightSequenceSpec::geometric(3.0, 0.9),
            WeightSequenceSpec::affine_polynomial(1.0, 1.0, 1.0),
            WeightSequenceSpec::affine_polynomial(1.0, 1.0, 0.5),
        };
        for (const auto& g : families) {
            const auto exact = classify_finite(g);
            const auto trend = classify_heuristic(g);
            INFO(g.describe());
            CHECK(exact.strong_polynomial == trend.strong_polynomial);
            CHECK(exact.polynomial == trend.polynomial);
            CHECK(exact.weak == trend.weak);
            check_hierarchy(exact);
            check_hierarchy(trend);
        }
    }

    TEST_CASE("tables get flagged heuristic verdicts")
    {
        const auto v = classify_finite(WeightSequenceSpec::table({0.9, 0.5}));
        CHECK(v.heuristic);
        CHECK(v.strong_polynomial);
        CHECK(*v.certificate.C == doctest::Approx(0.9).epsilon(1e-15));
        const auto w = classify_finite(WeightSequenceSpec::table({3.0, 2.0, 1.5}));
        CHECK(w.heuristic);
        CHECK((!w.strong_polynomial && !w.polynomial && !w.weak));
    }

    TEST_CASE("trend helpers")
    {
        CHECK(trend_bounded({5.0, 0.0, 0.0, 0.0}));
        CHECK(trend_bounded({1.0, 2.0, 2.0, 2.005, 2.01}));
        CHECK_FALSE(trend_bounded({1.0, 2.0, 3.0}));
        CHECK_FALSE(trend_bounded({1.0, 1.0}));
        CHECK(trend_vanishing({1.0, 0.5, 0.25}));
        CHECK(trend_vanishing({1.0, 1.0, 0.0}));
        CHECK_FALSE(trend_vanishing({0.7, 0.7, 0.7}));
    }

    TEST_CASE("analytic verdicts")
    {
        auto v = classify_analytic(AnalyticSpace(4, 0.9, WeightSequenceSpec::constant(0.001), WeightSequenceSpec::constant(1.0)));
        CHECK((v.strong_polynomial && v.polynomial && v.weak));
        v = classify_analytic(AnalyticSpace(2, 0.5, WeightSequenceSpec::table({2.0, 1.0}), WeightSequenceSpec::table({1.0, 3.0})));
        CHECK(*v.certificate.C == 0.5);
        check_hierarchy(v);
    }

    TEST_CASE("partial sums")
    {
        for (const auto& row : partial_sum_diagnostic(WeightSequenceSpec::constant(1.0), {2, 10, 1000})) {
            CHECK(row.S == 0.0);
            CHECK(row.S_over_log_s == 0.0);
            CHECK(row.S_over_s == 0.0);
        }
        const auto two = partial_sum_diagnostic(WeightSequenceSpec::constant(2.0), {1024});
        CHECK(two[0].S == doctest::Approx(1024.0 * std::log(2.0)).epsilon(1e-14));
        CHECK(two[0].S_over_s == doctest::Approx(std::log(2.0)).epsilon(1e-14));
        const auto root = partial_sum_diagnostic(WeightSequenceSpec::root_geometric(2.0), {1000000});
        CHECK(std::fabs(root[0].S_over_log_s - std::log(2.0)) <= 0.05 * std::log(2.0));
        // log 2 * H_s
        CHECK(root[0].S == doctest::Approx(std::log(2.0) * 14.392726722865723631).epsilon(1e-13));
        CHECK_THROWS_AS(partial_sum_diagnostic(WeightSequenceSpec::constant(2.0), {1, 4}), std::invalid_argument);
        CHECK_THROWS_AS(partial_sum_diagnostic(WeightSequenceSpec::constant(2.0), {8, 4}), std::invalid_argument);
    }

    TEST_CASE("epsilon exponent")
    {
        const std::vector<double> grid{1e-1, 1e-2, 1e-3, 1e-4};
        CHECK(std::fabs(epsilon_exponent_fit(fs(3, 2.0, WeightSequenceSpec::constant(1.0)), grid, 3) - 2.0) <= 0.01);
        CHECK(std::fabs(epsilon_exponent_fit(fs(2, 2.0, WeightSequenceSpec::table({0.9, 0.5})), grid) - 2.0) <= 0.01);
        CHECK(std::fabs(epsilon_exponent_fit(an(2, 0.5, WeightSequenceSpec::constant(1.0), WeightSequenceSpec::constant(1.0)), grid) - 2.0) <= 0.01);
        const auto sp = fs(1, 2.0, WeightSequenceSpec::constant(1.0));
        CHECK_THROWS_AS(epsilon_exponent_fit(sp, {0.1, 0.1, 0.1, 0.1}), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_exponent_fit(sp, {0.1, 0.01, 0.001}), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_exponent_fit(sp, {0.1, 0.09, 0.08, 0.07}), std::invalid_argument);
    }

    TEST_CASE("EC-WT ratios")
    {
        const auto unit = fs(1, 2.0, WeightSequenceSpec::constant(1.0));
        const auto single = ec_wt_diagnostic(unit, {{0.1, 1}});
        CHECK(single[0].n_mc == 100);
        CHECK(single[0].ratio == doctest::Approx(std::log(100.0) / (1.0 + std::log(10.0))).epsilon(1e-15));
        CHECK(single[0].ratio == doctest::Approx(1.3944137868717722).epsilon(1e-14));

        const auto a = an(5, 0.5, WeightSequenceSpec::constant(1.0), WeightSequenceSpec::constant(1.0));
        std::vector<std::pair<double, std::size_t>> path;
        for (int m = 2; m <= 8; ++m) {
            path.emplace_back(std::pow(10.0, -m), 5);
        }
        const auto rows = ec_wt_diagnostic(a, path);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].ratio > rows[i - 1].ratio);
            CHECK(rows[i].ratio < 2.0);
        }
        CHECK(rows.back().ratio == doctest::Approx(1.5434314101514275).epsilon(1e-12));

        std::vector<std::pair<double, std::size_t>> grow;
        for (std::size_t s : {1u, 100u, 10000u, 1000000u}) {
            grow.emplace_back(0.1, s);
        }
        const auto g = ec_wt_diagnostic(unit, grow);
        CHECK(g.back().ratio < 1e-5);
        for (std::size_t i = 1; i < g.size(); ++i) {
            CHECK(g[i].ratio < g[i - 1].ratio);
        }
        CHECK_THROWS_AS(ec_wt_diagnostic(unit, {}), std::invalid_argument);
    }
}
