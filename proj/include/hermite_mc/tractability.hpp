#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hermite_mc/weights.hpp"

namespace hermite_mc {

/// min{n : theoretical_error(space, n) <= eps}. Computed as ceil(max_r / eps^2)
/// and then moved by at most a few units so that the floating-point predicate
/// holds exactly at n and fails at n - 1.
/// Throws std::invalid_argument unless 0 < eps < 1, std::overflow_error if
/// the result exceeds 2^53.
std::uint64_t n_mc(const HermiteSpace& space, double eps);

/// S(s) = sum_{j<=s} max(log gamma_j, 0) and its two normalizations.
struct PartialSumRow {
    std::size_t s;
    double S;
    double S_over_log_s;
    double S_over_s;
};

/// Requires s_values ascending with every s >= 2 (std::invalid_argument otherwise).
std::vector<PartialSumRow> partial_sum_diagnostic(const WeightSequenceSpec& gamma,
                                                  const std::vector<std::size_t>& s_values);

/// s = 2^4, 2^5, ..., 2^20.
std::vector<std::size_t> dyadic_s_grid();

struct TractabilityCertificate {
    /// sup_s prod_{j<=s} gamma_j, when finite.
    std::optional<double> C;
    /// log of C; kept separately because C itself can overflow.
    std::optional<double> log_C;
    /// limsup_s S(s) / log s, when finite.
    std::optional<double> A;
    /// 2 whenever strong polynomial tractability holds.
    std::optional<double> epsilon_exponent;
    /// Closed-form description of S(s), or "heuristic" for tables.
    std::string partial_sum_law;
    std::vector<PartialSumRow> partial_sums;
};

struct TractabilityVerdict {
    bool strong_polynomial = false;
    bool polynomial = false;
    bool weak = false;
    /// True when the verdict comes from trend tests, not closed forms.
    bool heuristic = false;
    TractabilityCertificate certificate;
};

/// Heuristic thresholds used for Table sequences.
inline constexpr double kTrendRelativeSpread = 0.01;
inline constexpr double kTrendVanishingRatio = 0.99;

/// Last three values vary by less than kTrendRelativeSpread (relative to the largest).
bool trend_bounded(const std::vector<double>& values);
/// Last value is zero, or the last two successive ratios are below kTrendVanishingRatio.
bool trend_vanishing(const std::vector<double>& values);

/**
 * Tractability verdict for finite-smoothness weights gamma.
 *
 * Built-in families are decided from closed forms of S(s). Tables get a trend
 * verdict over dyadic_s_grid() with heuristic = true. Throws
 * std::invalid_argument if gamma is not nonincreasing.
 */
TractabilityVerdict classify_finite(const WeightSequenceSpec& gamma);

/// Trend-based verdict for any sequence; used for tables and as a cross-check.
TractabilityVerdict classify_heuristic(const WeightSequenceSpec& gamma);

/// All three notions hold; C = omega^(min_{j<=s} a_j).
TractabilityVerdict classify_analytic(const AnalyticSpace& space);

/// Dispatches on the space family.
TractabilityVerdict classify(const HermiteSpace& space);

/// Least-squares slope of log n_mc(eps) against log(1/eps) in dimension s.
/// Requires >= 4 values in (0,1) with max/min >= 100.
double epsilon_exponent_fit(const HermiteSpace& space, const std::vector<double>& eps_grid, std::size_t s);
double epsilon_exponent_fit(const HermiteSpace& space, const std::vector<double>& eps_grid);

struct EcWtRow {
    double eps;
    std::size_t s;
    std::uint64_t n_mc;
    double ratio;
};

/// log n_mc(eps, s) / (s + log(1/eps)) along the path of (eps, s) pairs.
/// For fixed s the ratio tends to 2 as eps -> 0, so it never tends to zero:
/// Monte Carlo is not EC-weakly tractable.
std::vector<EcWtRow> ec_wt_diagnostic(const HermiteSpace& space,
                                      const std::vector<std::pair<double, std::size_t>>& path);

} // namespace hermite_mc
