#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hermite_mc/multi_index.hpp"

namespace hermite_mc {

// Hermite polynomials orthonormal with respect to the standard Gaussian
// density, H_k = He_k / sqrt(k!). Values are computed with the normalized
// three-term recurrence
//
//   H_0 = 1,  H_1(x) = x,  H_{m+1}(x) = (x H_m(x) - sqrt(m) H_{m-1}(x)) / sqrt(m+1)
//
// which never forms a factorial. The validated range is k <= 200, |x| <= 10;
// larger arguments are evaluated the same way without a guarantee.

inline constexpr std::uint32_t kValidatedDegree = 200;
inline constexpr double kValidatedAbscissa = 10.0;

/// H_k(x). Throws std::domain_error for non-finite x.
double hermite_eval(std::uint32_t k, double x);

/// [H_0(x), ..., H_{k_max}(x)] from a single recurrence pass; entry m is
/// bit-identical to hermite_eval(m, x).
std::vector<double> hermite_eval_batch(std::uint32_t k_max, double x);

/// Writes H_0(x)..H_{out.size()-1}(x) into `out`.
void hermite_eval_batch(double x, std::span<double> out);

/// Product form H_k(x) = prod_j H_{k_j}(x_j); zero exponents are skipped.
/// Throws std::invalid_argument when x.size() != k.dim().
double hermite_eval_multi(const MultiIndex& k, std::span<const double> x);

/// Gauss-Hermite rule for the probability measure with density phi.
struct QuadratureRule {
    std::vector<double> nodes;   // ascending, symmetric about 0
    std::vector<double> weights; // positive, sum to 1
    std::size_t size() const noexcept { return nodes.size(); }
};

/**
 * m-point Gauss rule for the standard Gaussian density, exact for polynomials
 * of degree <= 2m-1.
 *
 * Initial guesses for the positive roots of H_m use the classical asymptotic
 * approximations for the physicists' polynomial (scaled by sqrt(2)); each is
 * refined by Newton's method on the normalized recurrence, with
 * H_m' = sqrt(m) H_{m-1}, until the correction is below 1e-15 |x|. Negative
 * nodes are exact mirrors. Weights are Christoffel numbers
 * w_i = 1 / sum_{k<m} H_k(x_i)^2.
 *
 * Validated for m <= 200. Throws std::invalid_argument for m == 0.
 */
QuadratureRule gauss_hermite_rule(std::size_t m);

} // namespace hermite_mc
