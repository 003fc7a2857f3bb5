#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "hermite_mc/multi_index.hpp"
#include "hermite_mc/weights.hpp"

namespace hermite_mc {

/// A function on R^s.
using Integrand = std::function<double(std::span<const double>)>;

/// A function represented by finitely many Hermite coefficients f^(k).
class CoefficientFunction {
public:
    /// Entries with |value| below this are dropped on insertion.
    static constexpr double kDropThreshold = 1e-300;

    explicit CoefficientFunction(std::size_t dim);
    CoefficientFunction(std::size_t dim, std::initializer_list<std::pair<MultiIndex, double>> coeffs);

    std::size_t dim() const noexcept { return dim_; }
    /// f^(k); 0 for absent keys.
    double coefficient(const MultiIndex& k) const;
    /// Inserts or overwrites; throws std::invalid_argument on dimension mismatch.
    void set(const MultiIndex& k, double value);

    const std::map<MultiIndex, double>& coefficients() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool empty() const noexcept { return coeffs_.empty(); }

    bool operator==(const CoefficientFunction&) const = default;

private:
    std::size_t dim_;
    std::map<MultiIndex, double> coeffs_;
};

/// Evaluator x -> sum_k f^(k) H_k(x) for a finite coefficient map.
class HermiteExpansion {
public:
    explicit HermiteExpansion(CoefficientFunction f);

    std::size_t dim() const noexcept { return f_.dim(); }
    /// Coordinates (zero-based, ascending) on which some term depends.
    std::span<const std::size_t> support() const noexcept { return support_; }
    const CoefficientFunction& coefficients() const noexcept { return f_; }

    /// Throws std::invalid_argument on dimension mismatch.
    double operator()(std::span<const double> x) const;

private:
    CoefficientFunction f_;
    std::vector<std::size_t> support_;
    std::vector<std::uint32_t> max_degree_; // per support coordinate
};

HermiteExpansion synthesize(const CoefficientFunction& f);

/// <f, g>_{K_r} = sum_k f^(k) g^(k) / r(k) over keys present in both.
double inner_product(const HermiteSpace& space, const CoefficientFunction& f,
                     const CoefficientFunction& g);

double norm(const HermiteSpace& space, const CoefficientFunction& f);

/// Tensor Gauss-Hermite approximation of int f H_k phi_s with an m-point rule
/// per coordinate (m^s evaluations of f).
double hermite_coefficient(const Integrand& f, const MultiIndex& k, std::size_t m);

/// {k*: sqrt(r(k*))}: the unit-norm multiple of H_{k*} at the maximizer of r.
CoefficientFunction worst_case_function(const HermiteSpace& space);

// ---------------------------------------------------------------------------
// Reproducing kernel
// ---------------------------------------------------------------------------

/// Cramer's constant: |H_k(x)| <= kCramer exp(x^2/4) for every k.
inline constexpr double kCramer = 1.0864348112133080;

/**
 * Upper bound on |H_k(x)| valid for all k >= 0.
 *
 * Combines Cramer's inequality with the bound obtained from the Hermite
 * function ODE: Q psi^2 + psi'^2 is nonincreasing in |t| for Q = 2k+1-t^2,
 * which gives
 *
 *   H_k(x)^2 <= e^{x^2/2} ((2k+1) H_k(0)^2 + 2k H_{k-1}(0)^2) / (2k+1 - x^2/2)
 *
 * whenever x^2 < 2(2k+1).
 */
double hermite_envelope(std::uint32_t k, double x);

struct KernelEvaluation {
    double value = 0.0;
    /// Rigorous bound on |K(x,y) - value| from the neglected tail.
    double error_bound = 0.0;
    /// Per-coordinate cutoffs K_j (terms 0..K_j are summed).
    std::vector<std::uint32_t> cutoffs;
    /// Some coordinate lies outside |x_j| <= kValidatedAbscissa.
    bool outside_validated_range = false;
    /// error_bound <= tol was reached before hitting the cutoff cap.
    bool tolerance_met = true;
};

/// Cutoffs are capped at this degree; beyond it tolerance_met is cleared.
inline constexpr std::uint32_t kMaxKernelCutoff = 1u << 26;

/**
 * K_r(x, y) truncated to the product grid {0..K_1} x ... x {0..K_s}.
 *
 * Because r factorizes over coordinates, the grid sum equals the product of
 * univariate sums, which is how it is evaluated. Each univariate tail is
 * bounded by the envelope of hermite_envelope() summed against the
 * coordinate weights; cutoffs are enlarged until the product-perturbation
 * bound prod(|A_j| + B_j) - prod |A_j| is <= tol.
 *
 * Symmetric in x and y bit-for-bit. Throws std::invalid_argument if tol <= 0
 * or the point dimensions do not match the space.
 */
KernelEvaluation kernel_eval(const HermiteSpace& space, std::span<const double> x,
                             std::span<const double> y, double tol);

/// {k: r(k) H_k(x)} over the grid {0..cutoffs[j]} per coordinate.
CoefficientFunction kernel_section_coeffs(const HermiteSpace& space, std::span<const double> x,
                                          std::span<const std::uint32_t> cutoffs);

/// Closed-form Mehler kernel prod_j sum_k w_j^k H_k(x_j) H_k(y_j) with
/// w_j = omega^{a_j}; equal to K_r for analytic spaces with all b_j = 1.
/// Used as a reference value only.
double mehler_reference(const AnalyticSpace& space, std::span<const double> x,
                        std::span<const double> y);

} // namespace hermite_mc
