#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hermite_mc/multi_index.hpp"

namespace hermite_mc {

// ---------------------------------------------------------------------------
// Weight sequences w_1, w_2, ... (indices are 1-based, as coordinates of the
// weight sequences are conventionally numbered).
// ---------------------------------------------------------------------------

namespace weight_family {

/// w_j = c
struct Constant {
    double c;
    bool operator==(const Constant&) const = default;
};
/// w_j = c j^(-beta)
struct PolynomialDecay {
    double c;
    double beta;
    bool operator==(const PolynomialDecay&) const = default;
};
/// w_j = c q^j
struct Geometric {
    double c;
    double q;
    bool operator==(const Geometric&) const = default;
};
/// w_j = c^(1/j)
struct RootGeometric {
    double c;
    bool operator==(const RootGeometric&) const = default;
};
/// w_j = base + c j^(-beta)
struct AffinePolynomial {
    double base;
    double c;
    double beta;
    bool operator==(const AffinePolynomial&) const = default;
};

enum class TailRule {
    ConstantLast, // w_j = last listed value for j beyond the table
};

/// Explicit finite list; the tail rule must be declared.
struct Table {
    std::vector<double> values;
    TailRule tail;
    bool operator==(const Table&) const = default;
};

} // namespace weight_family

class WeightSequenceSpec {
public:
    using Family = std::variant<weight_family::Constant, weight_family::PolynomialDecay,
                                weight_family::Geometric, weight_family::RootGeometric,
                                weight_family::AffinePolynomial, weight_family::Table>;

    /// Validates that every generated value is strictly positive.
    explicit WeightSequenceSpec(Family family);

    static WeightSequenceSpec constant(double c);
    static WeightSequenceSpec polynomial_decay(double c, double beta);
    static WeightSequenceSpec geometric(double c, double q);
    static WeightSequenceSpec root_geometric(double c);
    static WeightSequenceSpec affine_polynomial(double base, double c, double beta);
    static WeightSequenceSpec table(std::vector<double> values,
                                    weight_family::TailRule tail = weight_family::TailRule::ConstantLast);

    /// w_j for j >= 1.
    double value(std::size_t j) const;
    /// log w_j, evaluated per family without forming w_j where that loses accuracy.
    double log_value(std::size_t j) const;
    /// [w_1, ..., w_count]
    std::vector<double> values(std::size_t count) const;

    /// Whether w_1 >= w_2 >= ... holds over the whole sequence.
    bool is_nonincreasing() const;

    const Family& family() const noexcept { return family_; }
    bool is_table() const noexcept { return std::holds_alternative<weight_family::Table>(family_); }
    std::string family_name() const;
    std::string describe() const;

    bool operator==(const WeightSequenceSpec&) const = default;

private:
    Family family_;
};

// ---------------------------------------------------------------------------
// Hermite spaces
// ---------------------------------------------------------------------------

/// Polynomially decaying coefficients: r(k) = prod_j (k_j == 0 ? 1 : gamma_j k_j^(-alpha)).
class FiniteSmoothnessSpace {
public:
    /// Requires s >= 1, alpha > 1 and a positive nonincreasing gamma.
    FiniteSmoothnessSpace(std::size_t s, double alpha, WeightSequenceSpec gamma);

    std::size_t dim() const noexcept { return s_; }
    double alpha() const noexcept { return alpha_; }
    const WeightSequenceSpec& gamma() const noexcept { return gamma_; }
    /// gamma_j for zero-based coordinate j.
    double gamma_at(std::size_t coord) const { return gamma_values_.at(coord); }

    bool operator==(const FiniteSmoothnessSpace& o) const
    {
        return s_ == o.s_ && alpha_ == o.alpha_ && gamma_ == o.gamma_;
    }

private:
    std::size_t s_;
    double alpha_;
    WeightSequenceSpec gamma_;
    std::vector<double> gamma_values_;
};

/// Exponentially decaying coefficients: r(k) = omega^(sum_j a_j k_j^(b_j)).
class AnalyticSpace {
public:
    /// Requires s >= 1, 0 < omega < 1, a_j > 0 and b_j >= 1 for j <= s.
    AnalyticSpace(std::size_t s, double omega, WeightSequenceSpec a, WeightSequenceSpec b);

    std::size_t dim() const noexcept { return s_; }
    double omega() const noexcept { return omega_; }
    const WeightSequenceSpec& a() const noexcept { return a_; }
    const WeightSequenceSpec& b() const noexcept { return b_; }
    double a_at(std::size_t coord) const { return a_values_.at(coord); }
    double b_at(std::size_t coord) const { return b_values_.at(coord); }
    /// min_{j <= s} a_j
    double a_min() const noexcept { return a_min_; }
    bool all_b_one() const noexcept;

    bool operator==(const AnalyticSpace& o) const
    {
        return s_ == o.s_ && omega_ == o.omega_ && a_ == o.a_ && b_ == o.b_;
    }

private:
    std::size_t s_;
    double omega_;
    WeightSequenceSpec a_;
    WeightSequenceSpec b_;
    std::vector<double> a_values_;
    std::vector<double> b_values_;
    double a_min_;
};

class HermiteSpace {
public:
    using Variant = std::variant<FiniteSmoothnessSpace, AnalyticSpace>;

    HermiteSpace(FiniteSmoothnessSpace space) : space_(std::move(space)) {}
    HermiteSpace(AnalyticSpace space) : space_(std::move(space)) {}

    std::size_t dim() const noexcept;
    bool is_analytic() const noexcept { return std::holds_alternative<AnalyticSpace>(space_); }
    const FiniteSmoothnessSpace& finite() const { return std::get<FiniteSmoothnessSpace>(space_); }
    const AnalyticSpace& analytic() const { return std::get<AnalyticSpace>(space_); }
    const Variant& variant() const noexcept { return space_; }

    /// Same space family and weights in dimension `s`.
    HermiteSpace with_dim(std::size_t s) const;

    /// Univariate factor r_j(k) of the product-form weight. Coordinate is zero-based.
    double coordinate_weight(std::size_t coord, std::uint32_t k) const;

    std::string family_name() const;
    std::string describe() const;

    bool operator==(const HermiteSpace&) const = default;

private:
    Variant space_;
};

/// r(k). Throws std::invalid_argument on dimension mismatch.
double r_value(const HermiteSpace& space, const MultiIndex& k);

struct MaxWeight {
    double value;
    MultiIndex argmax;
};

/**
 * max_{k != 0} r(k) and its smallest maximizer in graded order.
 *
 * Finite smoothness: the maximum over prefix products gamma_1 ... gamma_m,
 * attained at (1,...,1,0,...,0) with the smallest maximizing m.
 * Analytic: omega^(min_j a_j) at e_{j*} for the first j* attaining the min.
 */
MaxWeight max_r_nonzero(const HermiteSpace& space);

/// sum_k r(k), with every truncated univariate sum carrying a tail <= tol.
double summability_constant(const HermiteSpace& space, double tol = 1e-12);

} // namespace hermite_mc
