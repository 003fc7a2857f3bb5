#pragma once

#include <cmath>
#include <cstddef>

namespace hermite_mc {

/// Neumaier's variant of Kahan summation. Non-finite inputs are accumulated
/// separately so that an inf or nan propagates to the result instead of
/// being swallowed by the compensation term.
class CompensatedSum {
public:
    void add(double v) noexcept
    {
        if (!std::isfinite(v)) {
            non_finite_ += v;
            ++non_finite_count_;
            return;
        }
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept
    {
        if (non_finite_count_ > 0) {
            return non_finite_;
        }
        return sum_ + comp_;
    }

    std::size_t non_finite_count() const noexcept { return non_finite_count_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double non_finite_ = 0.0;
    std::size_t non_finite_count_ = 0;
};

/// Sum_{j >= first} j^(-p) for p > 1 via Euler-Maclaurin, first >= 1.
/// Terms below `first + shift` are summed directly, where the shift is grown
/// until the last Bernoulli correction falls below `tol`.
double zeta_tail(double p, double first, double tol = 1e-15);

/// Riemann zeta for p > 1.
double riemann_zeta(double p, double tol = 1e-15);

} // namespace hermite_mc
