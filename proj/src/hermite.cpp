#include "hermite_mc/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hermite_mc/numeric.hpp"

namespace hermite_mc {

namespace {

void require_finite(double x)
{
    if (!std::isfinite(x)) {
        throw std::domain_error("hermite_eval: argument must be finite");
    }
}

// One step of the normalized recurrence: returns H_{m+1} from H_m, H_{m-1}.
inline double next_hermite(double x, std::uint32_t m, double h_m, double h_prev)
{
    return (x * h_m - std::sqrt(static_cast<double>(m)) * h_prev)
           / std::sqrt(static_cast<double>(m) + 1.0);
}

} // namespace

double hermite_eval(std::uint32_t k, double x)
{
    require_finite(x);
    if (k == 0) {
        return 1.0;
    }
    double h_prev = 1.0;
    double h = x;
    for (std::uint32_t m = 1; m < k; ++m) {
        const double h_next = next_hermite(x, m, h, h_prev);
        h_prev = h;
        h = h_next;
    }
    return h;
}

void hermite_eval_batch(double x, std::span<double> out)
{
    require_finite(x);
    if (out.empty()) {
        return;
    }
    out[0] = 1.0;
    if (out.size() == 1) {
        return;
    }
    out[1] = x;
    for (std::size_t m = 1; m + 1 < out.size(); ++m) {
        out[m + 1] = next_hermite(x, static_cast<std::uint32_t>(m), out[m], out[m - 1]);
    }
}

std::vector<double> hermite_eval_batch(std::uint32_t k_max, double x)
{
    std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
    hermite_eval_batch(x, out);
    return out;
}

double hermite_eval_multi(const MultiIndex& k, std::span<const double> x)
{
    if (x.size() != k.dim()) {
        throw std::invalid_argument("hermite_eval_multi: point dimension does not match index");
    }
    double value = 1.0;
    for (const auto& e : k.entries()) {
        value *= hermite_eval(e.exponent, x[e.coord]);
    }
    return value;
}

QuadratureRule gauss_hermite_rule(std::size_t m)
{
    if (m == 0) {
        throw std::invalid_argument("gauss_hermite_rule: order must be positive");
    }
    const auto order = static_cast<std::uint32_t>(m);
    const double n = static_cast<double>(m);
    const double sqrt_m = std::sqrt(n);
    const std::size_t half = (m + 1) / 2;

    // positive roots in physicists' scaling, largest first
    std::vector<double> z_roots(half, 0.0);
    std::vector<double> x_roots(half, 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(n, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * z_roots[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * z_roots[1];
        } else {
            z = 2.0 * z - z_roots[i - 2];
        }

        double x = std::sqrt(2.0) * z;
        if (m % 2 == 1 && i + 1 == half) {
            x = 0.0; // middle root of an odd-order polynomial
        } else {
            for (int iter = 0; iter < 100; ++iter) {
                double h_prev = 1.0;
                double h = x;
                for (std::uint32_t j = 1; j < order; ++j) {
                    const double h_next = next_hermite(x, j, h, h_prev);
                    h_prev = h;
                    h = h_next;
                }
                // h = H_m(x), h_prev = H_{m-1}(x)
                const double dx = h / (sqrt_m * h_prev);
                x -= dx;
                if (std::fabs(dx) <= 1e-15 * std::max(1.0, std::fabs(x))) {
                    break;
                }
            }
        }
        x_roots[i] = x;
        z_roots[i] = x / std::sqrt(2.0);
        z = z_roots[i];
    }

    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    std::vector<double> values(m);
    for (std::size_t i = 0; i < half; ++i) {
        const double x = x_roots[i];
        hermite_eval_batch(x, values);
        CompensatedSum christoffel;
        for (double v : values) {
            christoffel.add(v * v);
        }
        const double w = 1.0 / christoffel.value();
        // x_roots is descending, so root i lands at m-1-i and its mirror at i
        rule.nodes[m - 1 - i] = x;
        rule.weights[m - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    if (m % 2 == 1) {
        rule.nodes[m / 2] = 0.0;
    }
    return rule;
}

} // namespace hermite_mc
