#include "hermite_mc/numeric.hpp"

#include <array>
#include <stdexcept>

namespace hermite_mc {

namespace {

// B_{2k} / (2k)! for k = 1..7
constexpr std::array<double, 7> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
};

} // namespace

double zeta_tail(double p, double first, double tol)
{
    if (!(p > 1.0)) {
        throw std::invalid_argument("zeta_tail: exponent must exceed 1");
    }
    if (!(first >= 1.0)) {
        throw std::invalid_argument("zeta_tail: first index must be >= 1");
    }
    first = std::floor(first);
    double start = std::max(first, 16.0);
    for (;;) {
        CompensatedSum sum;
        for (double j = first; j < start; j += 1.0) {
            sum.add(std::pow(j, -p));
        }
        sum.add(std::pow(start, 1.0 - p) / (p - 1.0));
        sum.add(0.5 * std::pow(start, -p));
        // rising factorial (p)_{2k-1} times start^{-p-2k+1}
        double rising = p;
        double power = std::pow(start, -p - 1.0);
        double last = 0.0;
        for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
            last = kBernoulliOverFactorial[k] * rising * power;
            sum.add(last);
            rising *= (p + 2.0 * k + 1.0) * (p + 2.0 * k + 2.0);
            power /= start * start;
        }
        const double total = sum.value();
        if (std::fabs(last) <= tol * std::fabs(total) || start > 1e6) {
            return total;
        }
        start *= 2.0;
    }
}

double riemann_zeta(double p, double tol)
{
    return zeta_tail(p, 1.0, tol);
}

} // namespace hermite_mc
