#include "hermite_mc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hermite_mc/hermite.hpp"
#include "hermite_mc/numeric.hpp"

namespace hermite_mc {

// ---------------------------------------------------------------------------
// CoefficientFunction
// ---------------------------------------------------------------------------

CoefficientFunction::CoefficientFunction(std::size_t dim) : dim_(dim)
{
    if (dim == 0) {
        throw std::invalid_argument("CoefficientFunction: dimension must be positive");
    }
}

CoefficientFunction::CoefficientFunction(std::size_t dim,
                                         std::initializer_list<std::pair<MultiIndex, double>> coeffs)
    : CoefficientFunction(dim)
{
    for (const auto& [k, v] : coeffs) {
        set(k, v);
    }
}

double CoefficientFunction::coefficient(const MultiIndex& k) const
{
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void CoefficientFunction::set(const MultiIndex& k, double value)
{
    if (k.dim() != dim_) {
        throw std::invalid_argument("CoefficientFunction: index dimension mismatch");
    }
    if (std::fabs(value) < kDropThreshold) {
        coeffs_.erase(k);
        return;
    }
    coeffs_.insert_or_assign(k, value);
}

// ---------------------------------------------------------------------------
// Synthesis and Hilbert-space operations
// ---------------------------------------------------------------------------

HermiteExpansion::HermiteExpansion(CoefficientFunction f) : f_(std::move(f))
{
    for (const auto& [k, v] : f_.coefficients()) {
        for (const auto& e : k.entries()) {
            support_.push_back(e.coord);
        }
    }
    std::sort(support_.begin(), support_.end());
    support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
}

double HermiteExpansion::operator()(std::span<const double> x) const
{
    if (x.size() != f_.dim()) {
        throw std::invalid_argument("HermiteExpansion: point dimension mismatch");
    }
    const auto& coeffs = f_.coefficients();
    if (coeffs.size() == 1) {
        const auto& [k, v] = *coeffs.begin();
        return v * hermite_eval_multi(k, x);
    }
    CompensatedSum sum;
    for (const auto& [k, v] : coeffs) {
        sum.add(v * hermite_eval_multi(k, x));
    }
    return sum.value();
}

HermiteExpansion synthesize(const CoefficientFunction& f)
{
    return HermiteExpansion(f);
}

double inner_product(const HermiteSpace& space, const CoefficientFunction& f,
                     const CoefficientFunction& g)
{
    if (f.dim() != space.dim() || g.dim() != space.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    // merge over both sorted maps so that <f,g> and <g,f> sum identically
    CompensatedSum sum;
    auto fi = f.coefficients().begin();
    auto gi = g.coefficients().begin();
    const auto fe = f.coefficients().end();
    const auto ge = g.coefficients().end();
    while (fi != fe && gi != ge) {
        if (fi->first < gi->first) {
            ++fi;
        } else if (gi->first < fi->first) {
            ++gi;
        } else {
            sum.add(fi->second * gi->second / r_value(space, fi->first));
            ++fi;
            ++gi;
        }
    }
    return sum.value();
}

double norm(const HermiteSpace& space, const CoefficientFunction& f)
{
    return std::sqrt(std::max(0.0, inner_product(space, f, f)));
}

double hermite_coefficient(const Integrand& f, const MultiIndex& k, std::size_t m)
{
    const std::size_t s = k.dim();
    const QuadratureRule rule = gauss_hermite_rule(m);

    // H_{k_j}(node_i) per coordinate
    std::vector<std::vector<double>> basis(s, std::vector<double>(m, 1.0));
    for (const auto& e : k.entries()) {
        for (std::size_t i = 0; i < m; ++i) {
            basis[e.coord][i] = hermite_eval(e.exponent, rule.nodes[i]);
        }
    }

    std::vector<std::size_t> idx(s, 0);
    std::vector<double> point(s, rule.nodes[0]);
    CompensatedSum sum;
    for (;;) {
        double weight = 1.0;
        for (std::size_t j = 0; j < s; ++j) {
            weight *= rule.weights[idx[j]] * basis[j][idx[j]];
        }
        sum.add(weight * f(point));

        std::size_t j = 0;
        while (j < s) {
            if (++idx[j] < m) {
                point[j] = rule.nodes[idx[j]];
                break;
            }
            idx[j] = 0;
            point[j] = rule.nodes[0];
            ++j;
        }
        if (j == s) {
            break;
        }
    }
    return sum.value();
}

CoefficientFunction worst_case_function(const HermiteSpace& space)
{
    const MaxWeight best = max_r_nonzero(space);
    CoefficientFunction f(space.dim());
    f.set(best.argmax, std::sqrt(best.value));
    return f;
}

// ---------------------------------------------------------------------------
// Kernel
// ---------------------------------------------------------------------------

namespace {

// log H_k(0)^2; -inf for odd k
double log_hermite_at_zero_sq(std::uint32_t k)
{
    if (k % 2 == 1) {
        return -std::numeric_limits<double>::infinity();
    }
    const double m = k / 2;
    return std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(m + 1.0) - 2.0 * m * std::numbers::ln2;
}

constexpr double kSqrt2OverPi = 0.79788456080286535588; // sqrt(2/pi)

// Bound on sum_{k > cutoff} r_j(k) |H_k(x) H_k(y)|.
double coordinate_tail_bound(const HermiteSpace& space, std::size_t coord, std::uint32_t cutoff,
                             double x, double y)
{
    const double envelope = std::exp(0.25 * (x * x + y * y));
    const double kk = static_cast<double>(cutoff);
    if (space.is_analytic()) {
        const auto& sp = space.analytic();
        // k^b >= k for b >= 1, so r_j(k) <= ratio^k
        const double ratio = std::pow(sp.omega(), sp.a_at(coord));
        return kCramer * kCramer * envelope * std::pow(ratio, kk + 1.0) / (1.0 - ratio);
    }
    const auto& sp = space.finite();
    const double gamma = sp.gamma_at(coord);
    const double alpha = sp.alpha();
    const double first = kk + 1.0;
    // sum_{k >= first} k^{-alpha} <= first^{-alpha} + first^{1-alpha}/(alpha-1)
    double bound = gamma * kCramer * kCramer * envelope
                   * (std::pow(first, -alpha) + std::pow(first, 1.0 - alpha) / (alpha - 1.0));

    // for k >= 3 with x^2, y^2 <= 2k+1: |H_k(x) H_k(y)| <= 2 sqrt(2/pi) e^{(x^2+y^2)/4} (k-1)^{-1/2}
    const double spread = std::max(x * x, y * y);
    const double k0 = std::max(3.0, std::ceil(0.5 * (spread - 1.0)));
    if (first >= k0 && kk >= 1.0) {
        const double p = alpha + 0.5;
        const double sonin = 2.0 * kSqrt2OverPi * gamma * envelope
                             * (std::pow(kk, -p) + std::pow(kk, 1.0 - p) / (p - 1.0));
        bound = std::min(bound, sonin);
    }
    return bound;
}

struct CoordinateSum {
    std::uint32_t cutoff;
    double value;
    double tail;
    bool capped;
};

std::uint32_t find_cutoff(const HermiteSpace& space, std::size_t coord, double x, double y,
                          double target, bool& capped)
{
    capped = false;
    if (coordinate_tail_bound(space, coord, 0, x, y) <= target) {
        return 0;
    }
    std::uint32_t hi = 1;
    while (coordinate_tail_bound(space, coord, hi, x, y) > target) {
        if (hi >= kMaxKernelCutoff) {
            capped = true;
            return kMaxKernelCutoff;
        }
        hi = std::min<std::uint32_t>(kMaxKernelCutoff, hi * 2);
    }
    // bound(lo) > target >= bound(hi)
    std::uint32_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        if (coordinate_tail_bound(space, coord, mid, x, y) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

CoordinateSum coordinate_sum(const HermiteSpace& space, std::size_t coord, double x, double y,
                             double target)
{
    CoordinateSum out{};
    out.cutoff = find_cutoff(space, coord, x, y, target, out.capped);
    out.tail = coordinate_tail_bound(space, coord, out.cutoff, x, y);

    CompensatedSum sum;
    double hx_prev = 1.0, hx = x;
    double hy_prev = 1.0, hy = y;
    sum.add(space.coordinate_weight(coord, 0));
    for (std::uint32_t k = 1; k <= out.cutoff; ++k) {
        sum.add(space.coordinate_weight(coord, k) * (hx * hy));
        const double sk = std::sqrt(static_cast<double>(k));
        const double sk1 = std::sqrt(static_cast<double>(k) + 1.0);
        const double hx_next = (x * hx - sk * hx_prev) / sk1;
        const double hy_next = (y * hy - sk * hy_prev) / sk1;
        hx_prev = hx;
        hx = hx_next;
        hy_prev = hy;
        hy = hy_next;
    }
    out.value = sum.value();
    return out;
}

} // namespace

double hermite_envelope(std::uint32_t k, double x)
{
    const double x2 = x * x;
    double bound_sq = kCramer * kCramer;
    const double q = 2.0 * k + 1.0 - 0.5 * x2;
    if (q > 0.0) {
        double g = (2.0 * k + 1.0) * std::exp(log_hermite_at_zero_sq(k));
        if (k >= 1) {
            g += 2.0 * k * std::exp(log_hermite_at_zero_sq(k - 1));
        }
        bound_sq = std::min(bound_sq, g / q);
    }
    return std::exp(0.25 * x2) * std::sqrt(bound_sq);
}

KernelEvaluation kernel_eval(const HermiteSpace& space, std::span<const double> x,
                             std::span<const double> y, double tol)
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("kernel_eval: tol must be positive");
    }
    const std::size_t s = space.dim();
    if (x.size() != s || y.size() != s) {
        throw std::invalid_argument("kernel_eval: point dimension does not match space");
    }
    for (std::size_t j = 0; j < s; ++j) {
        if (!std::isfinite(x[j]) || !std::isfinite(y[j])) {
            throw std::domain_error("kernel_eval: coordinates must be finite");
        }
    }

    KernelEvaluation result;
    for (std::size_t j = 0; j < s; ++j) {
        if (std::fabs(x[j]) > kValidatedAbscissa || std::fabs(y[j]) > kValidatedAbscissa) {
            result.outside_validated_range = true;
        }
    }

    std::vector<CoordinateSum> sums(s);
    double target = tol / static_cast<double>(s);
    for (int attempt = 0; attempt < 64; ++attempt) {
        bool capped = false;
        for (std::size_t j = 0; j < s; ++j) {
            sums[j] = coordinate_sum(space, j, x[j], y[j], target);
            capped = capped || sums[j].capped;
        }
        // prod(|A_j| + B_j) - prod |A_j| = sum_j B_j prod_{i<j}(|A_i|+B_i) prod_{i>j}|A_i|
        double bound = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            double term = sums[j].tail;
            for (std::size_t i = 0; i < s; ++i) {
                if (i < j) {
                    term *= std::fabs(sums[i].value) + sums[i].tail;
                } else if (i > j) {
                    term *= std::fabs(sums[i].value);
                }
            }
            bound += term;
        }
        result.error_bound = bound;
        if (bound <= tol) {
            result.tolerance_met = true;
            break;
        }
        if (capped) {
            result.tolerance_met = false;
            break;
        }
        target *= 0.5 * tol / bound;
    }

    result.value = 1.0;
    result.cutoffs.resize(s);
    for (std::size_t j = 0; j < s; ++j) {
        result.value *= sums[j].value;
        result.cutoffs[j] = sums[j].cutoff;
    }
    return result;
}

CoefficientFunction kernel_section_coeffs(const HermiteSpace& space, std::span<const double> x,
                                          std::span<const std::uint32_t> cutoffs)
{
    const std::size_t s = space.dim();
    if (x.size() != s || cutoffs.size() != s) {
        throw std::invalid_argument("kernel_section_coeffs: dimension mismatch");
    }
    CoefficientFunction section(s);
    std::vector<std::uint32_t> k(s, 0);
    for (;;) {
        const MultiIndex index = MultiIndex::from_dense(k);
        section.set(index, r_value(space, index) * hermite_eval_multi(index, x));
        std::size_t j = 0;
        while (j < s) {
            if (++k[j] <= cutoffs[j]) {
                break;
            }
            k[j] = 0;
            ++j;
        }
        if (j == s) {
            break;
        }
    }
    return section;
}

double mehler_reference(const AnalyticSpace& space, std::span<const double> x,
                        std::span<const double> y)
{
    if (x.size() != space.dim() || y.size() != space.dim()) {
        throw std::invalid_argument("mehler_reference: dimension mismatch");
    }
    double value = 1.0;
    for (std::size_t j = 0; j < space.dim(); ++j) {
        const double w = std::pow(space.omega(), space.a_at(j));
        const double one_minus = 1.0 - w * w;
        value *= std::exp((2.0 * w * x[j] * y[j] - w * w * (x[j] * x[j] + y[j] * y[j]))
                          / (2.0 * one_minus))
                 / std::sqrt(one_minus);
    }
    return value;
}

} // namespace hermite_mc
