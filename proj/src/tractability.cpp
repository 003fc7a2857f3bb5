#include "hermite_mc/tractability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include "hermite_mc/mc_engine.hpp"
#include "hermite_mc/numeric.hpp"

namespace hermite_mc {

namespace wf = weight_family;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kMaxExactInteger = 9007199254740992.0; // 2^53
constexpr std::size_t kMaxDirectTerms = std::size_t{1} << 26;

bool error_at_most(double max_r, std::uint64_t n, double eps)
{
    return std::sqrt(max_r / static_cast<double>(n)) <= eps;
}

/// Number of leading j with log gamma_j > 0, starting the search from `guess`.
/// Relies on gamma being nonincreasing, so the positive terms form a prefix.
std::size_t positive_prefix(const WeightSequenceSpec& gamma, double guess)
{
    if (!(guess < static_cast<double>(kMaxDirectTerms))) {
        throw std::overflow_error("classify_finite: too many weights exceed 1");
    }
    std::size_t j = guess > 0.0 ? static_cast<std::size_t>(guess) : 0;
    while (j > 0 && !(gamma.log_value(j) > 0.0)) {
        --j;
    }
    while (gamma.log_value(j + 1) > 0.0) {
        ++j;
        if (j > kMaxDirectTerms) {
            throw std::overflow_error("classify_finite: too many weights exceed 1");
        }
    }
    return j;
}

/// log sup_s prod_{j<=s} gamma_j when the first J weights exceed 1 and the rest do not.
double log_sup_product(const WeightSequenceSpec& gamma, std::size_t J)
{
    if (J == 0) {
        return gamma.log_value(1);
    }
    CompensatedSum sum;
    for (std::size_t j = 1; j <= J; ++j) {
        sum.add(gamma.log_value(j));
    }
    return sum.value();
}

/// sum_{j>=1} log(1 + c j^-beta) for beta > 1.
double log_product_one_plus(double c, double beta)
{
    const double reach = std::pow(2.0 * c, 1.0 / beta);
    if (!(reach < static_cast<double>(kMaxDirectTerms))) {
        throw std::overflow_error("classify_finite: product certificate out of range");
    }
    const std::size_t n0 = std::max<std::size_t>(1024, static_cast<std::size_t>(std::ceil(reach)) + 1);
    CompensatedSum sum;
    for (std::size_t j = 1; j < n0; ++j) {
        sum.add(std::log1p(c * std::pow(static_cast<double>(j), -beta)));
    }
    // log1p(y) = sum_p (-1)^(p+1) y^p / p with y <= 1/2 beyond n0
    CompensatedSum tail;
    double cp = 1.0;
    for (int p = 1; p <= 200; ++p) {
        cp *= c;
        const double term = cp / p * zeta_tail(p * beta, static_cast<double>(n0));
        tail.add(p % 2 == 1 ? term : -term);
        if (std::fabs(term) <= 1e-18 * sum.value()) {
            break;
        }
    }
    sum.add(tail.value());
    return sum.value();
}

void set_strong(TractabilityVerdict& v, double log_c)
{
    v.strong_polynomial = true;
    v.polynomial = true;
    v.weak = true;
    v.certificate.log_C = log_c;
    v.certificate.C = std::exp(log_c);
    v.certificate.A = 0.0;
    v.certificate.epsilon_exponent = 2.0;
}

void set_polynomial(TractabilityVerdict& v, double a)
{
    v.polynomial = true;
    v.weak = true;
    v.certificate.A = a;
}

TractabilityVerdict classify_constant(const WeightSequenceSpec& gamma, double c)
{
    TractabilityVerdict v;
    if (c <= 1.0) {
        set_strong(v, gamma.log_value(1));
        v.certificate.partial_sum_law = "S(s) = 0";
    } else {
        v.certificate.partial_sum_law = "S(s) = s log c";
    }
    return v;
}

/// Sequences with finitely many weights above 1.
TractabilityVerdict classify_finite_excess(const WeightSequenceSpec& gamma, double guess,
                                           std::string law)
{
    TractabilityVerdict v;
    const std::size_t J = positive_prefix(gamma, guess);
    set_strong(v, log_sup_product(gamma, J));
    v.certificate.partial_sum_law = std::move(law) + ", constant for s >= " + std::to_string(J);
    return v;
}

TractabilityVerdict classify_closed_form(const WeightSequenceSpec& gamma)
{
    return std::visit(
        Overloaded{
            [&](const wf::Constant& f) { return classify_constant(gamma, f.c); },
            [&](const wf::PolynomialDecay& f) {
                if (f.beta == 0.0) {
                    return classify_constant(gamma, f.c);
                }
                const double guess = f.c > 1.0 ? std::pow(f.c, 1.0 / f.beta) : 0.0;
                return classify_finite_excess(gamma, guess,
                                              "S(s) = sum over j < c^(1/beta) of log(c j^-beta)");
            },
            [&](const wf::Geometric& f) {
                if (f.q == 1.0) {
                    return classify_constant(gamma, f.c);
                }
                const double guess = f.c > 1.0 ? -std::log(f.c) / std::log(f.q) : 0.0;
                return classify_finite_excess(gamma, guess,
                                              "S(s) = sum over j < -log c / log q of log c + j log q");
            },
            [&](const wf::RootGeometric& f) {
                if (f.c == 1.0) {
                    return classify_constant(gamma, 1.0);
                }
                TractabilityVerdict v;
                set_polynomial(v, std::log(f.c));
                v.certificate.partial_sum_law = "S(s) = log c * H_s";
                return v;
            },
            [&](const wf::AffinePolynomial& f) {
                if (f.c == 0.0 || f.beta == 0.0) {
                    return classify_constant(gamma, f.base + f.c);
                }
                if (f.base > 1.0) {
                    TractabilityVerdict v;
                    v.certificate.partial_sum_law = "S(s) >= s log base";
                    return v;
                }
                if (f.base < 1.0) {
                    const double guess = std::pow(f.c / (1.0 - f.base), 1.0 / f.beta);
                    return classify_finite_excess(gamma, guess,
                                                  "S(s) = sum over j < (c/(1-base))^(1/beta) of log gamma_j");
                }
                TractabilityVerdict v;
                if (f.beta > 1.0) {
                    set_strong(v, log_product_one_plus(f.c, f.beta));
                    v.certificate.partial_sum_law = "S(s) = sum_{j<=s} log(1 + c j^-beta), convergent";
                } else if (f.beta == 1.0) {
                    set_polynomial(v, f.c);
                    v.certificate.partial_sum_law = "S(s) = c log s + O(1)";
                } else {
                    v.weak = true;
                    v.certificate.partial_sum_law = "S(s) ~ c s^(1-beta) / (1-beta)";
                }
                return v;
            },
            [&](const wf::Table&) { return classify_heuristic(gamma); },
        },
        gamma.family());
}

void enforce_hierarchy(TractabilityVerdict& v)
{
    v.polynomial = v.polynomial || v.strong_polynomial;
    v.weak = v.weak || v.polynomial;
}

std::vector<double> column(const std::vector<PartialSumRow>& rows, double PartialSumRow::*field)
{
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(r.*field);
    }
    return out;
}

} // namespace

std::uint64_t n_mc(const HermiteSpace& space, double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("n_mc: eps must lie in (0,1)");
    }
    const double max_r = max_r_nonzero(space).value;
    const double raw = std::ceil(max_r / (eps * eps));
    if (!(raw <= kMaxExactInteger)) {
        throw std::overflow_error("n_mc: information complexity exceeds 2^53");
    }
    std::uint64_t n = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(raw));
    for (int step = 0; !error_at_most(max_r, n, eps); ++step) {
        if (step > 64) {
            throw std::runtime_error("n_mc: ceiling formula did not converge");
        }
        ++n;
    }
    while (n > 1 && error_at_most(max_r, n - 1, eps)) {
        --n;
    }
    return n;
}

std::vector<PartialSumRow> partial_sum_diagnostic(const WeightSequenceSpec& gamma,
                                                  const std::vector<std::size_t>& s_values)
{
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        if (s_values[i] < 2) {
            throw std::invalid_argument("partial_sum_diagnostic: every s must be >= 2");
        }
        if (i > 0 && s_values[i] < s_values[i - 1]) {
            throw std::invalid_argument("partial_sum_diagnostic: s values must be ascending");
        }
    }
    std::vector<PartialSumRow> rows;
    rows.reserve(s_values.size());
    CompensatedSum sum;
    std::size_t j = 0;
    for (std::size_t s : s_values) {
        for (; j < s; ++j) {
            sum.add(std::max(gamma.log_value(j + 1), 0.0));
        }
        const double S = sum.value();
        const double sd = static_cast<double>(s);
        rows.push_back({s, S, S / std::log(sd), S / sd});
    }
    return rows;
}

std::vector<std::size_t> dyadic_s_grid()
{
    std::vector<std::size_t> grid;
    for (int e = 4; e <= 20; ++e) {
        grid.push_back(std::size_t{1} << e);
    }
    return grid;
}

bool trend_bounded(const std::vector<double>& values)
{
    if (values.size() < 3) {
        return false;
    }
    const auto last = values.end() - 3;
    const auto [lo, hi] = std::minmax_element(last, values.end());
    const double scale = std::max(std::fabs(*lo), std::fabs(*hi));
    if (scale == 0.0) {
        return true;
    }
    return (*hi - *lo) < kTrendRelativeSpread * scale;
}

bool trend_vanishing(const std::vector<double>& values)
{
    if (values.empty()) {
        return false;
    }
    const std::size_t m = values.size();
    if (values[m - 1] == 0.0) {
        return true;
    }
    if (m < 3) {
        return false;
    }
    return values[m - 1] < kTrendVanishingRatio * values[m - 2] &&
           values[m - 2] < kTrendVanishingRatio * values[m - 3];
}

TractabilityVerdict classify_heuristic(const WeightSequenceSpec& gamma)
{
    const auto grid = dyadic_s_grid();
    TractabilityVerdict v;
    v.heuristic = true;
    v.certificate.partial_sum_law = "heuristic";
    v.certificate.partial_sums = partial_sum_diagnostic(gamma, grid);
    const auto& rows = v.certificate.partial_sums;

    const bool strong = trend_bounded(column(rows, &PartialSumRow::S));
    const bool poly = strong || trend_bounded(column(rows, &PartialSumRow::S_over_log_s));
    const bool weak = poly || trend_vanishing(column(rows, &PartialSumRow::S_over_s));
    if (strong) {
        CompensatedSum prefix;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j <= grid.back(); ++j) {
            prefix.add(gamma.log_value(j));
            best = std::max(best, prefix.value());
        }
        set_strong(v, best);
    } else if (poly) {
        set_polynomial(v, rows.back().S_over_log_s);
    } else {
        v.weak = weak;
    }
    return v;
}

TractabilityVerdict classify_finite(const WeightSequenceSpec& gamma)
{
    if (!gamma.is_nonincreasing()) {
        throw std::invalid_argument("classify_finite: gamma must be nonincreasing");
    }
    TractabilityVerdict v = classify_closed_form(gamma);
    if (v.certificate.partial_sums.empty()) {
        v.certificate.partial_sums = partial_sum_diagnostic(gamma, dyadic_s_grid());
    }
    enforce_hierarchy(v);
    return v;
}

TractabilityVerdict classify_analytic(const AnalyticSpace& space)
{
    TractabilityVerdict v;
    const double c = max_r_nonzero(HermiteSpace(space)).value;
    v.strong_polynomial = true;
    v.polynomial = true;
    v.weak = true;
    v.certificate.C = c;
    v.certificate.log_C = std::log(c);
    v.certificate.A = 0.0;
    v.certificate.epsilon_exponent = 2.0;
    v.certificate.partial_sum_law = "n_mc = ceil(C / eps^2) for every s";
    return v;
}

TractabilityVerdict classify(const HermiteSpace& space)
{
    if (space.is_analytic()) {
        return classify_analytic(space.analytic());
    }
    return classify_finite(space.finite().gamma());
}

double epsilon_exponent_fit(const HermiteSpace& space, const std::vector<double>& eps_grid, std::size_t s)
{
    return epsilon_exponent_fit(space.with_dim(s), eps_grid);
}

double epsilon_exponent_fit(const HermiteSpace& space, const std::vector<double>& eps_grid)
{
    if (eps_grid.size() < 4) {
        throw std::invalid_argument("epsilon_exponent_fit: need at least 4 eps values");
    }
    for (double e : eps_grid) {
        if (!(e > 0.0 && e < 1.0)) {
            throw std::invalid_argument("epsilon_exponent_fit: eps values must lie in (0,1)");
        }
    }
    const auto [lo, hi] = std::minmax_element(eps_grid.begin(), eps_grid.end());
    if (!(*hi >= 100.0 * *lo)) {
        throw std::invalid_argument("epsilon_exponent_fit: eps grid must span at least 2 decades");
    }
    const std::size_t m = eps_grid.size();
    std::vector<double> x(m);
    std::vector<double> y(m);
    CompensatedSum sx;
    CompensatedSum sy;
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = -std::log(eps_grid[i]);
        y[i] = std::log(static_cast<double>(n_mc(space, eps_grid[i])));
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double mx = sx.value() / static_cast<double>(m);
    const double my = sy.value() / static_cast<double>(m);
    CompensatedSum sxy;
    CompensatedSum sxx;
    for (std::size_t i = 0; i < m; ++i) {
        sxy.add((x[i] - mx) * (y[i] - my));
        sxx.add((x[i] - mx) * (x[i] - mx));
    }
    return sxy.value() / sxx.value();
}

std::vector<EcWtRow> ec_wt_diagnostic(const HermiteSpace& space,
                                      const std::vector<std::pair<double, std::size_t>>& path)
{
    if (path.empty()) {
        throw std::invalid_argument("ec_wt_diagnostic: path must be nonempty");
    }
    std::vector<EcWtRow> rows;
    rows.reserve(path.size());
    for (const auto& [eps, s] : path) {
        const std::uint64_t n = n_mc(space.with_dim(s), eps);
        const double ratio =
            std::log(static_cast<double>(n)) / (static_cast<double>(s) - std::log(eps));
        rows.push_back({eps, s, n, ratio});
    }
    return rows;
}

} // namespace hermite_mc
