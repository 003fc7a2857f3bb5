#include "hermite_mc/mc_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hermite_mc/numeric.hpp"

namespace hermite_mc {

MeanEstimate mc_estimate(const Integrand& f, const PointSet& nodes)
{
    CompensatedSum sum;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum.add(f(nodes.point(i)));
    }
    return MeanEstimate{sum.value() / static_cast<double>(nodes.size()), sum.non_finite_count()};
}

MeanEstimate mc_estimate_streamed(const HermiteExpansion& f, std::size_t n, std::uint64_t stream_seed)
{
    if (n == 0) {
        throw std::invalid_argument("mc_estimate_streamed: need at least one node");
    }
    const std::size_t s = f.dim();
    const GaussianStream stream(stream_seed);
    const auto support = f.support();
    std::vector<double> point(s, 0.0);
    CompensatedSum sum;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c : support) {
            point[c] = stream.normal(static_cast<std::uint64_t>(i * s + c));
        }
        sum.add(f(point));
    }
    return MeanEstimate{sum.value() / static_cast<double>(n), sum.non_finite_count()};
}

double true_integral(const CoefficientFunction& f)
{
    return f.coefficient(MultiIndex(f.dim()));
}

double theoretical_error(const HermiteSpace& space, std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("theoretical_error: n must be positive");
    }
    return std::sqrt(max_r_nonzero(space).value / static_cast<double>(n));
}

unsigned resolve_threads(unsigned requested)
{
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct MeanAndStderr {
    double mean;
    double stderr_of_mean;
};

MeanAndStderr summarize(const std::vector<double>& values)
{
    const double count = static_cast<double>(values.size());
    CompensatedSum sum;
    for (double v : values) {
        sum.add(v);
    }
    const double mean = sum.value() / count;
    CompensatedSum sq;
    for (double v : values) {
        sq.add((v - mean) * (v - mean));
    }
    const double variance = sq.value() / (count - 1.0);
    return {mean, std::sqrt(variance / count)};
}

} // namespace

ErrorReport empirical_randomized_error(const HermiteSpace& space, std::uint64_t n,
                                       std::uint64_t replications, std::uint64_t master_seed,
                                       RunOptions options)
{
    if (n == 0) {
        throw std::invalid_argument("empirical_randomized_error: n must be positive");
    }
    if (replications < 2) {
        throw std::invalid_argument("empirical_randomized_error: at least 2 replications required");
    }
    const auto start = std::chrono::steady_clock::now();

    const MaxWeight best = max_r_nonzero(space);
    const CoefficientFunction worst = worst_case_function(space);
    const HermiteExpansion f = synthesize(worst);
    const double integral = true_integral(worst);

    std::vector<double> squared(replications);
    std::vector<double> signed_error(replications);
    std::vector<char> non_finite(replications, 0);

    const unsigned threads = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(options.threads), replications));
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const MeanEstimate est = mc_estimate_streamed(f, n, split_seed(master_seed, i));
            const double err = est.value - integral;
            signed_error[i] = err;
            squared[i] = err * err;
            non_finite[i] = est.finite() ? 0 : 1;
        }
    };
    if (threads <= 1) {
        work(0, replications);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        const std::uint64_t chunk = (replications + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = std::min<std::uint64_t>(replications, t * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(replications, begin + chunk);
            pool.emplace_back(work, begin, end);
        }
    }

    if (std::any_of(non_finite.begin(), non_finite.end(), [](char c) { return c != 0; })) {
        throw std::runtime_error("empirical_randomized_error: non-finite Monte Carlo estimate");
    }

    ErrorReport report;
    report.space = space.describe();
    report.family = space.family_name();
    report.s = space.dim();
    report.n = n;
    report.replications = replications;
    report.master_seed = master_seed;
    report.worst_case_index = best.argmax;
    report.worst_case_r = best.value;
    report.theoretical_error = theoretical_error(space, n);
    if (space.is_analytic()) {
        report.alt_error_omega_a0 = best.value / std::sqrt(static_cast<double>(n));
    }
    const MeanAndStderr mse = summarize(squared);
    const MeanAndStderr bias = summarize(signed_error);
    report.empirical_mse = mse.mean;
    report.empirical_rmse = std::sqrt(mse.mean);
    report.empirical_stderr = mse.stderr_of_mean;
    report.mean_error = bias.mean;
    report.mean_error_stderr = bias.stderr_of_mean;
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace hermite_mc
