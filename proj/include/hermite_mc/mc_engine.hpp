#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hermite_mc/kernel.hpp"
#include "hermite_mc/sampling.hpp"
#include "hermite_mc/weights.hpp"

namespace hermite_mc {

struct MeanEstimate {
    double value = 0.0;
    /// Nodes at which f was not finite; value is then non-finite too.
    std::size_t non_finite_nodes = 0;
    bool finite() const noexcept { return non_finite_nodes == 0; }
};

/// (1/n) sum_i f(x_i) with compensated accumulation in node order.
MeanEstimate mc_estimate(const Integrand& f, const PointSet& nodes);

/// Same estimate for a Hermite expansion, drawing only the coordinates in
/// the expansion's support from the stream. Bit-identical to
/// mc_estimate(synthesize(f), sample_gaussian(s, n, stream_seed)).
MeanEstimate mc_estimate_streamed(const HermiteExpansion& f, std::size_t n, std::uint64_t stream_seed);

/// I_s(f) = f^(0).
double true_integral(const CoefficientFunction& f);

/// sqrt(max_{k != 0} r(k) / n). Throws std::invalid_argument if n == 0.
double theoretical_error(const HermiteSpace& space, std::uint64_t n);

struct ErrorReport {
    std::string space;
    std::string family;
    std::size_t s = 0;
    std::uint64_t n = 0;
    std::uint64_t replications = 0;
    std::uint64_t master_seed = 0;
    MultiIndex worst_case_index{1};
    double worst_case_r = 0.0;
    double theoretical_error = 0.0;
    /// omega^{a_0} / sqrt(n), reported for analytic spaces next to the
    /// square-root form above.
    std::optional<double> alt_error_omega_a0;
    double empirical_mse = 0.0;
    double empirical_rmse = 0.0;
    /// Standard error of empirical_mse: stddev(d_i) / sqrt(R).
    double empirical_stderr = 0.0;
    /// Mean of (estimate - integral) and its standard error.
    double mean_error = 0.0;
    double mean_error_stderr = 0.0;
    double wall_time_ms = 0.0;
};

struct RunOptions {
    /// Worker threads; 0 selects std::thread::hardware_concurrency().
    unsigned threads = 1;
};

/**
 * Replication study of the randomized error for the worst-case integrand
 * f* = worst_case_function(space). Replication i draws its nodes from stream
 * split_seed(master_seed, i) and records d_i = (I(f*) - MC_n(f*))^2.
 *
 * Per-replication results are stored by index and reduced in index order, so
 * the report (except wall_time_ms) does not depend on options.threads.
 * Throws std::invalid_argument if n == 0 or replications < 2, and
 * std::runtime_error if any estimate is non-finite.
 */
ErrorReport empirical_randomized_error(const HermiteSpace& space, std::uint64_t n,
                                       std::uint64_t replications, std::uint64_t master_seed,
                                       RunOptions options = {});

unsigned resolve_threads(unsigned requested);

} // namespace hermite_mc
