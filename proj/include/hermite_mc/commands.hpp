#pragma once

#include <iosfwd>
#include <string>

#include "hermite_mc/config.hpp"

namespace hermite_mc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitWarnings = 4;

struct CommandOptions {
    OutputFormat format = OutputFormat::Csv;
    /// 0 = hardware concurrency. Never changes results.
    unsigned threads = 1;
};

// Each command writes its results to `out` and timing or diagnostics to `log`.
// Rows are flushed as they complete, so a numeric failure leaves the rows
// produced so far in `out`. Missing or invalid fields throw ConfigError;
// numeric failures propagate as std::runtime_error / std::overflow_error /
// std::domain_error.

/// One ErrorReport per n. CSV rows, or one JSON object per line.
int cmd_error_study(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                    std::ostream& log);

/// Verdict with certificates and a partial-sum table over config.s_values
/// (default 2^4..2^20). JSON: one document. CSV: the table, then the verdict
/// as a "# "-prefixed JSON footer line.
int cmd_tractability(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                     std::ostream& log);

/// n_mc over the s x eps grid with EC-WT ratios, then the fitted eps-exponent
/// per s as a footer.
int cmd_nmc_table(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                  std::ostream& log);

/// Truncated kernel values at the configured point pairs. Returns
/// kExitWarnings if any row is flagged.
int cmd_kernel_eval(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                    std::ostream& log);

/// Runs the named command and maps exceptions to exit codes: ConfigError and
/// std::invalid_argument -> 2, other std::exception -> 3. Writes a single-line
/// diagnostic to `log` on failure.
int run_command(const std::string& name, const ExperimentConfig& config, const CommandOptions& options,
                std::ostream& out, std::ostream& log);

bool is_command(const std::string& name);

} // namespace hermite_mc
