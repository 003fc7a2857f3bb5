#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hermite_mc/weights.hpp"

namespace hermite_mc {

/// Insertion-ordered JSON, so emitted objects keep their field order.
using Json = nlohmann::ordered_json;

/// Any malformed or out-of-contract configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Csv, Json };

struct PointPair {
    std::vector<double> x;
    std::vector<double> y;
    bool operator==(const PointPair&) const = default;
};

/**
 * One experiment description. JSON layout:
 *
 *   {
 *     "space": {"family": "finite_smoothness", "s": 3, "alpha": 2, "gamma": W}
 *            | {"family": "analytic", "s": 5, "omega": 0.5, "a": W, "b": W},
 *     "gamma": W,                  // tractability without a full space
 *     "n": [100, 1000], "replications": 10000, "seed": 42,
 *     "eps": [0.1, 0.01], "s_values": [1, 2, 4],
 *     "tol": 1e-10, "points": [{"x": [0.5], "y": [-1.0]}],
 *     "format": "csv" | "json", "output": "path"
 *   }
 *
 * W is a number (constant sequence) or one of
 *   {"family": "constant", "c"}, {"family": "polynomial", "c", "beta"},
 *   {"family": "geometric", "c", "q"}, {"family": "root_geometric", "c"},
 *   {"family": "affine_polynomial", "base", "c", "beta"},
 *   {"family": "table", "values": [...], "tail": "constant_last"}.
 *
 * Unknown keys are rejected. Every field is optional at parse time; commands
 * check for the fields they need.
 */
struct ExperimentConfig {
    std::optional<HermiteSpace> space;
    std::optional<WeightSequenceSpec> gamma;
    std::vector<std::uint64_t> n;
    std::optional<std::uint64_t> replications;
    std::optional<std::uint64_t> seed;
    std::vector<double> eps;
    std::vector<std::size_t> s_values;
    std::optional<double> tol;
    std::vector<PointPair> points;
    std::optional<OutputFormat> format;
    std::optional<std::string> output;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError on syntax errors, unknown keys or violated preconditions.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig config_from_json(const Json& doc);

Json to_json(const ExperimentConfig& config);
Json to_json(const WeightSequenceSpec& w);
Json to_json(const HermiteSpace& space);
std::string serialize_config(const ExperimentConfig& config);

WeightSequenceSpec weight_from_json(const Json& j);
HermiteSpace space_from_json(const Json& j);

/// Compact JSON with floating-point numbers at 17 significant digits and
/// non-finite numbers as null.
std::string dump_json(const Json& j);

/// printf("%.Ng") of v.
std::string format_double(double v, int digits);

} // namespace hermite_mc
