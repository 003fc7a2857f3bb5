#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hermite_mc {

// Counter-based Gaussian streams.
//
// A stream is identified by a 64-bit seed. Its c-th 64-bit word is the
// SplitMix64 output for state `seed + (c+1) * 0x9E3779B97F4A7C15`, i.e.
// mix64(seed + (c+1) * golden), which makes every variate addressable
// directly. The word is mapped to a uniform in (0,1) as
// ((word >> 12) + 0.5) * 2^-52, and to a normal variate by the inverse
// normal CDF (one uniform per variate).
//
// Replication i of an experiment with master seed M uses the stream seed
// mix64(mix64(M) ^ ((i+1) * 0xD6E8FEB86659FD93)).

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer applied to z + golden (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t replication) noexcept
{
    return mix64(mix64(master_seed) ^ ((replication + 1) * 0xD6E8FEB86659FD93ULL));
}

/// Uniform in the open interval (0,1) from the top 52 bits. Every value is
/// exactly representable, as is 1 - value.
constexpr double to_unit_open(std::uint64_t word) noexcept
{
    return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

/// Inverse of the standard normal CDF for p in (0,1): rational approximation
/// (Acklam) followed by one Halley step against erfc, relative error ~1e-15.
double inverse_normal_cdf(double p);

class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t word(std::uint64_t counter) const noexcept
    {
        // mix64 adds one golden increment itself
        return mix64(seed_ + counter * kGolden);
    }
    double uniform(std::uint64_t counter) const noexcept { return to_unit_open(word(counter)); }
    double normal(std::uint64_t counter) const { return inverse_normal_cdf(uniform(counter)); }

private:
    std::uint64_t seed_;
};

/// n points in R^s, row-major.
class PointSet {
public:
    PointSet(std::size_t dim, std::size_t count);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return count_; }
    std::span<const double> point(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::span<double> point(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> data() const noexcept { return data_; }

private:
    std::size_t dim_;
    std::size_t count_;
    std::vector<double> data_;
};

/// Coordinate j of point i is stream(stream_seed).normal(i * s + j).
/// Throws std::invalid_argument if s == 0 or n == 0.
PointSet sample_gaussian(std::size_t s, std::size_t n, std::uint64_t stream_seed);

} // namespace hermite_mc
