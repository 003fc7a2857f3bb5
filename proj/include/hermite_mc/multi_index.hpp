#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hermite_mc {

/**
 * Sparse multi-index k in N_0^s.
 *
 * Coordinates are zero-based (0..dim-1). Only nonzero exponents are stored,
 * sorted by coordinate, so two indices compare equal iff their dimensions and
 * nonzero entries agree.
 *
 * Ordering is graded: first by total degree |k|, then at the first coordinate
 * where the indices differ the one with the LARGER exponent comes first.
 * Under this order (1,0,...) precedes (0,1,...) and, among 0/1 vectors of
 * equal degree, the prefix (1,...,1,0,...,0) is the smallest element.
 * Indices of different dimension order by dimension.
 */
class MultiIndex {
public:
    struct Entry {
        std::size_t coord;
        std::uint32_t exponent;
        bool operator==(const Entry&) const = default;
    };

    explicit MultiIndex(std::size_t dim);

    static MultiIndex from_dense(std::span<const std::uint32_t> exponents);
    static MultiIndex from_dense(std::initializer_list<std::uint32_t> exponents);
    /// Unit vector e_j in dimension `dim`.
    static MultiIndex unit(std::size_t dim, std::size_t coord);
    /// (1,...,1,0,...,0) with `ones` leading ones.
    static MultiIndex prefix_ones(std::size_t dim, std::size_t ones);

    std::size_t dim() const noexcept { return dim_; }
    std::uint32_t operator[](std::size_t coord) const;
    void set(std::size_t coord, std::uint32_t exponent);

    std::span<const Entry> entries() const noexcept { return entries_; }
    std::uint64_t total_degree() const noexcept;
    bool is_zero() const noexcept { return entries_.empty(); }
    std::vector<std::uint32_t> to_dense() const;
    std::string to_string() const;

    bool operator==(const MultiIndex&) const = default;
    std::strong_ordering operator<=>(const MultiIndex& other) const noexcept;

private:
    std::size_t dim_;
    std::vector<Entry> entries_;
};

} // namespace hermite_mc
