#include "hermite_mc/multi_index.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hermite_mc {

MultiIndex::MultiIndex(std::size_t dim) : dim_(dim)
{
    if (dim == 0) {
        throw std::invalid_argument("MultiIndex: dimension must be positive");
    }
}

MultiIndex MultiIndex::from_dense(std::span<const std::uint32_t> exponents)
{
    MultiIndex k(exponents.size());
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        if (exponents[j] != 0) {
            k.entries_.push_back({j, exponents[j]});
        }
    }
    return k;
}

MultiIndex MultiIndex::from_dense(std::initializer_list<std::uint32_t> exponents)
{
    return from_dense(std::span<const std::uint32_t>(exponents.begin(), exponents.size()));
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t coord)
{
    MultiIndex k(dim);
    k.set(coord, 1);
    return k;
}

MultiIndex MultiIndex::prefix_ones(std::size_t dim, std::size_t ones)
{
    if (ones > dim) {
        throw std::invalid_argument("MultiIndex::prefix_ones: more ones than coordinates");
    }
    MultiIndex k(dim);
    for (std::size_t j = 0; j < ones; ++j) {
        k.entries_.push_back({j, 1});
    }
    return k;
}

std::uint32_t MultiIndex::operator[](std::size_t coord) const
{
    if (coord >= dim_) {
        throw std::out_of_range("MultiIndex: coordinate out of range");
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                               [](const Entry& e, std::size_t c) { return e.coord < c; });
    return (it != entries_.end() && it->coord == coord) ? it->exponent : 0;
}

void MultiIndex::set(std::size_t coord, std::uint32_t exponent)
{
    if (coord >= dim_) {
        throw std::out_of_range("MultiIndex: coordinate out of range");
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                               [](const Entry& e, std::size_t c) { return e.coord < c; });
    const bool present = it != entries_.end() && it->coord == coord;
    if (exponent == 0) {
        if (present) {
            entries_.erase(it);
        }
    } else if (present) {
        it->exponent = exponent;
    } else {
        entries_.insert(it, Entry{coord, exponent});
    }
}

std::uint64_t MultiIndex::total_degree() const noexcept
{
    std::uint64_t total = 0;
    for (const auto& e : entries_) {
        total += e.exponent;
    }
    return total;
}

std::vector<std::uint32_t> MultiIndex::to_dense() const
{
    std::vector<std::uint32_t> dense(dim_, 0);
    for (const auto& e : entries_) {
        dense[e.coord] = e.exponent;
    }
    return dense;
}

std::string MultiIndex::to_string() const
{
    std::ostringstream os;
    os << '(';
    const auto dense = to_dense();
    for (std::size_t j = 0; j < dense.size(); ++j) {
        if (j > 0) {
            os << ',';
        }
        os << dense[j];
    }
    os << ')';
    return os.str();
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const noexcept
{
    if (auto c = dim_ <=> other.dim_; c != 0) {
        return c;
    }
    if (auto c = total_degree() <=> other.total_degree(); c != 0) {
        return c;
    }
    // walk both sparse lists in coordinate order; the first differing
    // coordinate decides, larger exponent first
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < entries_.size() || j < other.entries_.size()) {
        const std::size_t ci = i < entries_.size() ? entries_[i].coord : dim_;
        const std::size_t cj = j < other.entries_.size() ? other.entries_[j].coord : dim_;
        const std::size_t c = std::min(ci, cj);
        const std::uint32_t ei = ci == c ? entries_[i].exponent : 0;
        const std::uint32_t ej = cj == c ? other.entries_[j].exponent : 0;
        if (ei != ej) {
            return ej <=> ei;
        }
        if (ci == c) {
            ++i;
        }
        if (cj == c) {
            ++j;
        }
    }
    return std::strong_ordering::equal;
}

} // namespace hermite_mc
