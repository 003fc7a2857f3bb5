#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "hermite_mc/multi_index.hpp"

using hermite_mc::MultiIndex;

TEST_SUITE("multi_index")
{
    TEST_CASE("zero exponents are not stored")
    {
        MultiIndex k = MultiIndex::from_dense({0, 3, 0, 1});
        CHECK(k.dim() == 4);
        CHECK(k.entries().size() == 2);
        CHECK(k[1] == 3);
        CHECK(k[0] == 0);
        k.set(1, 0);
        CHECK(k.entries().size() == 1);
        CHECK(k.total_degree() == 1);
        CHECK(k == MultiIndex::unit(4, 3));
    }

    TEST_CASE("dense round trip and formatting")
    {
        const std::vector<std::uint32_t> dense{2, 0, 5};
        const MultiIndex k = MultiIndex::from_dense(dense);
        CHECK(k.to_dense() == dense);
        CHECK(k.to_string() == "(2,0,5)");
        CHECK(MultiIndex(3).is_zero());
    }

    TEST_CASE("contract errors")
    {
        CHECK_THROWS_AS(MultiIndex(0), std::invalid_argument);
        MultiIndex k(2);
        CHECK_THROWS_AS(k.set(2, 1), std::out_of_range);
        CHECK_THROWS_AS((void)k[5], std::out_of_range);
        CHECK_THROWS_AS(MultiIndex::prefix_ones(2, 3), std::invalid_argument);
    }

    TEST_CASE("equality needs equal dimension")
    {
        CHECK(MultiIndex(2) != MultiIndex(3));
        CHECK(MultiIndex::unit(2, 0) != MultiIndex::unit(3, 0));
    }

    TEST_CASE("graded order")
    {
        const MultiIndex z(2);
        const MultiIndex e0 = MultiIndex::unit(2, 0);
        const MultiIndex e1 = MultiIndex::unit(2, 1);
        CHECK(z < e0);
        CHECK(e0 < e1);
        CHECK(e1 < MultiIndex::from_dense({2, 0}));
        CHECK(MultiIndex::from_dense({2, 0}) < MultiIndex::from_dense({1, 1}));
        CHECK(MultiIndex::from_dense({1, 1}) < MultiIndex::from_dense({0, 2}));
        // the prefix of ones is the smallest 0/1 vector of its degree
        const MultiIndex prefix = MultiIndex::prefix_ones(4, 2);
        for (const auto& other : {MultiIndex::from_dense({1, 0, 1, 0}), MultiIndex::from_dense({0, 1, 1, 0}),
                                  MultiIndex::from_dense({0, 0, 1, 1})}) {
            CHECK(prefix < other);
        }
    }

    TEST_CASE("order is a strict total order on a sample")
    {
        std::vector<MultiIndex> all;
        for (std::uint32_t a = 0; a < 4; ++a) {
            for (std::uint32_t b = 0; b < 4; ++b) {
                for (std::uint32_t c = 0; c < 4; ++c) {
                    all.push_back(MultiIndex::from_dense({a, b, c}));
                }
            }
        }
        std::sort(all.begin(), all.end());
        for (std::size_t i = 1; i < all.size(); ++i) {
            CHECK(all[i - 1] < all[i]);
            CHECK(all[i - 1].total_degree() <= all[i].total_degree());
        }
    }
}
