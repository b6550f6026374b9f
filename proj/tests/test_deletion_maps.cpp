#include <algorithm>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "recon/deletion_maps.hpp"

using recon::Order;

namespace {

TEST(BaseSigma, OrderFourColumns) {
    const auto s1 = recon::base_sigma(1);
    EXPECT_EQ(s1(2), 4);
    EXPECT_EQ(s1(3), 2);
    EXPECT_EQ(s1(4), 3);
    const auto s4 = recon::base_sigma(4);
    EXPECT_EQ(s4(1), 2);
    EXPECT_EQ(s4(2), 3);
    EXPECT_EQ(s4(3), 1);
    EXPECT_FALSE(recon::base_sigma(2).value(2).has_value());
    EXPECT_THROW((void)recon::base_sigma(0), std::out_of_range);
    EXPECT_THROW((void)recon::base_sigma(5), std::out_of_range);
}

TEST(Sigma, SpotValues) {
    EXPECT_EQ(recon::sigma(Order(8), 1, 2), 8);
    EXPECT_EQ(recon::sigma(Order(8), 1, 5), 5);
    EXPECT_EQ(recon::sigma(Order(16), 1, 9), 9);
    EXPECT_EQ(recon::sigma(Order(16), 2, 5), 11);
    EXPECT_THROW((void)recon::sigma(Order(8), 3, 3), std::invalid_argument);
    EXPECT_THROW((void)recon::sigma(Order(8), 9, 1), std::out_of_range);
}

TEST(Sigma, FoldedFormMatchesLiteralRecursion) {
    for (int p = 4; p <= 64; p *= 2)
        for (int k = 1; k <= p; ++k)
            for (int i = 1; i <= p; ++i)
                if (i != k) {
                    ASSERT_EQ(recon::sigma(Order(p), k, i), oracle::sigma_literal(p, k, i)) << p << " " << k << " " << i;
                }
}

TEST(BuildMap, TablesMatchGoldenFixtures) {
    EXPECT_EQ(recon::to_tsv(Order(4)), oracle::read_fixture("sigma4.tsv"));
    EXPECT_EQ(recon::to_tsv(Order(8)), oracle::read_fixture("sigma8.tsv"));
    EXPECT_EQ(recon::to_tsv(Order(16)), oracle::read_fixture("sigma16.tsv"));
    EXPECT_EQ(recon::build_map(Order(4), 2), recon::base_sigma(2));

    const auto m = recon::build_map(Order(8), 3);
    const std::vector<int> column3{8, 5, 0, 6, 4, 1, 7, 2}; // p = 8, k = 3
    EXPECT_EQ(m.table(), column3);
}

TEST(BuildMap, EveryTableIsABijectionOffTheDeletedPoint) {
    for (int p = 4; p <= 128; p *= 2)
        for (int k = 1; k <= p; ++k) {
            auto t = recon::build_map(Order(p), k).table();
            t.erase(t.begin() + (k - 1));
            std::sort(t.begin(), t.end());
            std::vector<int> expected;
            for (int i = 1; i <= p; ++i)
                if (i != k) expected.push_back(i);
            ASSERT_EQ(t, expected) << p << " " << k;
        }
}

TEST(DeletionMap, FromTableRejectsNonBijections) {
    EXPECT_THROW((void)recon::DeletionMap::from_table(Order(4), 1, {0, 2, 2, 3}), std::logic_error);
    EXPECT_THROW((void)recon::DeletionMap::from_table(Order(4), 1, {0, 1, 2, 3}), std::logic_error);
    EXPECT_THROW((void)recon::DeletionMap::from_table(Order(4), 1, {0, 2, 3}), std::invalid_argument);
    EXPECT_NO_THROW((void)recon::DeletionMap::from_table(Order(4), 1, {0, 2, 3, 4}));
}

TEST(Lemma2, PassesExhaustively) {
    for (int p : {8, 16, 128}) {
        const auto r = recon::check_lemma2(Order(p));
        EXPECT_TRUE(r.passed()) << r.to_json().dump();
    }
    EXPECT_THROW((void)recon::check_lemma2(Order(4)), std::invalid_argument);
}

TEST(Lemma2, ParallelRunAgreesWithSerial) {
    const auto a = recon::check_lemma2(Order(32), 1);
    const auto b = recon::check_lemma2(Order(32), 4);
    EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Sigma, HalfShiftAndColumnHalvingProperties) {
    for (int p = 8; p <= 64; p *= 2) {
        const Order order(p);
        const int h = order.half();
        for (int k = 1; k <= p; ++k)
            for (int i = 1; i <= h; ++i)
                if (k != i && k != i + h) {
                    ASSERT_EQ(recon::sigma(order, k, i + h), recon::sigma(order, k, i) - h);
                }
        for (int k = 1; k <= h; ++k)
            for (int i = 1; i <= p; ++i)
                if (i != k && i != k + h) {
                    ASSERT_EQ(recon::sigma(order, k, i), recon::sigma(order, k + h, i));
                }
    }
}

TEST(ExtendSigma, FixesPointOne) {
    const auto e = recon::extend_sigma_p1(Order(8));
    EXPECT_EQ(e(1), 1);
    EXPECT_EQ(e(2), 8);
    auto perm = e.permutation();
    std::sort(perm.begin(), perm.end());
    EXPECT_EQ(perm, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
    EXPECT_THROW((void)recon::extend_sigma_p1(Order(4)), std::invalid_argument);
}

TEST(DeletionMapCache, ConcurrentReadersSeeOneTablePerKey) {
    recon::DeletionMapCache cache;
    std::vector<std::shared_ptr<const recon::DeletionMap>> seen(8);
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < 8; ++t)
            pool.emplace_back([&, t] { seen[static_cast<std::size_t>(t)] = cache.get(Order(32), 5); });
    }
    for (const auto& s : seen) EXPECT_EQ(s, seen.front());
    EXPECT_EQ(cache.size(), 1U);
}

} // namespace
