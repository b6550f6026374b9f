#include <cstdlib>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "recon/weight_matrix.hpp"

using recon::MatrixVariant;
using recon::Order;

namespace {

constexpr MatrixVariant kBoth[] = {MatrixVariant::Plain, MatrixVariant::Star};

TEST(Order, RejectsNonPowersAndSmallOrders) {
    EXPECT_THROW(Order(2), std::invalid_argument);
    EXPECT_THROW(Order(12), std::invalid_argument);
    EXPECT_THROW(Order(0), std::invalid_argument);
    EXPECT_THROW(Order(-8), std::invalid_argument);
    EXPECT_EQ(Order(64).n(), 6);
    EXPECT_EQ(Order(64).top_level(), 7);
}

TEST(BaseMatrix, BaseBlockEntries) {
    EXPECT_EQ(recon::base_matrix(MatrixVariant::Plain)(1, 2), 1);
    EXPECT_EQ(recon::base_matrix(MatrixVariant::Star)(1, 2), -2);
    EXPECT_EQ(recon::base_matrix(MatrixVariant::Plain)(3, 3), 0);
}

TEST(BuildDense, ReproducesGoldenFixtures) {
    EXPECT_EQ(to_csv(recon::build_dense(Order(4), MatrixVariant::Plain)), oracle::read_fixture("m4_plain.csv"));
    EXPECT_EQ(to_csv(recon::build_dense(Order(4), MatrixVariant::Star)), oracle::read_fixture("m4_star.csv"));
    EXPECT_EQ(to_csv(recon::build_dense(Order(8), MatrixVariant::Plain)), oracle::read_fixture("m8_plain.csv"));
    EXPECT_EQ(to_csv(recon::build_dense(Order(8), MatrixVariant::Star)), oracle::read_fixture("m8_star.csv"));
    EXPECT_EQ(to_csv(recon::build_dense(Order(16), MatrixVariant::Plain)), oracle::read_fixture("m16_plain.csv"));
    EXPECT_EQ(to_csv(recon::build_dense(Order(16), MatrixVariant::Star)), oracle::read_fixture("m16_star.csv"));
}

TEST(BuildDense, OrderFourIsBase) {
    for (auto v : kBoth) EXPECT_EQ(recon::build_dense(Order(4), v), recon::base_matrix(v));
}

TEST(BuildDense, RefusesOverBudget) {
    EXPECT_THROW((void)recon::build_dense(Order(64), MatrixVariant::Plain, 32), std::length_error);
    EXPECT_NO_THROW((void)recon::build_dense(Order(32), MatrixVariant::Plain, 32));
}

TEST(EntryAt, SpotValues) {
    EXPECT_EQ(recon::entry_at(Order(8), MatrixVariant::Plain, 1, 5), 4);
    EXPECT_EQ(recon::entry_at(Order(16), MatrixVariant::Plain, 1, 13), -4);
    EXPECT_EQ(recon::entry_at(Order(16), MatrixVariant::Plain, 1, 9), 5);
    // frozen from build_dense(32, Plain)
    EXPECT_EQ(recon::entry_at(Order(32), MatrixVariant::Plain, 3, 19), 6);
    EXPECT_EQ(recon::build_dense(Order(32), MatrixVariant::Plain)(3, 19), 6);
}

TEST(EntryAt, RejectsOutOfRange) {
    EXPECT_THROW((void)recon::entry_at(Order(8), MatrixVariant::Plain, 0, 1), std::out_of_range);
    EXPECT_THROW((void)recon::entry_at(Order(8), MatrixVariant::Plain, 1, 9), std::out_of_range);
}

TEST(EntryAt, MatchesDenseConstructionUpTo256) {
    for (int p = 4; p <= 256; p *= 2)
        for (auto v : kBoth) {
            const auto m = recon::build_dense(Order(p), v);
            for (int i = 1; i <= p; ++i)
                for (int j = 1; j <= p; ++j) ASSERT_EQ(recon::entry_at(Order(p), v, i, j), m(i, j)) << p << " " << i << " " << j;
        }
}

TEST(WeightedMatrix, StructuralInvariants) {
    for (int p = 4; p <= 256; p *= 2) {
        const Order order(p);
        for (auto v : kBoth) {
            const auto m = recon::build_dense(order, v);
            int attained = 0;
            for (int i = 1; i <= p; ++i) {
                ASSERT_EQ(m(i, i), 0);
                for (int j = 1; j <= p; ++j) {
                    ASSERT_EQ(m(j, i), -m(i, j));
                    ASSERT_LE(std::abs(m(i, j)), order.top_level());
                    if (i != j) {
                        ASSERT_NE(m(i, j), 0);
                    }
                    if (std::abs(m(i, j)) == order.top_level()) {
                        ++attained;
                        if (p >= 8) {
                            ASSERT_EQ(std::abs(i - j), order.half());
                        }
                    }
                }
            }
            // the extreme level sits exactly on the p pairs (i, i +/- p/2)
            if (p >= 8) {
                EXPECT_EQ(attained, p) << p;
            }
        }
    }
}

TEST(WeightedMatrix, VariantRelationAtHalfDistance) {
    for (int p = 8; p <= 256; p *= 2) {
        const Order order(p);
        for (int i = 1; i <= order.half(); ++i) {
            EXPECT_EQ(recon::entry_at(order, MatrixVariant::Plain, i, i + order.half()), order.top_level());
            EXPECT_EQ(recon::entry_at(order, MatrixVariant::Star, i, i + order.half()), -order.top_level());
        }
    }
}

TEST(SignFlip, Values) {
    EXPECT_EQ(recon::sign_flip(Order(8), 1, 2), -1);
    EXPECT_EQ(recon::sign_flip(Order(16), 1, 5), -1);
    EXPECT_EQ(recon::sign_flip(Order(16), 1, 2), 1);
    EXPECT_THROW((void)recon::sign_flip(Order(16), 3, 3), std::invalid_argument);
    EXPECT_THROW((void)recon::sign_flip(Order(16), 1, 9), std::out_of_range);
    EXPECT_THROW((void)recon::sign_flip(Order(4), 1, 2), std::invalid_argument);
}

TEST(Lemma1, PassesAtSmallAndLargeOrders) {
    for (int p : {8, 16, 64}) {
        const auto r = recon::check_lemma1(Order(p));
        EXPECT_TRUE(r.passed()) << p << " " << r.to_json().dump();
        EXPECT_GT(r.checked(), 0U);
    }
    EXPECT_THROW((void)recon::check_lemma1(Order(4)), std::invalid_argument);
}

TEST(Lemma1, SignFlipsExactlyAtQuarterDistance) {
    const Order order(16);
    const auto m = recon::build_dense(order, MatrixVariant::Plain);
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j) {
            if (i == j) continue;
            const bool flipped = m(i, j + 8) == -m(i, j);
            EXPECT_EQ(flipped, std::abs(j - i) == 4) << i << "," << j;
        }
}

TEST(WeightedMatrix, CsvIsNewlineTerminatedWithoutHeader) {
    const auto csv = to_csv(recon::base_matrix(MatrixVariant::Plain));
    EXPECT_EQ(csv, "0,1,2,3\n-1,0,3,-2\n-2,-3,0,1\n-3,2,-1,0\n");
}

} // namespace
