#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "recon/order.hpp"
#include "recon/report.hpp"

namespace recon {

/// Selects between the plain family M_p and the starred family M_p*.
enum class MatrixVariant : std::uint8_t { Plain, Star };

inline std::string_view to_string(MatrixVariant v) {
    return v == MatrixVariant::Plain ? "plain" : "star";
}

/// Signed entry of a weighted matrix; |value| <= n+1, zero only on the diagonal.
using Level = int;

namespace detail {

using Block4 = std::array<std::array<int, 4>, 4>;

inline constexpr Block4 kBasePlain{{{0, 1, 2, 3}, {-1, 0, 3, -2}, {-2, -3, 0, 1}, {-3, 2, -1, 0}}};
inline constexpr Block4 kBaseStar{{{0, -2, -3, -1}, {2, 0, 1, -3}, {3, -1, 0, 2}, {1, 3, -2, 0}}};

constexpr const Block4& base_block(MatrixVariant v) {
    return v == MatrixVariant::Plain ? kBasePlain : kBaseStar;
}

/// Non-negative residue, so that -1 maps to 3.
constexpr int mod4(std::int64_t v) { return static_cast<int>(((v % 4) + 4) % 4); }

} // namespace detail

/// Default refusal threshold for dense construction (entry_at serves larger orders).
inline constexpr int kDefaultMaxDenseOrder = 1 << 13;

/// Dense p x p matrix of levels, immutable after construction.
class WeightedMatrix {
public:
    [[nodiscard]] const Order& order() const noexcept { return order_; }
    [[nodiscard]] int p() const noexcept { return order_.p(); }
    [[nodiscard]] MatrixVariant variant() const noexcept { return variant_; }

    /// 1-based access.
    [[nodiscard]] Level operator()(int i, int j) const noexcept {
        return entries_[index(i, j)];
    }
    [[nodiscard]] Level at(int i, int j) const {
        require_index(order_, i, "row");
        require_index(order_, j, "column");
        return (*this)(i, j);
    }

    friend bool operator==(const WeightedMatrix& a, const WeightedMatrix& b) {
        return a.order_ == b.order_ && a.entries_ == b.entries_;
    }

private:
    WeightedMatrix(Order order, MatrixVariant variant)
        : order_(order),
          variant_(variant),
          entries_(static_cast<std::size_t>(order.p()) * static_cast<std::size_t>(order.p()), 0) {}

    [[nodiscard]] std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(order_.p()) +
               static_cast<std::size_t>(j - 1);
    }
    void set(int i, int j, Level v) { entries_[index(i, j)] = static_cast<std::int8_t>(v); }

    Order order_;
    MatrixVariant variant_;
    std::vector<std::int8_t> entries_;

    friend WeightedMatrix base_matrix(MatrixVariant);
    friend WeightedMatrix build_dense(Order, MatrixVariant, int);
};

/// The two 4 x 4 matrices every larger member is assembled from.
inline WeightedMatrix base_matrix(MatrixVariant variant) {
    WeightedMatrix m(Order(4), variant);
    const auto& b = detail::base_block(variant);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m.set(r + 1, c + 1, b[r][c]);
    return m;
}

/// Assembles the p/4 x p/4 array of 4 x 4 blocks. Each block is the base
/// block, possibly negated, plus a multiple of the identity chosen from the
/// block offset d = (block column - block row):
///
///   d odd,          d = +1 mod 4  ->  -B + 4I   (starred: -B* - 4I)
///   d odd,          d = -1 mod 4  ->  -B - 4I   (starred: -B* + 4I)
///   d = y 2^x, x>0, y = +1 mod 4  ->   B + (x+4)I  (starred: B* - (x+4)I)
///   d = y 2^x, x>0, y = -1 mod 4  ->   B - (x+4)I  (starred: B* + (x+4)I)
inline WeightedMatrix build_dense(Order order, MatrixVariant variant,
                                  int max_dense_order = kDefaultMaxDenseOrder) {
    if (order.p() > max_dense_order)
        throw std::length_error("dense construction refused for p = " + std::to_string(order.p()) +
                                " (budget " + std::to_string(max_dense_order) + ")");
    if (order.p() == 4) return base_matrix(variant);

    const auto& base = detail::base_block(variant);
    const int star = variant == MatrixVariant::Star ? -1 : 1;
    const int blocks = order.p() / 4;
    WeightedMatrix m(order, variant);

    for (int bi = 0; bi < blocks; ++bi) {
        for (int bj = 0; bj < blocks; ++bj) {
            const int d = bj - bi;
            int scale = 1;
            int diag = 0;
            if (d == 0) {
                // diagonal block: the base block as is
            } else if (d % 2 != 0) {
                scale = -1;
                diag = (detail::mod4(d) == 1 ? 4 : -4) * star;
            } else {
                int x = 0;
                int y = d;
                while (y % 2 == 0) {
                    y /= 2;
                    ++x;
                }
                const int cls = detail::mod4(y);
                if (cls != 1 && cls != 3) throw std::logic_error("block offset case analysis not total");
                diag = (cls == 1 ? x + 4 : -(x + 4)) * star;
            }
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    m.set(4 * bi + r + 1, 4 * bj + c + 1, scale * base[r][c] + (r == c ? diag : 0));
        }
    }
    return m;
}

/// Constant-time evaluation of a single entry without materializing the matrix.
[[nodiscard]] inline Level entry_at_unchecked(int p, MatrixVariant variant, int i, int j) noexcept {
    const int r = (i - 1) & 3;
    const int c = (j - 1) & 3;
    const int base = detail::base_block(variant)[r][c];
    if (p == 4) return base;
    const int d = ((j - 1) >> 2) - ((i - 1) >> 2);
    if (d == 0) return base;

    const auto mag = static_cast<std::uint32_t>(d < 0 ? -d : d);
    const int x = std::countr_zero(mag);
    const auto odd = static_cast<int>(mag >> x);
    // residue class of the signed odd part y: +1 or -1 mod 4
    const bool plus_one = ((odd & 3) == 1) == (d > 0);
    const int star = variant == MatrixVariant::Star ? -1 : 1;
    if (x == 0) return r == c ? (plus_one ? 4 : -4) * star : -base;
    return r == c ? (plus_one ? x + 4 : -(x + 4)) * star : base;
}

/// Entry (i, j) of M_p or M_p*, 1-based, in O(1).
[[nodiscard]] inline Level entry_at(const Order& order, MatrixVariant variant, int i, int j) {
    require_index(order, i, "row");
    require_index(order, j, "column");
    return entry_at_unchecked(order.p(), variant, i, j);
}

/// Sign s with M[i, j + p/2] = s * M[i, j] = M[i + p/2, j] for distinct i, j <= p/2.
/// At p = 8 every such pair flips; above that only pairs at distance p/4 do.
[[nodiscard]] inline int sign_flip(const Order& order, int i, int j) {
    if (order.p() < 8) throw std::invalid_argument("sign_flip requires p >= 8");
    if (i < 1 || i > order.half() || j < 1 || j > order.half())
        throw std::out_of_range("sign_flip indices must lie in 1..p/2");
    if (i == j) throw std::invalid_argument("sign_flip undefined for i == j");
    if (order.p() == 8) return -1;
    return std::abs(j - i) == order.p() / 4 ? -1 : 1;
}

/// Exhaustively checks the half-block identities (nested copies, sign
/// rule across halves, the +/-(n+1) entries at distance p/2) for both variants.
[[nodiscard]] inline VerificationReport check_lemma1(const Order& order) {
    if (order.p() < 8) throw std::invalid_argument("lemma1 requires p >= 8");
    VerificationReport report("lemma1", order.p());
    const int h = order.half();
    const int top = order.top_level();

    for (auto v : {MatrixVariant::Plain, MatrixVariant::Star}) {
        const auto big = build_dense(order, v);
        const auto small = build_dense(order.halved(), v);

        for (int i = 1; i <= h; ++i)
            for (int j = 1; j <= h; ++j) {
                report.expect_equal(small(i, j), big(i, j), 0, i, j, "a:upper-left");
                report.expect_equal(small(i, j), big(i + h, j + h), 0, i, j, "a:lower-right");
            }

        const char* part = order.p() == 8 ? "b" : "c";
        for (int i = 1; i <= h; ++i)
            for (int j = 1; j <= h; ++j) {
                if (i == j) continue;
                const int s = sign_flip(order, i, j);
                report.expect_equal(big(i, j), s * big(i, j + h), 0, i, j, part);
                report.expect_equal(big(i, j), s * big(i + h, j), 0, i, j, part);
            }
    }

    const auto plain = build_dense(order, MatrixVariant::Plain);
    const auto star = build_dense(order, MatrixVariant::Star);
    for (int i = 1; i <= h; ++i) {
        report.expect_equal(plain(i, i + h), top, 0, i, i + h, "d");
        report.expect_equal(star(i + h, i), top, 0, i + h, i, "d");
        report.expect_equal(plain(i + h, i), -top, 0, i + h, i, "d");
        report.expect_equal(star(i, i + h), -top, 0, i, i + h, "d");
    }
    return report;
}

/// Rows as comma-separated integers, newline-terminated, no header.
inline std::string to_csv(const WeightedMatrix& m) {
    std::string out;
    for (int i = 1; i <= m.p(); ++i) {
        for (int j = 1; j <= m.p(); ++j) {
            if (j > 1) out += ',';
            out += std::to_string(m(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace recon
