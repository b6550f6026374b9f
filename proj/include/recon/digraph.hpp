#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "recon/deletion_maps.hpp"
#include "recon/order.hpp"
#include "recon/report.hpp"
#include "recon/weight_matrix.hpp"

namespace recon {

/// Loop-free digraph on points 1..p with a bit-packed adjacency matrix.
class Digraph {
public:
    explicit Digraph(int points)
        : p_(points),
          words_((points + 63) / 64),
          bits_(static_cast<std::size_t>(points) * static_cast<std::size_t>(words_), 0) {
        if (points < 0) throw std::invalid_argument("negative digraph order");
    }

    [[nodiscard]] int order() const noexcept { return p_; }

    [[nodiscard]] bool has_arc(int i, int j) const noexcept {
        const auto [w, mask] = locate(i, j);
        return (bits_[w] & mask) != 0;
    }

    void set_arc(int i, int j, bool present = true) {
        if (i < 1 || i > p_ || j < 1 || j > p_) throw std::out_of_range("arc endpoint out of range");
        if (i == j && present) throw std::invalid_argument("loops are not allowed");
        const auto [w, mask] = locate(i, j);
        if (present)
            bits_[w] |= mask;
        else
            bits_[w] &= ~mask;
    }

    [[nodiscard]] int out_degree(int i) const noexcept {
        int d = 0;
        const auto row = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(words_);
        for (int w = 0; w < words_; ++w) d += std::popcount(bits_[row + static_cast<std::size_t>(w)]);
        return d;
    }

    [[nodiscard]] int in_degree(int j) const noexcept {
        int d = 0;
        for (int i = 1; i <= p_; ++i) d += has_arc(i, j) ? 1 : 0;
        return d;
    }

    [[nodiscard]] std::int64_t arc_count() const noexcept {
        std::int64_t c = 0;
        for (auto w : bits_) c += std::popcount(w);
        return c;
    }

    /// Exactly one arc between every pair of distinct points.
    [[nodiscard]] bool is_tournament() const noexcept {
        for (int i = 1; i <= p_; ++i)
            for (int j = i + 1; j <= p_; ++j)
                if (has_arc(i, j) == has_arc(j, i)) return false;
        return true;
    }

    /// Subdigraph induced on `points`, relabeled 1..size in the given order.
    [[nodiscard]] Digraph induced(std::span<const int> points) const {
        Digraph out(static_cast<int>(points.size()));
        for (std::size_t a = 0; a < points.size(); ++a)
            for (std::size_t b = 0; b < points.size(); ++b)
                if (a != b && has_arc(points[a], points[b]))
                    out.set_arc(static_cast<int>(a) + 1, static_cast<int>(b) + 1);
        return out;
    }

    /// G - v_k, remaining points relabeled order-preservingly.
    [[nodiscard]] Digraph delete_point(int k) const {
        if (k < 1 || k > p_) throw std::out_of_range("deleted point out of range");
        std::vector<int> keep;
        keep.reserve(static_cast<std::size_t>(p_ - 1));
        for (int i = 1; i <= p_; ++i)
            if (i != k) keep.push_back(i);
        return induced(keep);
    }

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    [[nodiscard]] std::pair<std::size_t, std::uint64_t> locate(int i, int j) const noexcept {
        const auto c = static_cast<std::size_t>(j - 1);
        return {static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(words_) + c / 64,
                std::uint64_t{1} << (c % 64)};
    }

    int p_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

using ScoreVector = std::vector<int>;

[[nodiscard]] inline ScoreVector scores(const Digraph& g) {
    ScoreVector s(static_cast<std::size_t>(g.order()));
    for (int i = 1; i <= g.order(); ++i) s[static_cast<std::size_t>(i - 1)] = g.out_degree(i);
    return s;
}

/// One bit per nonzero level -(n+1)..-1, 1..n+1, so every occurrence of a
/// level gets the same value.
class BinaryAssignment {
public:
    /// Bit b of `code` is the value of the b-th level in ascending order,
    /// starting from -(n+1).
    static BinaryAssignment from_code(int n, std::uint64_t code) {
        if (n < 2 || n > 30) throw std::invalid_argument("assignment level count out of range");
        if (code >> (2 * (n + 1)) != 0) throw std::invalid_argument("assignment code has stray bits");
        return BinaryAssignment(n, code);
    }

    static BinaryAssignment from_rule(int n, const std::function<bool(Level)>& rule) {
        std::uint64_t code = 0;
        BinaryAssignment a(n, 0);
        for (int b = 0; b < a.level_count(); ++b)
            if (rule(a.level_at(b))) code |= std::uint64_t{1} << b;
        return from_code(n, code);
    }

    /// Positive levels to 1, negative to 0: yields the tournament pair.
    static BinaryAssignment positive(int n) {
        return from_rule(n, [](Level v) { return v > 0; });
    }

    /// 1 on levels 1, -1 and >= 3; 0 on 2, -2 and <= -3.
    static BinaryAssignment variant(int n) {
        return from_rule(n, [](Level v) { return v == 1 || v == -1 || v >= 3; });
    }

    static BinaryAssignment constant(int n, bool value) {
        return from_rule(n, [value](Level) { return value; });
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int level_count() const noexcept { return 2 * (n_ + 1); }
    [[nodiscard]] std::uint64_t code() const noexcept { return code_; }

    [[nodiscard]] Level level_at(int b) const noexcept {
        const int top = n_ + 1;
        return b < top ? b - top : b - top + 1;
    }

    [[nodiscard]] bool operator()(Level v) const {
        const int top = n_ + 1;
        if (v == 0 || v > top || v < -top)
            throw std::out_of_range("level " + std::to_string(v) + " outside assignment domain");
        const int b = v < 0 ? v + top : v + top - 1;
        return ((code_ >> b) & 1U) != 0;
    }

    /// Same assignment with the values of n+1 and -(n+1) exchanged.
    [[nodiscard]] BinaryAssignment with_extremes_swapped() const {
        const int top = n_ + 1;
        std::uint64_t c = code_;
        const bool lo = (*this)(-top);
        const bool hi = (*this)(top);
        const int lo_bit = 0;
        const int hi_bit = level_count() - 1;
        c &= ~((std::uint64_t{1} << lo_bit) | (std::uint64_t{1} << hi_bit));
        if (hi) c |= std::uint64_t{1} << lo_bit;
        if (lo) c |= std::uint64_t{1} << hi_bit;
        return BinaryAssignment(n_, c);
    }

    /// Values as '0'/'1' in ascending level order.
    [[nodiscard]] std::string bits_string() const {
        std::string s;
        for (int b = 0; b < level_count(); ++b) s += ((code_ >> b) & 1U) ? '1' : '0';
        return s;
    }

    friend bool operator==(const BinaryAssignment&, const BinaryAssignment&) = default;

private:
    BinaryAssignment(int n, std::uint64_t code) : n_(n), code_(code) {}
    int n_;
    std::uint64_t code_;
};

inline Digraph apply_assignment(const WeightedMatrix& m, const BinaryAssignment& a) {
    if (a.n() != m.order().n())
        throw std::invalid_argument("assignment built for n = " + std::to_string(a.n()) +
                                    ", matrix has n = " + std::to_string(m.order().n()));
    Digraph g(m.p());
    for (int i = 1; i <= m.p(); ++i)
        for (int j = 1; j <= m.p(); ++j)
            if (i != j && a(m(i, j))) g.set_arc(i, j);
    return g;
}

/// As apply_assignment, reading entries through the O(1) oracle.
inline Digraph assign(const Order& order, MatrixVariant variant, const BinaryAssignment& a) {
    if (a.n() != order.n()) throw std::invalid_argument("assignment order mismatch");
    const int p = order.p();
    Digraph g(p);
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j)
            if (i != j && a(entry_at_unchecked(p, variant, i, j))) g.set_arc(i, j);
    return g;
}

struct DigraphPair {
    Digraph plain;
    Digraph star;
};

inline DigraphPair assigned_pair(const Order& order, const BinaryAssignment& a) {
    return {assign(order, MatrixVariant::Plain, a), assign(order, MatrixVariant::Star, a)};
}

/// The tournaments G_p and G_p*.
inline DigraphPair standard_pair(const Order& order) {
    return assigned_pair(order, BinaryAssignment::positive(order.n()));
}

/// The non-tournament pair from the alternative threshold.
inline DigraphPair variant_pair(const Order& order) {
    if (order.p() < 8) throw std::invalid_argument("variant_pair requires p >= 8");
    return assigned_pair(order, BinaryAssignment::variant(order.n()));
}

/// Whether perm (1-based images) carries arcs of g exactly onto arcs of h.
[[nodiscard]] inline bool is_isomorphism(const Digraph& g, const Digraph& h, std::span<const int> perm) {
    if (g.order() != h.order() || static_cast<int>(perm.size()) != g.order()) return false;
    for (int i = 1; i <= g.order(); ++i)
        for (int j = 1; j <= g.order(); ++j)
            if (i != j && g.has_arc(i, j) != h.has_arc(perm[static_cast<std::size_t>(i - 1)],
                                                      perm[static_cast<std::size_t>(j - 1)]))
                return false;
    return true;
}

/// When a(n+1) == a(-(n+1)) the extended sigma_{p,1} joins the two assigned
/// digraphs; returns it after checking every arc. Returns nothing otherwise.
inline std::optional<ExtendedMap> forced_isomorphism(const Order& order, const BinaryAssignment& a) {
    if (order.p() < 8) throw std::invalid_argument("forced_isomorphism requires p >= 8");
    const int top = order.top_level();
    if (a(top) != a(-top)) return std::nullopt;
    auto pi = extend_sigma_p1(order);
    const auto pair = assigned_pair(order, a);
    if (!is_isomorphism(pair.plain, pair.star, pi.permutation()))
        throw std::logic_error("extended sigma_{p,1} failed to be an isomorphism at p = " +
                               std::to_string(order.p()));
    return pi;
}

/// Checks that relabeling by the half swap tau exchanges the levels n+1 and
/// -(n+1) and fixes every other entry, in both variants.
[[nodiscard]] inline VerificationReport check_swap_involution(const Order& order) {
    if (order.p() < 8) throw std::invalid_argument("swap requires p >= 8");
    const int p = order.p();
    const int h = order.half();
    const int top = order.top_level();
    auto tau = [h](int i) { return i <= h ? i + h : i - h; };
    VerificationReport report("swap", p);
    for (auto v : {MatrixVariant::Plain, MatrixVariant::Star}) {
        const int k = v == MatrixVariant::Plain ? 0 : 1;
        for (int i = 1; i <= p; ++i)
            for (int j = 1; j <= p; ++j) {
                const Level m = entry_at_unchecked(p, v, i, j);
                const Level expected = m == top ? -top : m == -top ? top : m;
                report.expect_equal(entry_at_unchecked(p, v, tau(i), tau(j)), expected, k, i, j,
                                    v == MatrixVariant::Plain ? "plain" : "star");
            }
        for (int i = 1; i <= p; ++i) report.expect_equal(tau(tau(i)), i, k, i, 0, "involution");
    }
    return report;
}

/// The half swap (1, 1+p/2)(2, 2+p/2)...(p/2, p) as 1-based images.
inline std::vector<int> swap_involution(const Order& order) {
    const auto report = check_swap_involution(order);
    if (!report.passed())
        throw std::logic_error("half swap does not only exchange the extreme levels at p = " +
                               std::to_string(order.p()));
    std::vector<int> tau(static_cast<std::size_t>(order.p()));
    for (int i = 1; i <= order.p(); ++i)
        tau[static_cast<std::size_t>(i - 1)] = i <= order.half() ? i + order.half() : i - order.half();
    return tau;
}

/// Relabels g by perm: arc i -> j becomes perm(i) -> perm(j).
inline Digraph relabel(const Digraph& g, std::span<const int> perm) {
    Digraph out(g.order());
    for (int i = 1; i <= g.order(); ++i)
        for (int j = 1; j <= g.order(); ++j)
            if (g.has_arc(i, j))
                out.set_arc(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]);
    return out;
}

} // namespace recon
