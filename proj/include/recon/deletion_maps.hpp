#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "recon/order.hpp"
#include "recon/parallel.hpp"
#include "recon/report.hpp"

namespace recon {

/// A bijection on {1..p} \ {k}. Slot k of the table is absent.
class DeletionMap {
public:
    /// Validates that `table` (1-based, slot k ignored) is a bijection of {1..p}\{k}.
    static DeletionMap from_table(Order order, int k, std::vector<int> table) {
        require_index(order, k, "deleted point");
        if (static_cast<int>(table.size()) != order.p())
            throw std::invalid_argument("deletion map table must have p slots");
        table[static_cast<std::size_t>(k - 1)] = kAbsent;
        std::vector<bool> hit(static_cast<std::size_t>(order.p()) + 1, false);
        for (int i = 1; i <= order.p(); ++i) {
            if (i == k) continue;
            const int v = table[static_cast<std::size_t>(i - 1)];
            if (!order.contains(v) || v == k || hit[static_cast<std::size_t>(v)])
                throw std::logic_error("deletion map for k = " + std::to_string(k) +
                                       " is not a bijection at i = " + std::to_string(i));
            hit[static_cast<std::size_t>(v)] = true;
        }
        return DeletionMap(order, k, std::move(table));
    }

    [[nodiscard]] const Order& order() const noexcept { return order_; }
    [[nodiscard]] int deleted_point() const noexcept { return k_; }

    /// Image of i; i must differ from the deleted point.
    [[nodiscard]] int operator()(int i) const noexcept { return table_[static_cast<std::size_t>(i - 1)]; }

    [[nodiscard]] std::optional<int> value(int i) const {
        require_index(order_, i, "point");
        if (i == k_) return std::nullopt;
        return (*this)(i);
    }

    /// Raw slots, 0 in slot k.
    [[nodiscard]] const std::vector<int>& table() const noexcept { return table_; }

    friend bool operator==(const DeletionMap& a, const DeletionMap& b) {
        return a.order_ == b.order_ && a.k_ == b.k_ && a.table_ == b.table_;
    }

    static constexpr int kAbsent = 0;

private:
    DeletionMap(Order order, int k, std::vector<int> table)
        : order_(order), k_(k), table_(std::move(table)) {}

    Order order_;
    int k_;
    std::vector<int> table_;
};

namespace detail {

// kSigma4[k-1][i-1], 0 where i == k
inline constexpr std::array<std::array<int, 4>, 4> kSigma4{{
    {0, 4, 2, 3},
    {3, 0, 4, 1},
    {4, 1, 0, 2},
    {2, 3, 1, 0},
}};

} // namespace detail

inline DeletionMap base_sigma(int k) {
    if (k < 1 || k > 4) throw std::out_of_range("base_sigma: k must be in 1..4");
    const auto& row = detail::kSigma4[static_cast<std::size_t>(k - 1)];
    return DeletionMap::from_table(Order(4), k, std::vector<int>(row.begin(), row.end()));
}

/// sigma_{p,k}(i) without argument checks. Each halving step folds i and k
/// into the lower half; if they fold together i is fixed, otherwise the
/// recursion continues with an offset of p/2 whenever i sat in the lower half.
[[nodiscard]] inline int sigma_unchecked(int p, int k, int i) noexcept {
    int offset = 0;
    while (p > 4) {
        const int h = p / 2;
        const int fi = i > h ? i - h : i;
        const int fk = k > h ? k - h : k;
        if (fi == fk) return i + offset;
        if (i <= h) offset += h;
        i = fi;
        k = fk;
        p = h;
    }
    return detail::kSigma4[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)] + offset;
}

[[nodiscard]] inline int sigma(const Order& order, int k, int i) {
    require_index(order, k, "deleted point");
    require_index(order, i, "point");
    if (i == k) throw std::invalid_argument("sigma_{p,k}(k) is undefined");
    return sigma_unchecked(order.p(), k, i);
}

inline DeletionMap build_map(Order order, int k) {
    require_index(order, k, "deleted point");
    std::vector<int> table(static_cast<std::size_t>(order.p()), DeletionMap::kAbsent);
    for (int i = 1; i <= order.p(); ++i)
        if (i != k) table[static_cast<std::size_t>(i - 1)] = sigma_unchecked(order.p(), k, i);
    return DeletionMap::from_table(order, k, std::move(table));
}

/// Thread-safe memo of built tables keyed by (p, k).
class DeletionMapCache {
public:
    std::shared_ptr<const DeletionMap> get(Order order, int k) {
        const auto key = std::make_pair(order.p(), k);
        {
            std::shared_lock lock(mutex_);
            if (auto it = maps_.find(key); it != maps_.end()) return it->second;
        }
        auto built = std::make_shared<const DeletionMap>(build_map(order, k));
        std::unique_lock lock(mutex_);
        return maps_.try_emplace(key, std::move(built)).first->second;
    }

    /// All p maps of one order, k = 1..p.
    std::vector<std::shared_ptr<const DeletionMap>> all(Order order) {
        std::vector<std::shared_ptr<const DeletionMap>> out;
        out.reserve(static_cast<std::size_t>(order.p()));
        for (int k = 1; k <= order.p(); ++k) out.push_back(get(order, k));
        return out;
    }

    [[nodiscard]] std::size_t size() const {
        std::shared_lock lock(mutex_);
        return maps_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<int, int>, std::shared_ptr<const DeletionMap>> maps_;
};

inline DeletionMapCache& default_map_cache() {
    static DeletionMapCache cache;
    return cache;
}

/// sigma_{p,1} completed to a permutation of {1..p} by fixing point 1.
class ExtendedMap {
public:
    [[nodiscard]] const Order& order() const noexcept { return order_; }
    [[nodiscard]] int operator()(int i) const noexcept { return perm_[static_cast<std::size_t>(i - 1)]; }
    [[nodiscard]] const std::vector<int>& permutation() const noexcept { return perm_; }

private:
    ExtendedMap(Order order, std::vector<int> perm) : order_(order), perm_(std::move(perm)) {}
    Order order_;
    std::vector<int> perm_;
    friend ExtendedMap extend_sigma_p1(Order);
};

inline ExtendedMap extend_sigma_p1(Order order) {
    if (order.p() < 8) throw std::invalid_argument("extend_sigma_p1 requires p >= 8");
    auto perm = default_map_cache().get(order, 1)->table();
    perm[0] = 1;
    return ExtendedMap(order, std::move(perm));
}

/// Exhaustive check of the four mapping identities: equal columns k and
/// k+p/2 away from both, the half-shift rule, and the two "distance p/2"
/// equivalences with matching signs.
[[nodiscard]] inline VerificationReport check_lemma2(const Order& order, int jobs = 1) {
    if (order.p() < 8) throw std::invalid_argument("lemma2 requires p >= 8");
    const int p = order.p();
    const int h = order.half();
    auto maps = default_map_cache().all(order);
    auto s = [&](int k, int i) { return (*maps[static_cast<std::size_t>(k - 1)])(i); };

    VerificationReport report("lemma2", p);
    for (int k = 1; k <= h; ++k)
        for (int i = 1; i <= p; ++i) {
            if (i == k || i == k + h) continue;
            report.expect_equal(s(k, i), s(k + h, i), k, i, 0, "a");
        }
    for (int i = 1; i <= h; ++i)
        for (int k = 1; k <= p; ++k) {
            if (k == i || k == i + h) continue;
            report.expect_equal(s(k, i + h), s(k, i) - h, k, i, 0, "b");
        }
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j) {
            if (i == j) continue;
            const int image = s(i, j);
            report.expect_equal(j == i + h, image == i + h, i, i, j, "c:+");
            report.expect_equal(j == i - h, image == i - h, i, i, j, "c:-");
        }

    report.absorb(reduce_over_points("lemma2", p, p, jobs, [&](int k, VerificationReport& r) {
        for (int i = 1; i <= p; ++i) {
            if (i == k) continue;
            const int si = s(k, i);
            for (int j = 1; j <= p; ++j) {
                if (j == k) continue;
                const int sj = s(k, j);
                r.expect_equal(j == i + h, si == sj + h, k, i, j, "d:+");
                r.expect_equal(j == i - h, si == sj - h, k, i, j, "d:-");
            }
        }
    }));
    return report;
}

/// Rows i, columns k, tab-separated, "X" where i == k.
inline std::string to_tsv(const Order& order) {
    auto maps = default_map_cache().all(order);
    std::string out;
    for (int i = 1; i <= order.p(); ++i) {
        for (int k = 1; k <= order.p(); ++k) {
            if (k > 1) out += '\t';
            out += i == k ? std::string("X") : std::to_string((*maps[static_cast<std::size_t>(k - 1)])(i));
        }
        out += '\n';
    }
    return out;
}

} // namespace recon
