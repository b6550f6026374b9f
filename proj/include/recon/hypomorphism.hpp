#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "recon/deletion_maps.hpp"
#include "recon/parallel.hpp"
#include "recon/report.hpp"
#include "recon/weight_matrix.hpp"

namespace recon {

/// Orders at or below this are verified exhaustively; above it, by sampling.
inline constexpr int kExhaustiveLimit = 256;

/// Sign relating M[i, j] to the starred entry reached through sigma_{p,i}:
/// always -1 at p = 4, otherwise -1 exactly at distance p/2.
[[nodiscard]] inline int lemma3_sign(const Order& order, int i, int j) {
    if (order.p() == 4) return -1;
    return std::abs(j - i) == order.half() ? -1 : 1;
}

[[nodiscard]] inline VerificationReport check_lemma3(const Order& order) {
    const int p = order.p();
    const auto plain = build_dense(order, MatrixVariant::Plain);
    const auto star = build_dense(order, MatrixVariant::Star);
    auto& cache = default_map_cache();

    VerificationReport report("lemma3", p);
    for (int i = 1; i <= p; ++i) {
        const auto row_map = cache.get(order, i);
        for (int j = 1; j <= p; ++j) {
            if (i == j) continue;
            const int s = lemma3_sign(order, i, j);
            const int col_image = cache.get(order, j)->operator()(i);
            report.expect_equal(plain(i, j), s * star(i, (*row_map)(j)), i, i, j, "row");
            report.expect_equal(plain(i, j), s * star(col_image, j), j, i, j, "column");
        }
    }
    return report;
}

/// For every k and all i, j != k: M[i, j] == M*[sigma_k(i), sigma_k(j)].
/// Checks p (p-1)^2 triples, parallel over k.
[[nodiscard]] inline VerificationReport check_theorem1(const Order& order, int jobs = 1) {
    const int p = order.p();
    const auto plain = build_dense(order, MatrixVariant::Plain);
    const auto star = build_dense(order, MatrixVariant::Star);
    auto maps = default_map_cache().all(order);

    return reduce_over_points("theorem1", p, p, jobs, [&](int k, VerificationReport& r) {
        const auto& s = *maps[static_cast<std::size_t>(k - 1)];
        std::uint64_t count = 0;
        for (int i = 1; i <= p; ++i) {
            if (i == k) continue;
            const int si = s(i);
            for (int j = 1; j <= p; ++j) {
                if (j == k) continue;
                ++count;
                const int lhs = plain(i, j);
                const int rhs = star(si, s(j));
                if (lhs != rhs) r.fail({k, i, j, lhs, rhs, ""});
            }
        }
        r.add_checked(count);
    });
}

namespace detail {

/// Unbiased draw from [0, bound).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

/// Uniform point in {1..p} \ {k}.
inline int draw_other(std::mt19937_64& rng, int p, int k) {
    const int u = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(p - 1))) + 1;
    return u < k ? u : u + 1;
}

} // namespace detail

/// Randomized form of check_theorem1 using the O(1) entry oracle, for
/// orders where the cubic sweep is out of reach. Deterministic for a seed.
[[nodiscard]] inline VerificationReport sample_theorem1(const Order& order, std::uint64_t trials,
                                                        std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("sample_theorem1 needs at least one trial");
    const int p = order.p();
    std::mt19937_64 rng(seed);
    VerificationReport report("theorem1-sampled", p);
    report.set_seed(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const int k = static_cast<int>(detail::bounded(rng, static_cast<std::uint64_t>(p))) + 1;
        const int i = detail::draw_other(rng, p, k);
        const int j = detail::draw_other(rng, p, k);
        report.expect_equal(entry_at_unchecked(p, MatrixVariant::Plain, i, j),
                            entry_at_unchecked(p, MatrixVariant::Star, sigma_unchecked(p, k, i),
                                               sigma_unchecked(p, k, j)),
                            k, i, j);
    }
    return report;
}

/// Multiset form of the hypomorphism: for each k, the labeled entries of M
/// off point k, relabeled through sigma_k, equal those of M* off point k.
[[nodiscard]] inline VerificationReport check_relabeled_multisets(const Order& order, int jobs = 1) {
    const int p = order.p();
    const auto plain = build_dense(order, MatrixVariant::Plain);
    const auto star = build_dense(order, MatrixVariant::Star);
    auto maps = default_map_cache().all(order);

    return reduce_over_points("theorem1-multiset", p, p, jobs, [&](int k, VerificationReport& r) {
        const auto& s = *maps[static_cast<std::size_t>(k - 1)];
        using Entry = std::tuple<int, int, int>;
        std::vector<Entry> relabeled;
        std::vector<Entry> target;
        for (int i = 1; i <= p; ++i) {
            if (i == k) continue;
            for (int j = 1; j <= p; ++j) {
                if (j == k) continue;
                relabeled.emplace_back(s(i), s(j), plain(i, j));
                target.emplace_back(i, j, star(i, j));
            }
        }
        std::sort(relabeled.begin(), relabeled.end());
        std::sort(target.begin(), target.end());
        r.add_checked(relabeled.size());
        const auto [a, b] = std::mismatch(relabeled.begin(), relabeled.end(), target.begin());
        if (a != relabeled.end())
            r.fail({k, std::get<0>(*a), std::get<1>(*a), std::get<2>(*a), std::get<2>(*b), "multiset"});
    });
}

} // namespace recon
