#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "recon/deletion_maps.hpp"
#include "recon/digraph.hpp"
#include "recon/parallel.hpp"
#include "recon/report.hpp"

namespace recon {

inline constexpr std::uint64_t kDefaultIsoBudget = 50'000'000;

struct IsoVerdict {
    enum class Outcome { Isomorphic, NonIsomorphic, Undecided };

    Outcome outcome = Outcome::Undecided;
    std::vector<int> witness; // 1-based images, set iff Isomorphic
    std::uint64_t nodes = 0;  // search nodes expanded

    [[nodiscard]] bool isomorphic() const noexcept { return outcome == Outcome::Isomorphic; }
    [[nodiscard]] bool non_isomorphic() const noexcept { return outcome == Outcome::NonIsomorphic; }
    [[nodiscard]] bool undecided() const noexcept { return outcome == Outcome::Undecided; }
};

inline std::string to_string(IsoVerdict::Outcome o) {
    switch (o) {
    case IsoVerdict::Outcome::Isomorphic: return "isomorphic";
    case IsoVerdict::Outcome::NonIsomorphic: return "non-isomorphic";
    case IsoVerdict::Outcome::Undecided: return "undecided";
    }
    return "undecided";
}

struct IsoOptions {
    std::uint64_t budget = kDefaultIsoBudget;
    /// Restrict candidates to the same (outdegree, indegree) class and
    /// reject early on differing degree multisets.
    bool prune = true;
};

namespace detail {

class IsoSearch {
public:
    IsoSearch(const Digraph& g, const Digraph& h, IsoOptions opts)
        : g_(g), h_(h), opts_(opts), p_(g.order()),
          image_(static_cast<std::size_t>(p_) + 1, 0),
          used_(static_cast<std::size_t>(p_) + 1, false) {}

    IsoVerdict run() {
        IsoVerdict verdict;
        std::vector<std::pair<int, int>> gclass(static_cast<std::size_t>(p_) + 1);
        std::vector<std::pair<int, int>> hclass(static_cast<std::size_t>(p_) + 1);
        for (int v = 1; v <= p_; ++v) {
            gclass[static_cast<std::size_t>(v)] = {g_.out_degree(v), g_.in_degree(v)};
            hclass[static_cast<std::size_t>(v)] = {h_.out_degree(v), h_.in_degree(v)};
        }

        order_.resize(static_cast<std::size_t>(p_));
        std::iota(order_.begin(), order_.end(), 1);
        candidates_.assign(static_cast<std::size_t>(p_) + 1, {});

        if (opts_.prune) {
            auto gs = std::vector(gclass.begin() + 1, gclass.end());
            auto hs = std::vector(hclass.begin() + 1, hclass.end());
            std::sort(gs.begin(), gs.end());
            std::sort(hs.begin(), hs.end());
            if (gs != hs) {
                verdict.outcome = IsoVerdict::Outcome::NonIsomorphic;
                return verdict;
            }
            std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
                return gclass[static_cast<std::size_t>(a)] < gclass[static_cast<std::size_t>(b)];
            });
            for (int u = 1; u <= p_; ++u)
                for (int c = 1; c <= p_; ++c)
                    if (gclass[static_cast<std::size_t>(u)] == hclass[static_cast<std::size_t>(c)])
                        candidates_[static_cast<std::size_t>(u)].push_back(c);
        } else {
            for (int u = 1; u <= p_; ++u) {
                candidates_[static_cast<std::size_t>(u)].resize(static_cast<std::size_t>(p_));
                std::iota(candidates_[static_cast<std::size_t>(u)].begin(),
                          candidates_[static_cast<std::size_t>(u)].end(), 1);
            }
        }

        const bool found = extend(0);
        verdict.nodes = nodes_;
        if (found) {
            verdict.witness.assign(image_.begin() + 1, image_.end());
            if (!is_isomorphism(g_, h_, verdict.witness))
                throw std::logic_error("isomorphism search produced an invalid witness");
            verdict.outcome = IsoVerdict::Outcome::Isomorphic;
        } else {
            verdict.outcome = exhausted_ ? IsoVerdict::Outcome::Undecided : IsoVerdict::Outcome::NonIsomorphic;
        }
        return verdict;
    }

private:
    bool consistent(int depth, int u, int c) const {
        for (int d = 0; d < depth; ++d) {
            const int a = order_[static_cast<std::size_t>(d)];
            const int b = image_[static_cast<std::size_t>(a)];
            if (g_.has_arc(u, a) != h_.has_arc(c, b) || g_.has_arc(a, u) != h_.has_arc(b, c)) return false;
        }
        return true;
    }

    bool extend(int depth) {
        if (depth == p_) return true;
        const int u = order_[static_cast<std::size_t>(depth)];
        for (int c : candidates_[static_cast<std::size_t>(u)]) {
            if (used_[static_cast<std::size_t>(c)]) continue;
            if (++nodes_ > opts_.budget) {
                exhausted_ = true;
                return false;
            }
            if (!consistent(depth, u, c)) continue;
            image_[static_cast<std::size_t>(u)] = c;
            used_[static_cast<std::size_t>(c)] = true;
            if (extend(depth + 1)) return true;
            used_[static_cast<std::size_t>(c)] = false;
            image_[static_cast<std::size_t>(u)] = 0;
            if (exhausted_) return false;
        }
        return false;
    }

    const Digraph& g_;
    const Digraph& h_;
    IsoOptions opts_;
    int p_;
    std::vector<int> order_;
    std::vector<std::vector<int>> candidates_;
    std::vector<int> image_;
    std::vector<bool> used_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

} // namespace detail

/// Backtracking isomorphism test. Points of G are tried in (outdegree,
/// indegree, index) order; an Isomorphic verdict carries a checked witness.
inline IsoVerdict are_isomorphic(const Digraph& g, const Digraph& h, IsoOptions opts = {}) {
    if (g.order() != h.order()) throw std::invalid_argument("are_isomorphic: order mismatch");
    return detail::IsoSearch(g, h, opts).run();
}

/// The p point-deleted subdigraphs, card k = G - v_k.
class Deck {
public:
    explicit Deck(const Digraph& g) {
        if (g.order() < 2) throw std::invalid_argument("deck needs at least two points");
        cards_.reserve(static_cast<std::size_t>(g.order()));
        for (int k = 1; k <= g.order(); ++k) cards_.push_back(g.delete_point(k));
    }

    [[nodiscard]] int size() const noexcept { return static_cast<int>(cards_.size()); }
    [[nodiscard]] const Digraph& card(int k) const { return cards_.at(static_cast<std::size_t>(k - 1)); }
    [[nodiscard]] const std::vector<Digraph>& cards() const noexcept { return cards_; }

private:
    std::vector<Digraph> cards_;
};

inline Deck deck(const Digraph& g) { return Deck(g); }

/// Checks that each map k carries G - v_k arc-for-arc onto H - u_k, i.e.
/// G(i, j) == H(sigma_k(i), sigma_k(j)) for all i, j != k.
inline VerificationReport verify_hypomorphic_by_sigma(
    const Digraph& g, const Digraph& h, const std::function<const DeletionMap&(int)>& map_for,
    int jobs = 1) {
    if (g.order() != h.order()) throw std::invalid_argument("hypomorphism check: order mismatch");
    const int p = g.order();
    return reduce_over_points("hypo-sigma", p, p, jobs, [&](int k, VerificationReport& r) {
        const auto& s = map_for(k);
        if (s.deleted_point() != k) throw std::invalid_argument("map list out of order");
        std::uint64_t count = 0;
        for (int i = 1; i <= p; ++i) {
            if (i == k) continue;
            for (int j = 1; j <= p; ++j) {
                if (j == k || j == i) continue;
                ++count;
                const bool lhs = g.has_arc(i, j);
                const bool rhs = h.has_arc(s(i), s(j));
                if (lhs != rhs) r.fail({k, i, j, lhs, rhs, ""});
            }
        }
        r.add_checked(count);
    });
}

inline VerificationReport verify_hypomorphic_by_sigma(const Digraph& g, const Digraph& h,
                                                      std::span<const DeletionMap> maps, int jobs = 1) {
    if (static_cast<int>(maps.size()) != g.order()) throw std::invalid_argument("need one map per point");
    return verify_hypomorphic_by_sigma(
        g, h, [&](int k) -> const DeletionMap& { return maps[static_cast<std::size_t>(k - 1)]; }, jobs);
}

/// Uses the family's own maps sigma_{p,k}.
inline VerificationReport verify_hypomorphic_by_sigma(const Digraph& g, const Digraph& h, int jobs = 1) {
    const Order order(g.order());
    auto maps = default_map_cache().all(order);
    return verify_hypomorphic_by_sigma(
        g, h, [&](int k) -> const DeletionMap& { return *maps[static_cast<std::size_t>(k - 1)]; }, jobs);
}

struct DeckMatch {
    enum class Status { Matched, NoMatching, Undecided };
    Status status = Status::Undecided;
    std::vector<int> matching; // card i of G ~ card matching[i-1] of H
};

namespace detail {

inline bool augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& match_right,
                    std::vector<bool>& seen) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = true;
        if (match_right[static_cast<std::size_t>(v)] < 0 ||
            augment(match_right[static_cast<std::size_t>(v)], adj, match_right, seen)) {
            match_right[static_cast<std::size_t>(v)] = u;
            return true;
        }
    }
    return false;
}

/// Maximum bipartite matching by augmenting paths; returns left -> right, -1 if unmatched.
inline std::vector<int> max_matching(int left, int right, const std::vector<std::vector<int>>& adj) {
    std::vector<int> match_right(static_cast<std::size_t>(right), -1);
    for (int u = 0; u < left; ++u) {
        std::vector<bool> seen(static_cast<std::size_t>(right), false);
        augment(u, adj, match_right, seen);
    }
    std::vector<int> match_left(static_cast<std::size_t>(left), -1);
    for (int v = 0; v < right; ++v)
        if (match_right[static_cast<std::size_t>(v)] >= 0)
            match_left[static_cast<std::size_t>(match_right[static_cast<std::size_t>(v)])] = v;
    return match_left;
}

} // namespace detail

/// Decides deck equality without the family's maps: pairwise card
/// isomorphism tests define a bipartite graph whose perfect matchings are
/// exactly the card correspondences.
inline DeckMatch decks_match_independent(const Digraph& g, const Digraph& h,
                                         std::uint64_t budget = kDefaultIsoBudget) {
    if (g.order() != h.order()) throw std::invalid_argument("deck match: order mismatch");
    if (g.order() > 12) throw std::invalid_argument("deck match limited to order <= 12");
    const int p = g.order();
    const Deck dg(g);
    const Deck dh(h);

    bool undecided = false;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(p));
    for (int a = 1; a <= p; ++a)
        for (int b = 1; b <= p; ++b) {
            const auto v = are_isomorphic(dg.card(a), dh.card(b), {budget, true});
            if (v.isomorphic()) adj[static_cast<std::size_t>(a - 1)].push_back(b - 1);
            if (v.undecided()) undecided = true;
        }

    DeckMatch out;
    const auto m = detail::max_matching(p, p, adj);
    if (std::all_of(m.begin(), m.end(), [](int v) { return v >= 0; })) {
        out.status = DeckMatch::Status::Matched;
        for (int v : m) out.matching.push_back(v + 1);
    } else {
        out.status = undecided ? DeckMatch::Status::Undecided : DeckMatch::Status::NoMatching;
    }
    return out;
}

struct TraceStep {
    int p;
    std::string reason;
    std::string detail;
};

inline constexpr const char* kReasonScoreSplit = "score-split forces half-to-half mapping";
inline constexpr const char* kReasonBaseCase = "base case: exhaustive search";

using NonIsoTrace = std::vector<TraceStep>;

inline nlohmann::ordered_json to_json(const NonIsoTrace& trace) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& s : trace)
        out.push_back(nlohmann::ordered_json{{"p", s.p}, {"reason", s.reason}, {"detail", s.detail}});
    return out;
}

/// Runs the halving argument for G_p vs G_p*: at each order >= 8 the score
/// split forces any isomorphism to send the first half of G_p onto the last
/// half of G_p*, and those halves induce G_{p/2} and G_{p/2}*. At p = 4 the
/// pair is separated by exhaustive search. Any failed step throws.
inline NonIsoTrace verify_nonisomorphic_inductive(const Order& order) {
    NonIsoTrace trace;
    auto pair = standard_pair(order);
    for (int p = order.p(); p >= 8; p /= 2) {
        const Order here(p);
        const int h = here.half();
        const auto sg = scores(pair.plain);
        const auto ss = scores(pair.star);
        for (int i = 1; i <= p; ++i) {
            const int upper = i <= h ? h : h - 1;
            const int lower = i <= h ? h - 1 : h;
            if (sg[static_cast<std::size_t>(i - 1)] != upper || ss[static_cast<std::size_t>(i - 1)] != lower)
                throw std::logic_error("score split fails at p = " + std::to_string(p) +
                                       ", point " + std::to_string(i));
        }

        std::vector<int> first(static_cast<std::size_t>(h));
        std::vector<int> last(static_cast<std::size_t>(h));
        std::iota(first.begin(), first.end(), 1);
        std::iota(last.begin(), last.end(), h + 1);
        auto next = standard_pair(here.halved());
        if (!(pair.plain.induced(first) == next.plain))
            throw std::logic_error("first half of G_p is not G_{p/2} at p = " + std::to_string(p));
        if (!(pair.star.induced(last) == next.star))
            throw std::logic_error("last half of G_p* is not G_{p/2}* at p = " + std::to_string(p));

        const auto hs = std::to_string(h);
        trace.push_back({p, kReasonScoreSplit,
                         "G scores " + hs + " on 1.." + hs + ", " + std::to_string(h - 1) + " on " +
                             std::to_string(h + 1) + ".." + std::to_string(p) +
                             "; G* reversed; G[1.." + hs + "] = G_" + hs + ", G*[" + std::to_string(h + 1) +
                             ".." + std::to_string(p) + "] = G*_" + hs});
        pair = std::move(next);
    }

    const auto verdict = are_isomorphic(pair.plain, pair.star, {UINT64_MAX, false});
    if (!verdict.non_isomorphic()) throw std::logic_error("base pair at p = 4 is not non-isomorphic");
    trace.push_back({4, kReasonBaseCase, "no isomorphism among all bijections (" +
                                             std::to_string(verdict.nodes) + " search nodes)"});
    return trace;
}

} // namespace recon
