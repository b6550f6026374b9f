#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "recon/digraph.hpp"
#include "recon/iso.hpp"

namespace recon {

struct CensusRow {
    BinaryAssignment assignment;
    bool tournament = false;
    IsoVerdict::Outcome verdict = IsoVerdict::Outcome::Undecided;
    /// Smallest code among the assignment and its extreme-level swap.
    std::uint64_t orbit_id = 0;
    /// a(n+1) == a(-(n+1)), so extended sigma_{p,1} must join the pair.
    bool forced = false;
    /// Relabeling this pair by the half swap gives the orbit partner's pair.
    bool orbit_consistent = false;
};

struct Census {
    Order order;
    std::vector<CensusRow> rows;

    [[nodiscard]] const CensusRow& row(const BinaryAssignment& a) const {
        return rows.at(static_cast<std::size_t>(a.code()));
    }
};

/// Every proper assignment at order p, its digraph pair, and an isomorphism
/// verdict from the backtracking engine. Forced rows are also checked
/// against the extended sigma_{p,1}; budget exhaustion leaves a row undecided.
inline Census assignment_census(const Order& order, std::uint64_t iso_budget = kDefaultIsoBudget) {
    if (order.p() != 8 && order.p() != 16) throw std::invalid_argument("census supports p = 8 or 16 only");
    const int n = order.n();
    const auto tau = swap_involution(order);
    const std::uint64_t total = std::uint64_t{1} << (2 * (n + 1));

    Census census{order, {}};
    census.rows.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t code = 0; code < total; ++code) {
        const auto a = BinaryAssignment::from_code(n, code);
        const auto partner = a.with_extremes_swapped();
        const auto pair = assigned_pair(order, a);
        const auto partner_pair = assigned_pair(order, partner);

        CensusRow row{a};
        row.tournament = pair.plain.is_tournament() && pair.star.is_tournament();
        row.orbit_id = std::min(code, partner.code());
        row.orbit_consistent =
            relabel(pair.plain, tau) == partner_pair.plain && relabel(pair.star, tau) == partner_pair.star;
        row.verdict = are_isomorphic(pair.plain, pair.star, {iso_budget, true}).outcome;
        row.forced = forced_isomorphism(order, a).has_value();
        census.rows.push_back(std::move(row));
    }
    return census;
}

/// Facts the enumeration is expected to exhibit, computed from the rows.
struct CensusSummary {
    std::size_t rows = 0;
    std::size_t isomorphic = 0;
    std::size_t non_isomorphic = 0;
    std::size_t undecided = 0;
    /// Every row with a(n+1) == a(-(n+1)) is isomorphic.
    bool forced_rows_isomorphic = true;
    /// The half swap maps each row's pair onto its orbit partner's pair,
    /// and the two rows share a verdict.
    bool orbits_consistent = true;
    /// Every non-isomorphic row has a(m) != a(-m) for all m >= 4, and its
    /// values on +-1..+-3 also occur on a row with a(m) = 1, a(-m) = 0 for
    /// all m >= 4 (levels >= 4 can be fixed without losing any pair).
    bool high_levels_reducible = true;
    bool theorem2_non_isomorphic = false;
    bool variant_non_isomorphic = false;

    [[nodiscard]] bool all_hold() const noexcept {
        return undecided == 0 && forced_rows_isomorphic && orbits_consistent && high_levels_reducible &&
               theorem2_non_isomorphic && variant_non_isomorphic;
    }
};

inline CensusSummary summarize(const Census& census) {
    const int n = census.order.n();
    const int top = census.order.top_level();
    auto low_pattern = [](const BinaryAssignment& a) {
        std::uint32_t bits = 0;
        for (Level v : {-3, -2, -1, 1, 2, 3}) bits = (bits << 1) | (a(v) ? 1U : 0U);
        return bits;
    };
    auto canonical_high = [top](const BinaryAssignment& a) {
        for (int m = 4; m <= top; ++m)
            if (!a(m) || a(-m)) return false;
        return true;
    };

    CensusSummary s;
    s.rows = census.rows.size();
    std::vector<bool> canonical_low(64, false);
    for (const auto& r : census.rows)
        if (r.verdict == IsoVerdict::Outcome::NonIsomorphic && canonical_high(r.assignment))
            canonical_low[low_pattern(r.assignment)] = true;

    for (const auto& r : census.rows) {
        switch (r.verdict) {
        case IsoVerdict::Outcome::Isomorphic: ++s.isomorphic; break;
        case IsoVerdict::Outcome::NonIsomorphic: ++s.non_isomorphic; break;
        case IsoVerdict::Outcome::Undecided: ++s.undecided; break;
        }
        if (r.forced && r.verdict != IsoVerdict::Outcome::Isomorphic) s.forced_rows_isomorphic = false;
        const auto& partner = census.row(r.assignment.with_extremes_swapped());
        if (!r.orbit_consistent || partner.verdict != r.verdict) s.orbits_consistent = false;
        if (r.verdict == IsoVerdict::Outcome::NonIsomorphic) {
            for (int m = 4; m <= top; ++m)
                if (r.assignment(m) == r.assignment(-m)) s.high_levels_reducible = false;
            if (!canonical_low[low_pattern(r.assignment)]) s.high_levels_reducible = false;
        }
    }
    s.theorem2_non_isomorphic =
        census.row(BinaryAssignment::positive(n)).verdict == IsoVerdict::Outcome::NonIsomorphic;
    s.variant_non_isomorphic =
        census.row(BinaryAssignment::variant(n)).verdict == IsoVerdict::Outcome::NonIsomorphic;
    return s;
}

inline std::string to_csv(const Census& census) {
    std::string out = "assignment_bits,is_tournament,isomorphic,orbit_id\n";
    for (const auto& r : census.rows) {
        out += r.assignment.bits_string();
        out += r.tournament ? ",true," : ",false,";
        out += r.verdict == IsoVerdict::Outcome::Isomorphic      ? "yes"
               : r.verdict == IsoVerdict::Outcome::NonIsomorphic ? "no"
                                                                 : "undecided";
        out += ',' + std::to_string(r.orbit_id) + '\n';
    }
    return out;
}

inline nlohmann::ordered_json to_json(const Census& census) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : census.rows)
        rows.push_back({{"assignment_bits", r.assignment.bits_string()},
                        {"is_tournament", r.tournament},
                        {"isomorphic", to_string(r.verdict)},
                        {"orbit_id", r.orbit_id},
                        {"forced", r.forced},
                        {"orbit_consistent", r.orbit_consistent}});
    return {{"schema", report_schema_version()}, {"p", census.order.p()}, {"rows", std::move(rows)}};
}

} // namespace recon
