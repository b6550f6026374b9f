#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "recon/census.hpp"
#include "recon/deletion_maps.hpp"
#include "recon/digraph.hpp"
#include "recon/digraph_io.hpp"
#include "recon/hypomorphism.hpp"
#include "recon/iso.hpp"
#include "recon/report.hpp"
#include "recon/weight_matrix.hpp"

namespace recon::cli {

enum class Command { Generate, Verify, Deck, Census, Export };
enum class VariantChoice { Plain, Star, Both };
enum class Kind { Weighted, Tournament, VariantDigraph };
enum class Format { Csv, Dot, D6, Json, Tsv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Largest order the CLI accepts; dense matrices beyond it are refused.
inline constexpr int kMaxCliOrder = kDefaultMaxDenseOrder;

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{"lemma1", "lemma2",     "lemma3",     "theorem1", "theorem2",
                                                "hypo-sigma", "deck-match", "swap", "forced-iso"};
    return names;
}

struct RunConfig {
    Command command = Command::Verify;
    int p = 8;
    VariantChoice variant = VariantChoice::Plain;
    Kind kind = Kind::Weighted;
    Format format = Format::Csv;
    std::vector<std::string> checks; // may contain "all"
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultIsoBudget;
    std::uint64_t trials = 1'000'000;
    int jobs = 0;
    std::string out;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Minimum and maximum order at which each check is defined or feasible.
inline bool check_defined_at(std::string_view check, int p) {
    if (check == "lemma1" || check == "lemma2" || check == "swap" || check == "forced-iso") return p >= 8;
    if (check == "deck-match") return p <= 8;
    return true;
}

/// Checks whose cost is cubic in p; left out of "all" above the exhaustive limit.
inline bool check_is_cubic(std::string_view check) { return check == "lemma2" || check == "hypo-sigma"; }

/// Expands "all" and validates explicit names against p.
inline std::vector<std::string> resolve_checks(const std::vector<std::string>& requested, int p) {
    std::vector<std::string> out;
    auto add = [&](const std::string& c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    };
    for (const auto& c : requested) {
        if (c == "all") {
            for (const auto& k : known_checks())
                if (check_defined_at(k, p) && !(p > kExhaustiveLimit && check_is_cubic(k))) add(k);
            continue;
        }
        if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
            throw UsageError("unknown check '" + c + "'");
        if (!check_defined_at(c, p)) throw UsageError("check '" + c + "' is not defined at p = " + std::to_string(p));
        add(c);
    }
    if (out.empty()) throw UsageError("no checks selected");
    return out;
}

namespace detail {

inline std::vector<MatrixVariant> variants_of(VariantChoice v) {
    switch (v) {
    case VariantChoice::Plain: return {MatrixVariant::Plain};
    case VariantChoice::Star: return {MatrixVariant::Star};
    case VariantChoice::Both: return {MatrixVariant::Plain, MatrixVariant::Star};
    }
    return {};
}

inline Digraph digraph_for(const Order& order, Kind kind, MatrixVariant v) {
    if (kind == Kind::VariantDigraph) {
        if (order.p() < 8) throw UsageError("variant digraphs need p >= 8");
        return assign(order, v, BinaryAssignment::variant(order.n()));
    }
    return assign(order, v, BinaryAssignment::positive(order.n()));
}

inline std::string digraph_name(Kind kind, MatrixVariant v, int p) {
    std::string base = kind == Kind::VariantDigraph ? "V" : "G";
    return base + std::to_string(p) + (v == MatrixVariant::Star ? "_star" : "");
}

inline nlohmann::ordered_json arcs_json(const Digraph& g) {
    auto arcs = nlohmann::ordered_json::array();
    for (int i = 1; i <= g.order(); ++i)
        for (int j = 1; j <= g.order(); ++j)
            if (g.has_arc(i, j)) arcs.push_back({i, j});
    return arcs;
}

inline std::string render_digraph(const Digraph& g, Format format, const std::string& name) {
    switch (format) {
    case Format::Csv: return to_csv(g);
    case Format::Dot: return to_dot(g, name);
    case Format::D6: return to_digraph6(g) + "\n";
    case Format::Json: {
        nlohmann::ordered_json j{{"name", name}, {"p", g.order()}, {"arcs", arcs_json(g)}};
        return j.dump(2) + "\n";
    }
    case Format::Tsv: break;
    }
    throw UsageError("format not available for digraphs");
}

inline std::string render_matrix(const WeightedMatrix& m, Format format) {
    if (format == Format::Csv) return to_csv(m);
    if (format == Format::Json) {
        auto rows = nlohmann::ordered_json::array();
        for (int i = 1; i <= m.p(); ++i) {
            auto row = nlohmann::ordered_json::array();
            for (int j = 1; j <= m.p(); ++j) row.push_back(m(i, j));
            rows.push_back(std::move(row));
        }
        nlohmann::ordered_json j{{"p", m.p()}, {"variant", std::string(to_string(m.variant()))}, {"entries", rows}};
        return j.dump() + "\n";
    }
    throw UsageError("weighted matrices export as csv or json");
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

/// Runs one named check and appends its report(s). Returns false on failure.
inline bool run_check(const std::string& check, const Order& order, const RunConfig& cfg,
                      nlohmann::ordered_json& reports, nlohmann::ordered_json& extra, std::ostream& log) {
    const int p = order.p();
    const int jobs = resolve_jobs(cfg.jobs);
    bool ok = true;
    auto emit = [&](const VerificationReport& r) {
        ok = ok && r.passed();
        reports.push_back(r.to_json());
    };

    if (check == "lemma1") {
        emit(check_lemma1(order));
    } else if (check == "lemma2") {
        emit(check_lemma2(order, jobs));
    } else if (check == "lemma3") {
        emit(check_lemma3(order));
    } else if (check == "theorem1") {
        if (p <= kExhaustiveLimit) {
            emit(check_theorem1(order, jobs));
            emit(check_relabeled_multisets(order, jobs));
        } else {
            log << "theorem1: p = " << p << " above exhaustive limit " << kExhaustiveLimit
                << ", sampling " << cfg.trials << " triples with seed " << cfg.seed << "\n";
            emit(sample_theorem1(order, cfg.trials, cfg.seed));
        }
    } else if (check == "theorem2") {
        VerificationReport r("theorem2", p);
        try {
            const auto trace = verify_nonisomorphic_inductive(order);
            r.add_checked(trace.size());
            extra["trace"] = to_json(trace);
            if (p <= 8) {
                const auto pair = standard_pair(order);
                const auto v = are_isomorphic(pair.plain, pair.star, {cfg.budget, true});
                r.expect_equal(v.non_isomorphic() ? 1 : 0, 1, 0, 0, 0, "search-oracle");
            }
        } catch (const std::logic_error& e) {
            log << "theorem2: " << e.what() << "\n";
            r.fail({0, 0, 0, 0, 1, e.what()});
        }
        emit(r);
    } else if (check == "hypo-sigma") {
        auto run_pair = [&](const DigraphPair& pair, const char* name) {
            auto r = verify_hypomorphic_by_sigma(pair.plain, pair.star, jobs);
            VerificationReport named(std::string("hypo-sigma:") + name, p);
            named.absorb(r);
            emit(named);
        };
        run_pair(standard_pair(order), "tournament");
        if (p >= 8) run_pair(variant_pair(order), "variant");
    } else if (check == "deck-match") {
        const auto pair = standard_pair(order);
        const auto m = decks_match_independent(pair.plain, pair.star, cfg.budget);
        VerificationReport r("deck-match", p);
        r.add_checked(static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p));
        if (m.status != DeckMatch::Status::Matched)
            r.fail({0, 0, 0, 0, 1, m.status == DeckMatch::Status::Undecided ? "undecided" : "no-matching"});
        emit(r);
    } else if (check == "swap") {
        emit(check_swap_involution(order));
    } else if (check == "forced-iso") {
        VerificationReport r("forced-iso", p);
        const int n = order.n();
        const int top = order.top_level();
        // constant, one-extreme-equalized and the two non-forced canonical rules
        const std::vector<BinaryAssignment> probes{
            BinaryAssignment::constant(n, true),
            BinaryAssignment::constant(n, false),
            BinaryAssignment::from_rule(n, [top](Level v) { return v > 0 || v == -top; }),
            BinaryAssignment::from_rule(n, [top](Level v) { return v > 0 && v != top; }),
            BinaryAssignment::positive(n),
            BinaryAssignment::variant(n)};
        for (const auto& a : probes) {
            const bool expect_forced = a(top) == a(-top);
            try {
                const bool got = forced_isomorphism(order, a).has_value();
                r.expect_equal(got, expect_forced, 0, 0, 0, "assignment");
            } catch (const std::logic_error& e) {
                log << "forced-iso: " << e.what() << "\n";
                r.fail({0, 0, 0, 0, 1, a.bits_string()});
            }
        }
        emit(r);
    }
    return ok;
}

} // namespace detail

/// Dispatches one command. Artifacts go to `out` (or cfg.out); diagnostics to `log`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    try {
        if (cfg.p > kMaxCliOrder) throw UsageError("p above CLI limit " + std::to_string(kMaxCliOrder));
        const Order order = [&] {
            try {
                return Order(cfg.p);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }();

        std::string artifact;
        int status = kExitOk;

        switch (cfg.command) {
        case Command::Generate: {
            for (auto v : detail::variants_of(cfg.variant)) {
                if (!artifact.empty() && cfg.format != Format::Dot) artifact += "\n";
                if (cfg.kind == Kind::Weighted)
                    artifact += detail::render_matrix(build_dense(order, v), cfg.format);
                else
                    artifact += detail::render_digraph(detail::digraph_for(order, cfg.kind, v), cfg.format,
                                                       detail::digraph_name(cfg.kind, v, cfg.p));
            }
            break;
        }
        case Command::Verify: {
            const auto checks = resolve_checks(cfg.checks.empty() ? std::vector<std::string>{"all"} : cfg.checks,
                                               cfg.p);
            nlohmann::ordered_json doc;
            doc["schema"] = report_schema_version();
            doc["command"] = "verify";
            doc["p"] = cfg.p;
            auto reports = nlohmann::ordered_json::array();
            nlohmann::ordered_json extra = nlohmann::ordered_json::object();
            bool ok = true;
            for (const auto& c : checks) ok = detail::run_check(c, order, cfg, reports, extra, log) && ok;
            doc["outcome"] = ok ? "pass" : "fail";
            doc["reports"] = std::move(reports);
            for (auto& [k, v] : extra.items()) doc[k] = v;
            artifact = doc.dump(2) + "\n";
            status = ok ? kExitOk : kExitCheckFailed;
            break;
        }
        case Command::Deck: {
            if (cfg.variant == VariantChoice::Both) throw UsageError("deck takes a single variant");
            if (cfg.kind == Kind::Weighted) throw UsageError("deck needs --kind tournament or variant-digraph");
            const auto v = detail::variants_of(cfg.variant).front();
            const auto d = deck(detail::digraph_for(order, cfg.kind, v));
            if (cfg.format == Format::Json) {
                auto cards = nlohmann::ordered_json::array();
                for (const auto& c : d.cards()) cards.push_back(to_digraph6(c));
                artifact = nlohmann::ordered_json{{"p", cfg.p}, {"cards", cards}}.dump(2) + "\n";
            } else {
                for (int k = 1; k <= d.size(); ++k) {
                    if (k > 1 && cfg.format == Format::Csv) artifact += "\n";
                    artifact += detail::render_digraph(d.card(k), cfg.format, "card_" + std::to_string(k));
                }
            }
            break;
        }
        case Command::Census: {
            if (cfg.p != 8 && cfg.p != 16) throw UsageError("census supports p = 8 or 16");
            if (cfg.format != Format::Csv && cfg.format != Format::Json)
                throw UsageError("census exports csv or json");
            const auto census = assignment_census(order, cfg.budget);
            artifact = cfg.format == Format::Csv ? to_csv(census) : to_json(census).dump(2) + "\n";
            const auto summary = summarize(census);
            log << "census p = " << cfg.p << ": " << summary.rows << " assignments, " << summary.isomorphic
                << " isomorphic, " << summary.non_isomorphic << " non-isomorphic, " << summary.undecided
                << " undecided\n";
            const bool ok = summary.all_hold();
            status = ok ? kExitOk : kExitCheckFailed;
            break;
        }
        case Command::Export: {
            if (cfg.out.empty()) throw UsageError("export needs --out DIRECTORY");
            const std::filesystem::path dir(cfg.out);
            std::filesystem::create_directories(dir);
            const auto ps = std::to_string(cfg.p);
            for (auto v : detail::variants_of(cfg.variant)) {
                const std::string suffix = v == MatrixVariant::Star ? "_star" : "_plain";
                detail::write_file(dir / ("m" + ps + suffix + ".csv"), to_csv(build_dense(order, v)));
                std::vector<Kind> kinds{Kind::Tournament};
                if (cfg.p >= 8) kinds.push_back(Kind::VariantDigraph);
                for (auto kind : kinds) {
                    const auto g = detail::digraph_for(order, kind, v);
                    const std::string stem = (kind == Kind::Tournament ? "g" : "v") + ps + suffix;
                    const auto name = detail::digraph_name(kind, v, cfg.p);
                    detail::write_file(dir / (stem + ".csv"), to_csv(g));
                    detail::write_file(dir / (stem + ".dot"), to_dot(g, name));
                    detail::write_file(dir / (stem + ".d6"), to_digraph6(g) + "\n");
                }
            }
            detail::write_file(dir / ("sigma" + ps + ".tsv"), to_tsv(order));
            log << "exported order " << ps << " artifacts to " << dir.string() << "\n";
            return kExitOk;
        }
        }

        if (cfg.out.empty()) {
            out << artifact;
        } else {
            detail::write_file(cfg.out, artifact);
        }
        return status;
    } catch (const UsageError& e) {
        log << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace recon::cli
