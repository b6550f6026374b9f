// recon-census: generate and verify the non-reconstructable tournament family.

#include <iostream>
#include <map>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "recon/cli.hpp"

namespace {

using recon::cli::Command;
using recon::cli::Format;
using recon::cli::Kind;
using recon::cli::RunConfig;
using recon::cli::VariantChoice;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& variant, std::string& kind, std::string& format) {
    sub->add_option("--p", cfg.p, "Order p (power of two, >= 4)")->required();
    sub->add_option("--variant", variant, "plain, star or both")
        ->check(CLI::IsMember({"plain", "star", "both"}));
    sub->add_option("--kind", kind, "weighted, tournament or variant-digraph")
        ->check(CLI::IsMember({"weighted", "tournament", "variant-digraph"}));
    sub->add_option("--format", format, "csv, dot, d6, json or tsv")
        ->check(CLI::IsMember({"csv", "dot", "d6", "json", "tsv"}));
    sub->add_option("--seed", cfg.seed, "Seed for sampled checks");
    sub->add_option("--trials", cfg.trials, "Trials for sampled checks")->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget, "Node budget per isomorphism search");
    sub->add_option("--jobs", cfg.jobs, "Worker threads (default: RECON_CENSUS_JOBS or 1)");
    sub->add_option("--out", cfg.out, "Output file (export: directory)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generator and verifier for a family of non-reconstructable tournaments"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string variant;
    std::string kind;
    std::string format;
    std::vector<std::string> checks;

    const std::map<std::string, std::pair<Command, std::string>> commands{
        {"generate", {Command::Generate, "Print a weighted matrix or digraph pair"}},
        {"verify", {Command::Verify, "Run identity checks and print a JSON report"}},
        {"deck", {Command::Deck, "Print the vertex-deleted subdigraphs"}},
        {"census", {Command::Census, "Classify every binary level assignment (p = 8 or 16)"}},
        {"export", {Command::Export, "Write matrices, digraphs and map tables to a directory"}}};
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands) {
        auto* sub = app.add_subcommand(name, entry.second);
        add_common(sub, cfg, variant, kind, format);
        subs[name] = sub;
    }
    std::vector<std::string> allowed = recon::cli::known_checks();
    allowed.emplace_back("all");
    subs["verify"]
        ->add_option("--checks", checks, "Comma-separated checks, or 'all'")
        ->delimiter(',')
        ->check(CLI::IsMember(allowed));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return recon::cli::kExitUsage;
    }

    for (const auto& [name, entry] : commands)
        if (subs[name]->parsed()) cfg.command = entry.first;

    const bool is_deck = cfg.command == Command::Deck;
    const bool is_export = cfg.command == Command::Export;
    if (variant.empty()) variant = is_export ? "both" : "plain";
    if (kind.empty()) kind = is_deck ? "tournament" : "weighted";
    if (format.empty()) format = is_deck ? "d6" : cfg.command == Command::Verify ? "json" : "csv";

    cfg.variant = variant == "plain" ? VariantChoice::Plain : variant == "star" ? VariantChoice::Star : VariantChoice::Both;
    cfg.kind = kind == "weighted" ? Kind::Weighted : kind == "tournament" ? Kind::Tournament : Kind::VariantDigraph;
    cfg.format = format == "csv"   ? Format::Csv
                 : format == "dot" ? Format::Dot
                 : format == "d6"  ? Format::D6
                 : format == "json" ? Format::Json
                                    : Format::Tsv;
    cfg.checks = checks;

    try {
        return recon::cli::run(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return recon::cli::kExitCheckFailed;
    }
}
