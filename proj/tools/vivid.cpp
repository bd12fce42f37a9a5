#include "vivid/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

struct CliOptions {
    vivid::RunConfig config;
    std::string format = "vivid-json";
    std::string weighting = "count";
    std::vector<std::string> exports;
    std::string foi;
};

void add_pipeline_flags(CLI::App* cmd, CliOptions& opts, bool with_exports) {
    cmd->add_option("--input,-i", opts.config.input_path, "scan document to analyze")
        ->required();
    cmd->add_option("--format", opts.format, "input format: vivid-json or edge-csv")
        ->check(CLI::IsMember({"vivid-json", "edge-csv"}));
    cmd->add_option("--weighting", opts.weighting, "edge weighting: count or severity")
        ->check(CLI::IsMember({"count", "severity"}));
    cmd->add_flag_callback(
        "--no-noise-filter",
        [&opts] { opts.config.noise_filter = false; },
        "keep loop-only and isolated nodes");
    cmd->add_option("--clique-cap", opts.config.clique_cap,
                    "abort clique enumeration beyond this many maximal cliques");
    if (with_exports) {
        cmd->add_option("--metrics", opts.config.metrics,
                        "metrics to compute (default: all)")
            ->delimiter(',');
        cmd->add_option("--profile", opts.config.profile,
                        "priority profile name or JSON file");
        cmd->add_option("--foi", opts.foi, "files-of-interest list (newline delimited)");
        cmd->add_option("--k", opts.config.k, "capture cutoff rank")->check(CLI::PositiveNumber);
        cmd->add_option("--out-dir,-o", opts.config.output_dir, "output directory");
        cmd->add_option("--export", opts.exports,
                        "artifacts to write: json, graphml, dot, radar-csv")
            ->delimiter(',')
            ->check(CLI::IsMember({"json", "graphml", "dot", "radar-csv"}));
        cmd->add_option("--size-by", opts.config.dot_size_by,
                        "metric controlling DOT node sizes");
        cmd->add_option("--walk-length", opts.config.walk_length,
                        "walktrap random-walk length")
            ->check(CLI::PositiveNumber);
    }
}

// Returns false (as exit 1) on a bad enum value; CLI11 validation already
// restricts the spellings, so these lookups cannot realistically fail.
bool finalize(CliOptions& opts, std::ostream& diag) {
    const auto format = vivid::scan_format_from_string(opts.format);
    const auto weighting = vivid::weighting_from_string(opts.weighting);
    if (!format || !weighting) {
        diag << "error: unknown format or weighting\n";
        return false;
    }
    opts.config.input_format = *format;
    opts.config.weighting = *weighting;
    if (!opts.foi.empty()) opts.config.foi_path = opts.foi;
    if (!opts.exports.empty()) {
        opts.config.exports.clear();
        for (const auto& name : opts.exports) {
            opts.config.exports.insert(*vivid::export_format_from_string(name));
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vulnerability data flow graph analytics"};
    app.require_subcommand(1);

    CliOptions analyze_opts;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "run the full pipeline and write report artifacts");
    add_pipeline_flags(analyze, analyze_opts, true);

    std::string rank_report, rank_metric;
    int rank_top = 10;
    CLI::App* rank = app.add_subcommand("rank", "print top files from a stored report");
    rank->add_option("--report,-r", rank_report, "report.json produced by analyze")
        ->required();
    rank->add_option("--metric,-m", rank_metric, "metric or priority ranking name")
        ->required();
    rank->add_option("--top,-n", rank_top, "rows to print")->check(CLI::PositiveNumber);

    CliOptions comm_opts;
    CLI::App* communities =
        app.add_subcommand("communities", "print walktrap communities and modularity");
    add_pipeline_flags(communities, comm_opts, false);
    communities->add_option("--walk-length", comm_opts.config.walk_length,
                            "walktrap random-walk length")
        ->check(CLI::PositiveNumber);

    CliOptions entropy_opts;
    CLI::App* entropy =
        app.add_subcommand("entropy", "print per-island substructure entropy");
    add_pipeline_flags(entropy, entropy_opts, false);

    CliOptions export_opts;
    CLI::App* exporter =
        app.add_subcommand("export", "write visualization exports (graphml, dot)");
    add_pipeline_flags(exporter, export_opts, true);

    CliOptions eval_opts;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "score metric capture against files of interest");
    add_pipeline_flags(evaluate, eval_opts, true);

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        if (!finalize(analyze_opts, std::cerr)) return 1;
        return vivid::cmd_analyze(analyze_opts.config, std::cerr);
    }
    if (rank->parsed()) {
        return vivid::cmd_rank(rank_report, rank_metric, rank_top, std::cout, std::cerr);
    }
    if (communities->parsed()) {
        if (!finalize(comm_opts, std::cerr)) return 1;
        return vivid::cmd_communities(comm_opts.config, std::cout, std::cerr);
    }
    if (entropy->parsed()) {
        if (!finalize(entropy_opts, std::cerr)) return 1;
        return vivid::cmd_entropy(entropy_opts.config, std::cout, std::cerr);
    }
    if (exporter->parsed()) {
        if (!finalize(export_opts, std::cerr)) return 1;
        return vivid::cmd_export(export_opts.config, std::cerr);
    }
    if (evaluate->parsed()) {
        if (!finalize(eval_opts, std::cerr)) return 1;
        return vivid::cmd_evaluate(eval_opts.config, std::cout, std::cerr);
    }
    return 1;
}
