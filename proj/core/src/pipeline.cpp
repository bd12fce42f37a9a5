#include "vivid/pipeline.hpp"

#include "vivid/centrality.hpp"
#include "vivid/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace vivid {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write '" + tmp.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw ValidationError("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return 2;
    if (dynamic_cast<const ResourceError*>(&e)) return 3;
    return 1;
}

namespace {

std::vector<std::string> resolve_metric_names(const RunConfig& config) {
    if (config.metrics.empty()) return canonical_metrics();
    std::vector<std::string> names;
    for (const auto& name : config.metrics) {
        if (!is_canonical_metric(name)) {
            throw ValidationError("unknown metric '" + name + "'");
        }
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            names.push_back(name);
        }
    }
    // Keep canonical order regardless of how the selection was spelled.
    std::vector<std::string> ordered;
    for (const auto& name : canonical_metrics()) {
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            ordered.push_back(name);
        }
    }
    return ordered;
}

PriorityProfile resolve_profile(const RunConfig& config) {
    if (auto profile = builtin_profile(config.profile)) return *profile;
    return parse_profile(read_file(config.profile));
}

struct PipelineState {
    ScanDocument doc;
    VdfGraph full;
    VdfGraph graph;       // post-filter when enabled
    std::vector<Node> removed;
    IslandPartition partition;
};

PipelineState ingest_and_build(const RunConfig& config, std::ostream& diag) {
    PipelineState state;
    state.doc = parse_scan(read_file(config.input_path), config.input_format);
    for (const auto& warning : state.doc.warnings) diag << "warning: " << warning << "\n";
    diag << "parsed " << state.doc.records.size() << " vulnerability records\n";

    state.full = build_graph(state.doc, config.weighting);
    diag << "graph: " << state.full.node_count() << " nodes, " << state.full.edge_count()
         << " edges\n";

    if (config.noise_filter) {
        auto [filtered, removed] = apply_noise_filter(state.full);
        state.graph = std::move(filtered);
        state.removed = std::move(removed);
        diag << "noise filter removed " << state.removed.size() << " nodes\n";
    } else {
        state.graph = state.full;
    }
    state.partition = islands(state.graph);
    state.partition.filtered_nodes = state.removed;
    return state;
}

} // namespace

AnalysisOutput run_analysis(const RunConfig& config, std::ostream& diag) {
    PipelineState state = ingest_and_build(config, diag);
    const VdfGraph& g = state.graph;

    const std::vector<std::string> names = resolve_metric_names(config);
    std::vector<MetricVector> metrics;
    for (const auto& name : names) {
        if (name == "in_degree") {
            metrics.push_back(in_degree(g));
        } else if (name == "out_degree") {
            metrics.push_back(out_degree(g));
        } else if (name == "betweenness") {
            metrics.push_back(betweenness(g));
        } else if (name == "in_eigenvector") {
            metrics.push_back(eigenvector(g, EigenDirection::in).vector);
        } else if (name == "out_eigenvector") {
            metrics.push_back(eigenvector(g, EigenDirection::out).vector);
        } else if (name == "pagerank") {
            metrics.push_back(pagerank(g).vector);
        } else {
            metrics.push_back(cross_clique(g, config.clique_cap));
        }
    }

    AnalysisReport report;
    report.app_name = state.doc.app_name;
    report.scan_id = state.doc.scan_id;
    for (const auto& node : g.nodes) report.files.push_back(node.file);
    report.graph_summary.node_count = state.full.node_count();
    report.graph_summary.edge_count = state.full.edge_count();
    report.graph_summary.filtered_count = static_cast<int>(state.removed.size());
    for (const auto& segment : state.partition.segments) {
        report.graph_summary.island_sizes.push_back(static_cast<int>(segment.size()));
        report.segments.push_back(segment_entropy(g, segment));
    }
    report.communities = walktrap_communities(g, config.walk_length);

    const PriorityProfile profile = resolve_profile(config);
    metrics.push_back(priority_vector(g, metrics, profile));
    report.metrics = metrics;
    for (const auto& metric : metrics) report.rankings.push_back(rank(g, metric));

    if (!config.foi_path.empty()) {
        const auto foi = parse_foi(read_file(config.foi_path));
        if (foi.empty()) {
            throw ValidationError("files-of-interest list '" + config.foi_path.string() +
                                  "' is empty");
        }
        for (const auto& table : report.rankings) {
            auto capture = capture_at_k(table, foi, config.k);
            for (const auto& file : capture.missing) {
                diag << "warning: file of interest '" << file << "' is not in the graph\n";
            }
            report.captures.push_back(std::move(capture));
        }
    }

    validate_report(report);
    return {std::move(report), std::move(state.graph)};
}

int cmd_analyze(const RunConfig& config, std::ostream& diag) {
    try {
        AnalysisOutput output = run_analysis(config, diag);

        // Render everything before writing anything so a failing run
        // leaves no partial outputs.
        std::vector<std::pair<std::filesystem::path, std::string>> artifacts;
        const auto& dir = config.output_dir;
        if (config.exports.count(ExportFormat::json)) {
            artifacts.emplace_back(dir / "report.json", export_report_json(output.report));
        }
        if (config.exports.count(ExportFormat::graphml)) {
            artifacts.emplace_back(dir / "graph.graphml",
                                   export_graphml(output.graph, output.report.metrics));
        }
        if (config.exports.count(ExportFormat::dot)) {
            artifacts.emplace_back(
                dir / "graph.dot",
                export_dot(output.graph, output.report.metrics, config.dot_size_by));
        }
        if (config.exports.count(ExportFormat::radar_csv)) {
            if (config.foi_path.empty()) {
                throw ValidationError("radar-csv export requires --foi");
            }
            const auto foi = parse_foi(read_file(config.foi_path));
            artifacts.emplace_back(dir / "radar.csv",
                                   export_radar_csv(output.report.rankings, foi));
        }

        std::filesystem::create_directories(dir);
        for (const auto& [path, bytes] : artifacts) {
            write_file_atomic(path, bytes);
            diag << "wrote " << path.string() << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_rank(const std::filesystem::path& report_path, const std::string& metric,
             int top_n, std::ostream& out, std::ostream& diag) {
    try {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(report_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("report '" + report_path.string() + "' is not valid JSON: " +
                             e.what(), e.byte);
        }
        if (!j.contains("rankings") || !j["rankings"].is_array()) {
            throw ParseError("report '" + report_path.string() + "' has no rankings");
        }
        for (const auto& table : j["rankings"]) {
            if (table.value("metric", "") != metric) continue;
            int printed = 0;
            for (const auto& row : table["rows"]) {
                if (printed >= top_n) break;
                char value[40];
                std::snprintf(value, sizeof(value), "%.12g", row["value"].get<double>());
                out << row["rank"].get<int>() << "\t" << row["file"].get<std::string>()
                    << "\t" << value << "\n";
                ++printed;
            }
            return 0;
        }
        throw ValidationError("metric '" + metric + "' is not in the report");
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_communities(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    try {
        PipelineState state = ingest_and_build(config, diag);
        const auto partition = walktrap_communities(state.graph, config.walk_length);
        for (std::size_t c = 0; c < partition.communities.size(); ++c) {
            out << "community\t" << c << "\t" << partition.communities[c].size() << "\t";
            for (std::size_t i = 0; i < partition.communities[c].size(); ++i) {
                if (i) out << ",";
                out << state.graph.nodes[partition.communities[c][i]].file;
            }
            out << "\n";
        }
        char q[40];
        std::snprintf(q, sizeof(q), "%.12g", partition.modularity_q);
        out << "modularity_q\t" << q << "\n";
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_entropy(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    try {
        PipelineState state = ingest_and_build(config, diag);
        out << "segment\tnodes\tedges\tentropy_bits\tmax_entropy_bits\tnormalized\tband\n";
        for (std::size_t s = 0; s < state.partition.segments.size(); ++s) {
            const auto report = segment_entropy(state.graph, state.partition.segments[s]);
            char h[40], m[40], n[40];
            std::snprintf(h, sizeof(h), "%.12g", report.entropy_bits);
            std::snprintf(m, sizeof(m), "%.12g", report.max_entropy_bits);
            std::snprintf(n, sizeof(n), "%.12g", report.normalized);
            out << s << "\t" << report.segment.size() << "\t" << report.edge_count << "\t"
                << h << "\t" << m << "\t" << n << "\t" << to_string(report.band) << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_export(const RunConfig& config, std::ostream& diag) {
    RunConfig adjusted = config;
    if (adjusted.exports.empty() ||
        (adjusted.exports.size() == 1 && adjusted.exports.count(ExportFormat::json))) {
        adjusted.exports = {ExportFormat::graphml, ExportFormat::dot};
    }
    return cmd_analyze(adjusted, diag);
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    try {
        if (config.foi_path.empty()) throw ValidationError("evaluate requires --foi");
        AnalysisOutput output = run_analysis(config, diag);
        out << "metric\tcaptured\ttotal\tfraction\n";
        for (const auto& capture : output.report.captures) {
            char fraction[40];
            std::snprintf(fraction, sizeof(fraction), "%.12g", capture.capture_fraction);
            out << capture.metric_name << "\t" << capture.captured.size() << "\t"
                << capture.files_of_interest.size() << "\t" << fraction << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

const char* to_string(ExportFormat format) {
    switch (format) {
        case ExportFormat::json: return "json";
        case ExportFormat::graphml: return "graphml";
        case ExportFormat::dot: return "dot";
        default: return "radar-csv";
    }
}

std::optional<ExportFormat> export_format_from_string(std::string_view name) {
    if (name == "json") return ExportFormat::json;
    if (name == "graphml") return ExportFormat::graphml;
    if (name == "dot") return ExportFormat::dot;
    if (name == "radar-csv") return ExportFormat::radar_csv;
    return std::nullopt;
}

} // namespace vivid
