#pragma once

#include "vivid/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>

namespace vivid {

enum class ExportFormat { json, graphml, dot, radar_csv };

struct RunConfig {
    std::filesystem::path input_path;
    ScanFormat input_format = ScanFormat::vivid_json;
    Weighting weighting = Weighting::count;
    bool noise_filter = true;
    std::vector<std::string> metrics;    // empty = all canonical metrics
    std::string profile = "placement";   // built-in name or JSON file path
    std::filesystem::path foi_path;      // empty = no capture evaluation
    int k = 5;
    std::filesystem::path output_dir = ".";
    std::set<ExportFormat> exports = {ExportFormat::json};
    std::size_t clique_cap = 1000000;
    std::string dot_size_by = "betweenness";
    int walk_length = 4;
};

// Result of the in-memory pipeline: the report plus the graph the analysis
// ran on (post noise filter when enabled).
struct AnalysisOutput {
    AnalysisReport report;
    VdfGraph graph;
};

// ingest -> build -> filter -> islands -> metrics -> communities -> entropy
// -> rankings -> captures -> priority score. Throws on any failure;
// warnings and progress go to `diag`.
AnalysisOutput run_analysis(const RunConfig& config, std::ostream& diag);

// Exit codes: 0 success, 1 validation error, 2 parse error, 3 resource
// guard abort. Output files are written atomically after the whole
// analysis succeeds; a failing run leaves no partial outputs.
int cmd_analyze(const RunConfig& config, std::ostream& diag);

// Prints up to top_n rows "rank<TAB>file<TAB>value" from a stored report.
int cmd_rank(const std::filesystem::path& report_path, const std::string& metric,
             int top_n, std::ostream& out, std::ostream& diag);

int cmd_communities(const RunConfig& config, std::ostream& out, std::ostream& diag);
int cmd_entropy(const RunConfig& config, std::ostream& out, std::ostream& diag);
int cmd_export(const RunConfig& config, std::ostream& diag);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& diag);

int exit_code_for(const std::exception& e);

std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

const char* to_string(ExportFormat format);
std::optional<ExportFormat> export_format_from_string(std::string_view name);

} // namespace vivid
