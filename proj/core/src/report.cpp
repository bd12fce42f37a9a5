#include "vivid/report.hpp"

#include "vivid/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace vivid {

namespace {

// All exported numbers go through 12-significant-digit formatting so equal
// inputs always produce equal bytes.
std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double sig12(double x) {
    if (!std::isfinite(x)) throw ValidationError("non-finite number in report");
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Affine map of value into [lo, hi]; constant inputs collapse to lo.
double affine_scale(double value, double min, double max, double lo, double hi) {
    if (max <= min) return lo;
    return lo + (value - min) / (max - min) * (hi - lo);
}

const MetricVector* find_metric(const std::vector<MetricVector>& metrics,
                                const std::string& name) {
    for (const auto& m : metrics) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

} // namespace

void validate_report(const AnalysisReport& r) {
    for (const auto& m : r.metrics) {
        if (m.values.size() != r.files.size()) {
            throw ValidationError("report metric '" + m.name + "' covers " +
                                  std::to_string(m.values.size()) + " of " +
                                  std::to_string(r.files.size()) + " files");
        }
    }
    for (const auto& table : r.rankings) {
        if (!find_metric(r.metrics, table.metric_name)) {
            throw ValidationError("report ranking '" + table.metric_name +
                                  "' has no matching metric");
        }
    }
    if (r.graph_summary.island_sizes.size() != r.segments.size()) {
        throw ValidationError("report island_sizes has " +
                              std::to_string(r.graph_summary.island_sizes.size()) +
                              " entries for " + std::to_string(r.segments.size()) +
                              " segments");
    }
    for (std::size_t i = 0; i < r.segments.size(); ++i) {
        if (static_cast<int>(r.segments[i].segment.size()) !=
            r.graph_summary.island_sizes[i]) {
            throw ValidationError("island size mismatch at position " + std::to_string(i));
        }
    }
    for (const auto& capture : r.captures) {
        const auto it = std::find_if(
            r.rankings.begin(), r.rankings.end(),
            [&](const RankingTable& t) { return t.metric_name == capture.metric_name; });
        if (it == r.rankings.end()) {
            throw ValidationError("report capture '" + capture.metric_name +
                                  "' has no matching ranking");
        }
    }
}

std::string export_graphml(const VdfGraph& g, const std::vector<MetricVector>& metrics) {
    for (const auto& m : metrics) {
        if (m.values.size() != g.nodes.size()) {
            throw ValidationError("metric '" + m.name + "' was not computed on this graph");
        }
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out << "  <key id=\"d_file\" for=\"node\" attr.name=\"file\" attr.type=\"string\"/>\n";
    for (const auto& m : metrics) {
        out << "  <key id=\"d_" << xml_escape(m.name) << "\" for=\"node\" attr.name=\""
            << xml_escape(m.name) << "\" attr.type=\"double\"/>\n";
    }
    out << "  <key id=\"e_weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    out << "  <key id=\"e_severity\" for=\"edge\" attr.name=\"severity_weight\""
           " attr.type=\"double\"/>\n";
    out << "  <key id=\"e_vulns\" for=\"edge\" attr.name=\"vuln_count\" attr.type=\"long\"/>\n";
    out << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (const auto& node : g.nodes) {
        out << "    <node id=\"n" << node.index << "\">";
        out << "<data key=\"d_file\">" << xml_escape(node.file) << "</data>";
        for (const auto& m : metrics) {
            out << "<data key=\"d_" << xml_escape(m.name) << "\">"
                << format_number(m.values[node.index]) << "</data>";
        }
        out << "</node>\n";
    }
    for (const auto& e : g.edges) {
        out << "    <edge source=\"n" << e.from << "\" target=\"n" << e.to << "\">";
        out << "<data key=\"e_weight\">" << format_number(e.weight) << "</data>";
        out << "<data key=\"e_severity\">" << format_number(e.severity_weight) << "</data>";
        out << "<data key=\"e_vulns\">" << e.vuln_ids.size() << "</data>";
        out << "</edge>\n";
    }
    out << "  </graph>\n";
    out << "</graphml>\n";
    return out.str();
}

std::string export_dot(const VdfGraph& g, const std::vector<MetricVector>& metrics,
                       const std::string& size_by) {
    const MetricVector* metric = find_metric(metrics, size_by);
    if (!metric) throw ValidationError("unknown metric '" + size_by + "' for node sizing");
    if (metric->values.size() != g.nodes.size()) {
        throw ValidationError("metric '" + size_by + "' was not computed on this graph");
    }

    double value_min = 0.0, value_max = 0.0;
    if (!metric->values.empty()) {
        const auto [lo, hi] = std::minmax_element(metric->values.begin(), metric->values.end());
        value_min = *lo;
        value_max = *hi;
    }
    double weight_min = 0.0, weight_max = 0.0;
    if (!g.edges.empty()) {
        weight_min = weight_max = g.edge_weight(0);
        for (int ei = 1; ei < g.edge_count(); ++ei) {
            weight_min = std::min(weight_min, g.edge_weight(ei));
            weight_max = std::max(weight_max, g.edge_weight(ei));
        }
    }

    std::ostringstream out;
    out << "digraph vdf {\n";
    out << "  node [shape=circle, fixedsize=true];\n";
    char buf[40];
    for (const auto& node : g.nodes) {
        const double size =
            affine_scale(metric->values[node.index], value_min, value_max, 0.5, 3.0);
        std::snprintf(buf, sizeof(buf), "%.4f", size);
        out << "  " << dot_quote(node.file) << " [width=" << buf << ", height=" << buf
            << "];\n";
    }
    for (const auto& e : g.edges) {
        const double pen = affine_scale(g.edge_weight(e), weight_min, weight_max, 1.0, 5.0);
        std::snprintf(buf, sizeof(buf), "%.4f", pen);
        out << "  " << dot_quote(g.nodes[e.from].file) << " -> "
            << dot_quote(g.nodes[e.to].file) << " [penwidth=" << buf << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_report_json(const AnalysisReport& r) {
    validate_report(r);
    using json = nlohmann::ordered_json;

    json j;
    j["app"] = r.app_name;
    j["scan_id"] = r.scan_id;
    j["graph_summary"] = {{"node_count", r.graph_summary.node_count},
                          {"edge_count", r.graph_summary.edge_count},
                          {"filtered_count", r.graph_summary.filtered_count},
                          {"island_sizes", r.graph_summary.island_sizes}};
    j["metrics"] = json::array();
    for (const auto& m : r.metrics) {
        json values = json::array();
        for (std::size_t v = 0; v < m.values.size(); ++v) {
            values.push_back({{"file", r.files[v]}, {"value", sig12(m.values[v])}});
        }
        j["metrics"].push_back({{"name", m.name},
                                {"higher_is_hotter", m.higher_is_hotter},
                                {"values", std::move(values)}});
    }
    j["segments"] = json::array();
    for (const auto& s : r.segments) {
        json files = json::array();
        for (const int v : s.segment) files.push_back(r.files[v]);
        j["segments"].push_back({{"files", std::move(files)},
                                 {"edge_count", s.edge_count},
                                 {"entropy_bits", sig12(s.entropy_bits)},
                                 {"max_entropy_bits", sig12(s.max_entropy_bits)},
                                 {"normalized", sig12(s.normalized)},
                                 {"band", to_string(s.band)}});
    }
    {
        json communities = json::array();
        for (const auto& community : r.communities.communities) {
            json files = json::array();
            for (const int v : community) files.push_back(r.files[v]);
            communities.push_back(std::move(files));
        }
        j["communities"] = {{"walk_length", r.communities.walk_length},
                            {"modularity_q", sig12(r.communities.modularity_q)},
                            {"communities", std::move(communities)}};
    }
    j["rankings"] = json::array();
    for (const auto& table : r.rankings) {
        json rows = json::array();
        for (const auto& row : table.rows) {
            rows.push_back(
                {{"rank", row.rank}, {"file", row.file}, {"value", sig12(row.value)}});
        }
        j["rankings"].push_back({{"metric", table.metric_name}, {"rows", std::move(rows)}});
    }
    j["captures"] = json::array();
    for (const auto& c : r.captures) {
        j["captures"].push_back({{"metric", c.metric_name},
                                 {"k", c.k},
                                 {"files_of_interest", c.files_of_interest},
                                 {"captured", c.captured},
                                 {"capture_fraction", sig12(c.capture_fraction)},
                                 {"missing", c.missing}});
    }
    return j.dump(2) + "\n";
}

std::string export_radar_csv(const std::vector<RankingTable>& rankings,
                             const std::vector<std::string>& foi) {
    std::vector<const RankingTable*> columns;
    for (const auto& name : canonical_metrics()) {
        for (const auto& table : rankings) {
            if (table.metric_name == name) {
                columns.push_back(&table);
                break;
            }
        }
    }

    std::ostringstream out;
    out << "file";
    for (const auto* table : columns) out << "," << csv_field(table->metric_name);
    out << "\r\n";

    std::set<std::string> files(foi.begin(), foi.end());
    for (const auto& file : files) {
        out << csv_field(file);
        for (const auto* table : columns) {
            out << ",";
            const auto it =
                std::find_if(table->rows.begin(), table->rows.end(),
                             [&](const RankedRow& row) { return row.file == file; });
            if (it != table->rows.end()) out << it->rank;
        }
        out << "\r\n";
    }
    return out.str();
}

} // namespace vivid
