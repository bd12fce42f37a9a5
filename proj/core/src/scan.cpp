#include "vivid/scan.hpp"

#include "vivid/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace vivid {

using json = nlohmann::ordered_json;

std::string normalize_path(const std::string& raw) {
    std::string s = raw;
    std::replace(s.begin(), s.end(), '\\', '/');
    const bool absolute = !s.empty() && s.front() == '/';

    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('/', pos);
        if (next == std::string::npos) next = s.size();
        std::string_view segment(s.data() + pos, next - pos);
        if (!segment.empty() && segment != ".") {
            if (!out.empty()) out += '/';
            out += segment;
        }
        pos = next + 1;
    }
    if (absolute) out.insert(out.begin(), '/');
    if (out.empty() || out == "/") {
        throw ValidationError("path '" + raw + "' is empty after normalization");
    }
    return out;
}

namespace {

int require_severity(const json& value, const std::string& where) {
    if (!value.is_number_integer()) {
        throw ParseError(where + ": severity must be an integer");
    }
    const int severity = value.get<int>();
    if (severity < 0 || severity > 5) {
        throw ValidationError(where + ": severity " + std::to_string(severity) +
                              " outside 0-5");
    }
    return severity;
}

FlowStep parse_step(const json& step, const std::string& where,
                    std::vector<std::string>& warnings) {
    if (!step.is_object()) throw ParseError(where + ": flow step must be an object");
    if (!step.contains("file") || !step["file"].is_string()) {
        throw ParseError(where + ": flow step requires a string 'file'");
    }
    FlowStep out;
    out.file = normalize_path(step["file"].get<std::string>());
    if (step.contains("function")) {
        if (!step["function"].is_string()) {
            throw ParseError(where + ": 'function' must be a string");
        }
        out.function = step["function"].get<std::string>();
    }
    if (step.contains("line")) {
        if (!step["line"].is_number_integer()) {
            throw ParseError(where + ": 'line' must be an integer");
        }
        const int line = step["line"].get<int>();
        if (line < 1) {
            throw ValidationError(where + ": line " + std::to_string(line) + " below 1");
        }
        out.line = line;
    }
    for (const auto& [key, unused] : step.items()) {
        if (key != "file" && key != "function" && key != "line") {
            warnings.push_back(where + ": unknown key '" + key + "' ignored");
        }
    }
    return out;
}

VdfRecord parse_record(const json& rec, std::size_t position,
                       std::vector<std::string>& warnings) {
    const std::string where = "vulnerabilities[" + std::to_string(position) + "]";
    if (!rec.is_object()) throw ParseError(where + ": record must be an object");
    if (!rec.contains("id") || !rec["id"].is_string()) {
        throw ParseError(where + ": record requires a string 'id'");
    }
    VdfRecord out;
    out.id = rec["id"].get<std::string>();
    if (out.id.empty()) throw ValidationError(where + ": empty record id");
    const std::string label = "record '" + out.id + "'";

    if (!rec.contains("severity")) throw ParseError(label + ": missing 'severity'");
    out.severity = require_severity(rec["severity"], label);

    if (rec.contains("cwe")) {
        if (!rec["cwe"].is_string()) throw ParseError(label + ": 'cwe' must be a string");
        out.cwe = rec["cwe"].get<std::string>();
    }
    if (rec.contains("category")) {
        if (!rec["category"].is_string()) {
            throw ParseError(label + ": 'category' must be a string");
        }
        out.category = rec["category"].get<std::string>();
    }
    if (!rec.contains("flow") || !rec["flow"].is_array()) {
        throw ParseError(label + ": record requires a 'flow' array");
    }
    if (rec["flow"].empty()) throw ValidationError(label + ": flow is empty");
    for (std::size_t i = 0; i < rec["flow"].size(); ++i) {
        out.flow.push_back(parse_step(rec["flow"][i],
                                      label + " flow[" + std::to_string(i) + "]",
                                      warnings));
    }
    for (const auto& [key, unused] : rec.items()) {
        if (key != "id" && key != "cwe" && key != "severity" && key != "category" &&
            key != "flow") {
            warnings.push_back(label + ": unknown key '" + key + "' ignored");
        }
    }
    return out;
}

ScanDocument parse_vivid_json(std::string_view input) {
    json j;
    try {
        j = json::parse(input);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw ParseError("top level must be an object");
    for (const auto& [key, unused] : j.items()) {
        if (key != "app" && key != "scan_id" && key != "vulnerabilities") {
            throw ParseError("unknown top-level key '" + key + "'");
        }
    }
    if (!j.contains("app") || !j["app"].is_string()) {
        throw ParseError("missing string 'app'");
    }
    if (!j.contains("scan_id") || !j["scan_id"].is_string()) {
        throw ParseError("missing string 'scan_id'");
    }
    if (!j.contains("vulnerabilities") || !j["vulnerabilities"].is_array()) {
        throw ParseError("missing array 'vulnerabilities'");
    }

    ScanDocument doc;
    doc.app_name = j["app"].get<std::string>();
    doc.scan_id = j["scan_id"].get<std::string>();
    if (doc.app_name.empty()) throw ValidationError("'app' must be non-empty");
    if (doc.scan_id.empty()) throw ValidationError("'scan_id' must be non-empty");

    for (std::size_t i = 0; i < j["vulnerabilities"].size(); ++i) {
        doc.records.push_back(parse_record(j["vulnerabilities"][i], i, doc.warnings));
    }
    return doc;
}

// Minimal RFC-4180 field splitter; returns false at end of input.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quote", 0,
                         line_no);
    }
    fields.push_back(std::move(field));
    return fields;
}

ScanDocument parse_edge_csv(std::string_view input) {
    std::istringstream in{std::string(input)};
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty document");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "vuln_id,from_file,to_file,severity") {
        throw ParseError("line 1: expected header "
                         "'vuln_id,from_file,to_file,severity'", 0, 1);
    }

    ScanDocument doc;
    doc.app_name = "edge-csv";
    doc.scan_id = "edge-csv";
    std::unordered_map<std::string, std::size_t> record_of;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (fields.size() != 4) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields, got " +
                             std::to_string(fields.size()), 0, line_no);
        }
        const std::string& id = fields[0];
        if (id.empty()) {
            throw ValidationError("line " + std::to_string(line_no) + ": empty vuln_id");
        }
        const std::string from = normalize_path(fields[1]);
        const std::string to = normalize_path(fields[2]);
        int severity = 0;
        try {
            std::size_t used = 0;
            severity = std::stoi(fields[3], &used);
            if (used != fields[3].size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": severity '" +
                             fields[3] + "' is not an integer", 0, line_no);
        }
        if (severity < 0 || severity > 5) {
            throw ValidationError("record '" + id + "': severity " +
                                  std::to_string(severity) + " outside 0-5");
        }

        auto it = record_of.find(id);
        if (it == record_of.end()) {
            VdfRecord rec;
            rec.id = id;
            rec.severity = severity;
            rec.flow.push_back({from, "", std::nullopt});
            rec.flow.push_back({to, "", std::nullopt});
            record_of.emplace(id, doc.records.size());
            doc.records.push_back(std::move(rec));
        } else {
            VdfRecord& rec = doc.records[it->second];
            if (rec.severity != severity) {
                throw ValidationError("record '" + id + "': severity " +
                                      std::to_string(severity) + " disagrees with earlier " +
                                      std::to_string(rec.severity));
            }
            if (rec.flow.back().file != from) {
                throw ValidationError("record '" + id + "': row from_file '" + from +
                                      "' does not continue the flow ending at '" +
                                      rec.flow.back().file + "'");
            }
            rec.flow.push_back({to, "", std::nullopt});
        }
    }
    return doc;
}

void validate_document(const ScanDocument& doc) {
    if (doc.records.empty()) throw ValidationError("scan contains no vulnerabilities");
    std::unordered_set<std::string> seen;
    for (const auto& rec : doc.records) {
        if (!seen.insert(rec.id).second) {
            throw ValidationError("duplicate vulnerability id '" + rec.id + "'");
        }
    }
}

} // namespace

ScanDocument parse_scan(std::string_view input, ScanFormat format) {
    ScanDocument doc = format == ScanFormat::vivid_json ? parse_vivid_json(input)
                                                        : parse_edge_csv(input);
    validate_document(doc);
    return doc;
}

std::string serialize_scan(const ScanDocument& doc) {
    json j;
    j["app"] = doc.app_name;
    j["scan_id"] = doc.scan_id;
    j["vulnerabilities"] = json::array();
    for (const auto& rec : doc.records) {
        json r;
        r["id"] = rec.id;
        if (!rec.cwe.empty()) r["cwe"] = rec.cwe;
        r["severity"] = rec.severity;
        if (!rec.category.empty()) r["category"] = rec.category;
        r["flow"] = json::array();
        for (const auto& step : rec.flow) {
            json s;
            s["file"] = step.file;
            if (!step.function.empty()) s["function"] = step.function;
            if (step.line) s["line"] = *step.line;
            r["flow"].push_back(std::move(s));
        }
        j["vulnerabilities"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

const char* to_string(ScanFormat format) {
    return format == ScanFormat::vivid_json ? "vivid-json" : "edge-csv";
}

std::optional<ScanFormat> scan_format_from_string(std::string_view name) {
    if (name == "vivid-json") return ScanFormat::vivid_json;
    if (name == "edge-csv") return ScanFormat::edge_csv;
    return std::nullopt;
}

} // namespace vivid
