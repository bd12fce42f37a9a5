#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vivid {

enum class ScanFormat { vivid_json, edge_csv };

// One hop of a vulnerability data flow.
struct FlowStep {
    std::string file;           // normalized path, forward slashes
    std::string function;       // empty when absent
    std::optional<int> line;    // >= 1 when present

    bool operator==(const FlowStep&) const = default;
};

// One vulnerability with its ordered taint path (source -> sink).
struct VdfRecord {
    std::string id;
    std::string cwe;            // empty when absent
    int severity = 0;           // 0 informational .. 5 very high
    std::string category;       // empty when absent
    std::vector<FlowStep> flow; // length >= 1; length 1 = single-file finding

    bool operator==(const VdfRecord&) const = default;
};

struct ScanDocument {
    std::string app_name;
    std::string scan_id;
    std::vector<VdfRecord> records;
    // Unknown-key notices collected while parsing; not part of document
    // identity and not serialized.
    std::vector<std::string> warnings;

    bool operator==(const ScanDocument& other) const {
        return app_name == other.app_name && scan_id == other.scan_id &&
               records == other.records;
    }
};

// Backslashes become '/', repeated separators and "." segments collapse,
// leading "./" and trailing '/' are stripped, case is preserved. Throws
// ValidationError when the result is empty.
std::string normalize_path(const std::string& raw);

// Parses a scan in the requested format. Grammar violations throw
// ParseError (with byte offset / line), invariant violations throw
// ValidationError naming the offending element.
ScanDocument parse_scan(std::string_view input, ScanFormat format);

// Canonical vivid-json serialization; parse_scan(serialize_scan(d)) == d.
std::string serialize_scan(const ScanDocument& doc);

const char* to_string(ScanFormat format);
std::optional<ScanFormat> scan_format_from_string(std::string_view name);

} // namespace vivid
