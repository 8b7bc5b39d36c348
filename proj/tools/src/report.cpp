#include "biphoton/cli/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "biphoton/version.hpp"

namespace biphoton::cli {

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::runtime_error("unknown output format '" + name + "'");
}

std::string format_double(double value) {
    if (value == 0.0) return "0"; // collapse -0
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
    if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
    return std::get<std::string>(cell);
}

std::string rows_fingerprint(const Table& table) {
    std::string out;
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    return "fnv1a64:" + std::string(buf, 16);
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string json_cell(const Cell& cell) {
    if (std::holds_alternative<std::string>(cell)) {
        return '"' + json_escape(std::get<std::string>(cell)) + '"';
    }
    return format_cell(cell); // numbers and booleans are valid JSON tokens
}

std::string render_csv(const Table& table, const RunManifest& m) {
    std::string out;
    out += "# command=" + m.command + '\n';
    for (const auto& [key, value] : m.parameters) {
        out += "# " + key + '=' + value + '\n';
    }
    out += "# version=" + m.version + '\n';
    out += "# checksum=" + m.checksum + '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    out += rows_fingerprint(table);
    return out;
}

std::string render_json(const Table& table, const RunManifest& m) {
    std::string out = "{\n  \"manifest\": {\n";
    out += "    \"command\": \"" + json_escape(m.command) + "\",\n";
    out += "    \"parameters\": {";
    for (std::size_t i = 0; i < m.parameters.size(); ++i) {
        if (i) out += ',';
        out += "\n      \"" + json_escape(m.parameters[i].first) + "\": \"" +
               json_escape(m.parameters[i].second) + '"';
    }
    out += m.parameters.empty() ? "},\n" : "\n    },\n";
    out += "    \"version\": \"" + json_escape(m.version) + "\",\n";
    out += "    \"checksum\": \"" + json_escape(m.checksum) + "\"\n";
    out += "  },\n  \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (r) out += ',';
        out += "\n    {";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) out += ", ";
            out += '"' + json_escape(table.columns[i]) + "\": " + json_cell(table.rows[r][i]);
        }
        out += '}';
    }
    out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

} // namespace

std::string render(const Table& table, RunManifest& manifest, OutputFormat format) {
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::runtime_error("render: row width does not match column count");
        }
    }
    if (manifest.version.empty()) manifest.version = kVersion;
    manifest.checksum = fnv1a64(rows_fingerprint(table));
    return format == OutputFormat::csv ? render_csv(table, manifest)
                                       : render_json(table, manifest);
}

void emit(const Table& table, RunManifest& manifest, OutputFormat format,
          const std::string& destination) {
    const std::string payload = render(table, manifest, format);
    if (destination.empty() || destination == "-") {
        std::cout << payload;
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("emit: failed writing to standard output");
        return;
    }
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("emit: cannot open '" + destination + "' for writing");
    out << payload;
    out.flush();
    if (!out) throw std::runtime_error("emit: failed writing to '" + destination + "'");
}

} // namespace biphoton::cli
