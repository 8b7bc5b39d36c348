#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace biphoton::cli {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name); // "csv" | "json"

using Cell = std::variant<double, std::uint64_t, bool, std::string>;

// Column names plus pre-computed rows. Cells hold typed values; formatting
// happens once, at render time, so CSV and JSON agree digit for digit.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Reproducibility record serialized into every output: the subcommand, every
// resolved parameter that influences the rows, the artifact version, and a
// checksum of the rendered rows.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string version;
    std::string checksum;
};

/// 15 significant digits, '.' decimal separator, locale-independent.
std::string format_double(double value);

std::string format_cell(const Cell& cell);

/// Canonical serialization of the rows alone (CSV-style lines); the checksum
/// is computed over these bytes in either output format.
std::string rows_fingerprint(const Table& table);

/// FNV-1a 64-bit over the given bytes, rendered as "fnv1a64:<hex>".
std::string fnv1a64(std::string_view bytes);

/// Full output document. Fills manifest.checksum from the table rows.
/// CSV: "# key=value" manifest comments, then header and data rows.
/// JSON: one object with exactly the keys {"manifest", "rows"}.
std::string render(const Table& table, RunManifest& manifest, OutputFormat format);

/// Renders and writes to `destination` ("" or "-" means standard output).
/// Throws std::runtime_error if the destination cannot be written.
void emit(const Table& table, RunManifest& manifest, OutputFormat format,
          const std::string& destination);

} // namespace biphoton::cli
