#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qtcert/certify.hpp"
#include "qtcert/fidelity.hpp"

namespace qtcert::report {

/// One scalar value in an emitted record.
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

/// Ordered (key, value) pairs; key order is the emission order.
using Record = std::vector<std::pair<std::string, Cell>>;

/// Output of one CLI command: `meta` holds values shared by every row.
struct Document {
  std::string command;
  Record meta;
  std::vector<Record> rows;
};

enum class Format { json, csv, table };

Format parse_format(std::string_view name);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);
std::string format_cell(const Cell& cell);

/// {"command": ..., "meta": {...}, "rows": [{...}, ...]}, two-space indent.
std::string to_json(const Document& doc);

/// Header row then one line per row; meta columns are repeated on every row.
/// A document without rows emits a single line of meta values.
std::string to_csv(const Document& doc);

/// Human-readable: meta as "key: value" lines, then aligned columns.
std::string to_table(const Document& doc);

std::string render(const Document& doc, Format format);

/// RFC 4180 reader: quoted fields may contain commas, quotes ("") and newlines.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::string write_csv(const std::vector<std::vector<std::string>>& rows);

/// Re-serializes parsed JSON with the same layout as to_json.
std::string normalize_json(const std::string& text);

Document run_document(const FidelityReport& report);
Document sweep_document(ProtocolId protocol, const ProtocolParams& base, FidelityMode mode,
                        const std::vector<FidelityReport>& points);
Document theta_average_document(ProtocolId protocol, int m, const QuadratureSpec& quadrature, double value);
Document bloch_average_document(const BlochAverage& average);
Document decision_document(const CertificateDecision& decision, const Record& context);
Document branches_document(ProtocolId protocol, const ProtocolParams& params, const std::vector<Branch>& branches);
Document thresholds_document(int m, InputFamily family, const std::vector<ThresholdEntry>& table);

}  // namespace qtcert::report
