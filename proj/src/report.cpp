#include "qtcert/report.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"

namespace qtcert::report {

namespace {

using Json = nlohmann::ordered_json;

Json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

Json record_json(const Record& record) {
  Json obj = Json::object();
  for (const auto& [key, value] : record) obj[key] = cell_json(value);
  return obj;
}

bool needs_quotes(const std::string& s) {
  if (s.empty()) return false;
  return s.find_first_of(",\"\r\n") != std::string::npos || s.front() == ' ' || s.back() == ' ';
}

std::string csv_field(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Column names in first-seen order across meta and rows.
std::vector<std::string> row_columns(const std::vector<Record>& rows) {
  std::vector<std::string> cols;
  for (const Record& r : rows) {
    for (const auto& [key, value] : r) {
      if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    }
  }
  return cols;
}

const Cell* lookup(const Record& r, const std::string& key) {
  for (const auto& [k, v] : r) {
    if (k == key) return &v;
  }
  return nullptr;
}

Record params_record(ProtocolId protocol, const ProtocolParams& params) {
  return {
      {"protocol", std::string(to_string(protocol))},
      {"m", std::int64_t{params.m}},
      {"family", std::string(to_string(params.family))},
      {"theta", params.theta},
      {"phi", params.phi},
  };
}

Cell optional_bit(const std::optional<int>& b) {
  if (b) return std::int64_t{*b};
  return std::monostate{};
}

void append(Record& r, Record more) {
  for (auto& kv : more) r.push_back(std::move(kv));
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "table") return Format::table;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else {
          return v;
        }
      },
      cell);
}

std::string to_json(const Document& doc) {
  Json root = Json::object();
  root["command"] = doc.command;
  root["meta"] = record_json(doc.meta);
  Json rows = Json::array();
  for (const Record& r : doc.rows) rows.push_back(record_json(r));
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

std::string normalize_json(const std::string& text) { return Json::parse(text).dump(2) + "\n"; }

std::string to_csv(const Document& doc) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> header;
  for (const auto& [key, value] : doc.meta) header.push_back(key);
  const std::vector<std::string> cols = row_columns(doc.rows);
  header.insert(header.end(), cols.begin(), cols.end());
  lines.push_back(header);

  std::vector<std::string> meta_values;
  for (const auto& [key, value] : doc.meta) meta_values.push_back(format_cell(value));
  if (doc.rows.empty()) {
    lines.push_back(meta_values);
  }
  for (const Record& r : doc.rows) {
    std::vector<std::string> line = meta_values;
    for (const std::string& c : cols) {
      const Cell* v = lookup(r, c);
      line.push_back(v ? format_cell(*v) : "");
    }
    lines.push_back(std::move(line));
  }
  return write_csv(lines);
}

std::string write_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    row_started = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_started = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quoted CSV field");
  if (row_started) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_table(const Document& doc) {
  std::ostringstream os;
  os << doc.command << "\n";
  std::size_t key_width = 0;
  for (const auto& [key, value] : doc.meta) key_width = std::max(key_width, key.size());
  for (const auto& [key, value] : doc.meta) {
    os << "  " << key << std::string(key_width - key.size(), ' ') << " : " << format_cell(value) << "\n";
  }
  if (doc.rows.empty()) return os.str();

  const std::vector<std::string> cols = row_columns(doc.rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
  for (const Record& r : doc.rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Cell* v = lookup(r, cols[c]);
      line.push_back(v ? format_cell(*v) : "");
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  os << "\n";
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) text += "  ";
      text += line[c] + std::string(width[c] - line[c].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    os << text << "\n";
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  return os.str();
}

std::string render(const Document& doc, Format format) {
  switch (format) {
    case Format::json:
      return to_json(doc);
    case Format::csv:
      return to_csv(doc);
    case Format::table:
      return to_table(doc);
  }
  return {};
}

Document run_document(const FidelityReport& report) {
  Document doc;
  doc.command = "run";
  doc.meta = params_record(report.protocol, report.params);
  doc.meta.emplace_back("mode", std::string(to_string(report.mode)));
  if (report.mode == FidelityMode::monte_carlo) {
    doc.meta.emplace_back("seed", static_cast<std::int64_t>(*report.seed));
    doc.meta.emplace_back("shots", static_cast<std::int64_t>(*report.shots));
  }
  doc.meta.emplace_back("criterion", std::string("pointwise"));
  doc.meta.emplace_back("f_th", report.f_th);
  if (report.std_error) doc.meta.emplace_back("std_error", *report.std_error);
  doc.meta.emplace_back("definition", report.definition);
  for (const BranchFidelity& b : report.per_branch) {
    Record r{
        {"announcement", b.announcement.label()},
        {"a", std::int64_t{b.announcement.a}},
        {"b", optional_bit(b.announcement.b)},
    };
    if (report.mode == FidelityMode::exact) {
      r.emplace_back("probability", b.probability);
      r.emplace_back("branch_fidelity", b.fidelity ? Cell{*b.fidelity} : Cell{});
    } else {
      r.emplace_back("frequency", b.probability);
    }
    doc.rows.push_back(std::move(r));
  }
  return doc;
}

Document sweep_document(ProtocolId protocol, const ProtocolParams& base, FidelityMode mode,
                        const std::vector<FidelityReport>& points) {
  Document doc;
  doc.command = "sweep";
  doc.meta = {
      {"protocol", std::string(to_string(protocol))},
      {"m", std::int64_t{base.m}},
      {"family", std::string(to_string(base.family))},
      {"phi", base.phi},
      {"mode", std::string(to_string(mode))},
  };
  if (mode == FidelityMode::monte_carlo && !points.empty()) {
    doc.meta.emplace_back("seed", static_cast<std::int64_t>(*points.front().seed));
    doc.meta.emplace_back("shots", static_cast<std::int64_t>(*points.front().shots));
  }
  doc.meta.emplace_back("criterion", std::string("pointwise"));
  doc.meta.emplace_back("definition", std::string(kThresholdDefinition));
  for (const FidelityReport& p : points) {
    Record r{{"theta", p.params.theta}, {"f_th", p.f_th}};
    if (p.std_error) r.emplace_back("std_error", *p.std_error);
    doc.rows.push_back(std::move(r));
  }
  return doc;
}

Document theta_average_document(ProtocolId protocol, int m, const QuadratureSpec& quadrature, double value) {
  Document doc;
  doc.command = "average";
  doc.meta = {
      {"protocol", std::string(to_string(protocol))},
      {"m", std::int64_t{m}},
      {"family", std::string("ghz")},
      {"criterion", std::string("theta_average")},
      {"quadrature", quadrature.label()},
      {"value", value},
      {"definition", std::string("(1/pi) * integral over [0, pi) of f_th(theta) dtheta")},
  };
  return doc;
}

Document bloch_average_document(const BlochAverage& average) {
  Document doc;
  doc.command = "average";
  doc.meta = {
      {"protocol", std::string(to_string(average.protocol))},
      {"m", std::int64_t{1}},
      {"family", std::string("bloch")},
      {"criterion", std::string("bloch_postselected")},
      {"quadrature", "gauss_" + std::to_string(average.resolution) + " x trapezoid_" +
                         std::to_string(2 * average.resolution)},
      {"normalization", average.normalization},
      {"squared_definition",
       std::string("normalization * integral dphi dcos(theta) |<Psi|rho_ab|Psi>|^2, rho_ab sub-normalized")},
      {"linear_definition", std::string("(1/4pi) * integral dphi dcos(theta) <Psi|rho_ab|Psi>")},
      {"squared_a0", average.per_a_squared[0]},
      {"squared_a1", average.per_a_squared[1]},
      {"linear_a0", average.per_a_linear[0]},
      {"linear_a1", average.per_a_linear[1]},
      {"postselect", optional_bit(average.postselect)},
      {"postselected", average.postselected ? Cell{*average.postselected} : Cell{}},
      {"postselected_label",
       std::string(average.postselected ? "postselected, not a certification input by default" : "")},
  };
  for (const BlochBranchAverage& b : average.per_branch) {
    doc.rows.push_back({
        {"announcement", b.announcement.label()},
        {"a", std::int64_t{b.announcement.a}},
        {"b", optional_bit(b.announcement.b)},
        {"squared", b.squared},
        {"linear", b.linear},
    });
  }
  return doc;
}

Document decision_document(const CertificateDecision& decision, const Record& context) {
  Document doc;
  doc.command = "certify";
  doc.meta = context;
  append(doc.meta, {
                       {"model", std::string(to_string(decision.model))},
                       {"certificate", std::int64_t{decision.certificate}},
                       {"certificate_text", std::string(certificate_text(decision.model))},
                       {"criterion", std::string(to_string(decision.criterion))},
                       {"threshold_source", std::string(to_string(decision.source))},
                       {"observed", decision.observed},
                       {"threshold", decision.threshold},
                       {"comparison", std::string(to_string(decision.comparison))},
                       {"verdict", std::string(to_string(decision.verdict))},
                       {"provenance", decision.provenance},
                   });
  return doc;
}

Document branches_document(ProtocolId protocol, const ProtocolParams& params, const std::vector<Branch>& branches) {
  Document doc;
  doc.command = "enumerate";
  doc.meta = params_record(protocol, params);
  doc.meta.emplace_back("layout", std::string("output = probability-normalized state over ancillas then B's qubit"));
  for (const Branch& br : branches) {
    const std::int64_t dim = br.joint.dim();
    for (std::int64_t i = 0; i < dim; ++i) {
      for (std::int64_t j = 0; j < dim; ++j) {
        const Complex<double> z = br.output ? (*br.output)(i, j) : Complex<double>{};
        doc.rows.push_back({
            {"announcement", br.announcement.label()},
            {"a", std::int64_t{br.announcement.a}},
            {"b", optional_bit(br.announcement.b)},
            {"probability", br.probability},
            {"row", i},
            {"col", j},
            {"re", z.real()},
            {"im", z.imag()},
        });
      }
    }
  }
  return doc;
}

Document thresholds_document(int m, InputFamily family, const std::vector<ThresholdEntry>& table) {
  Document doc;
  doc.command = "thresholds";
  doc.meta = {{"m", std::int64_t{m}}, {"family", std::string(to_string(family))}};
  for (const ThresholdEntry& e : table) {
    doc.rows.push_back({
        {"model", std::string(to_string(e.model))},
        {"certificate", std::int64_t{certificate_id(e.model)}},
        {"criterion", std::string(to_string(e.criterion))},
        {"threshold_source", std::string(to_string(e.source))},
        {"threshold", e.threshold},
        {"provenance", e.provenance},
    });
  }
  return doc;
}

}  // namespace qtcert::report
