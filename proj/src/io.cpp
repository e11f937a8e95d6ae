#include "hoi/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hoi {

namespace {

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

// Reads one RFC-4180 record. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields, int& line_no) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  ++line_no;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  while (true) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      if (quoted) throw std::invalid_argument("CSV: unterminated quoted field at line " + std::to_string(line_no));
      fields.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line_no;
        field += ch;
      }
      continue;
    }
    if (ch == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (ch == '\r' && in.peek() == '\n') {
      // CRLF; the LF ends the record on the next iteration.
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else {
      field += ch;
      field_started = true;
    }
  }
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> record;
  int line_no = 0;
  while (in.peek() == '#') {
    std::string skipped;
    std::getline(in, skipped);
    ++line_no;
  }
  if (!read_record(in, table.header, line_no) || (table.header.size() == 1 && table.header[0].empty())) {
    throw std::invalid_argument("CSV: missing header row");
  }
  while (read_record(in, record, line_no)) {
    if (record.size() == 1 && record[0].empty()) continue;
    if (record.size() != table.header.size()) {
      throw std::invalid_argument("CSV: line " + std::to_string(line_no) + " has " + std::to_string(record.size()) +
                                  " fields, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(record);
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return parse_csv(in);
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out << ',';
    out << csv_field(fields[k]);
  }
  out << "\r\n";
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::vector<double> log_returns(std::span<const double> series) {
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!(series[t] > 0.0)) {
      throw std::invalid_argument("log_returns: non-positive value at row " + std::to_string(t));
    }
  }
  std::vector<double> out;
  if (series.size() < 2) return out;
  out.reserve(series.size() - 1);
  for (std::size_t t = 0; t + 1 < series.size(); ++t) out.push_back(std::log(series[t + 1] / series[t]));
  return out;
}

LoadedData table_to_data(const CsvTable& table, const std::vector<std::string>& columns,
                         Preprocessing preprocessing) {
  std::vector<std::string> notices;
  std::size_t first = 0;
  double probe = 0.0;
  if (!table.rows.empty() && !parse_double(table.rows.front().front(), probe)) {
    notices.push_back("dropped non-numeric first column '" + table.header.front() + "' as a date index");
    first = 1;
  }

  std::vector<std::size_t> picked;
  if (columns.empty()) {
    for (std::size_t c = first; c < table.header.size(); ++c) picked.push_back(c);
  } else {
    for (const auto& name : columns) {
      std::size_t found = table.header.size();
      for (std::size_t c = first; c < table.header.size(); ++c) {
        if (table.header[c] == name) found = c;
      }
      if (found == table.header.size()) throw std::invalid_argument("unknown column '" + name + "'");
      picked.push_back(found);
    }
  }
  if (picked.empty()) throw std::invalid_argument("no data columns selected");

  Eigen::MatrixXd values(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(picked.size()));
  std::vector<std::string> names;
  for (std::size_t k = 0; k < picked.size(); ++k) {
    names.push_back(table.header[picked[k]]);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      double v = 0.0;
      if (!parse_double(table.rows[r][picked[k]], v)) {
        throw std::invalid_argument("column '" + names.back() + "' row " + std::to_string(r + 1) +
                                    ": not a number: '" + table.rows[r][picked[k]] + "'");
      }
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = v;
    }
  }

  if (preprocessing == Preprocessing::LogReturns) {
    if (values.rows() < 2) throw std::invalid_argument("log returns need at least two rows");
    Eigen::MatrixXd returns(values.rows() - 1, values.cols());
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const Eigen::VectorXd col = values.col(c);
      std::vector<double> r;
      try {
        r = log_returns(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("column '" + names[static_cast<std::size_t>(c)] + "': " + e.what());
      }
      returns.col(c) = Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
    }
    values = std::move(returns);
  }
  return LoadedData{DataMatrix(std::move(values), std::move(names)), std::move(notices)};
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\r') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      double v = 0.0;
      if (!parse_double(token, v)) throw std::invalid_argument("matrix: not a number: '" + token + "'");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw std::invalid_argument("matrix: no rows");
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n) {
      throw std::invalid_argument("matrix: row " + std::to_string(r) + " does not have " + std::to_string(n) +
                                  " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return out;
}

nlohmann::json to_json(const GradientReport& r) {
  return {{"label", r.label},         {"variables", r.variables}, {"estimate", r.estimate},
          {"ci_low", r.ci_low},       {"ci_high", r.ci_high},     {"significant", r.significant},
          {"n_boot", r.n_boot},       {"seed", r.seed}};
}

nlohmann::json to_json(const SweepResult& sweep) {
  nlohmann::json curves = nlohmann::json::array();
  for (std::size_t q = 0; q < sweep.labels.size(); ++q) {
    curves.push_back({{"label", sweep.labels[q]}, {"values", sweep.curves[q]}});
  }
  return {{"betas", sweep.betas}, {"curves", curves}};
}

nlohmann::json to_json(const MultipletScan& scan, const std::vector<std::string>& names) {
  nlohmann::json multiplets = nlohmann::json::array();
  for (const auto& r : scan.reports) multiplets.push_back(to_json(r));
  nlohmann::json variables = nlohmann::json::array();
  for (std::size_t v = 0; v < scan.redundancy.size(); ++v) {
    variables.push_back({{"variable", names.at(v)}, {"redundancy", scan.redundancy[v]}, {"synergy", scan.synergy[v]}});
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : scan.pairs) {
    pairs.push_back({{"node_i", names.at(p.i)},
                     {"node_j", names.at(p.j)},
                     {"redundancy", p.redundancy},
                     {"synergy", p.synergy}});
  }
  return {{"order", scan.order},
          {"n_multiplets", scan.multiplets.size()},
          {"multiplets", multiplets},
          {"variables", variables},
          {"pairs", pairs}};
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}, {"worst", c.worst}, {"detail", c.detail}};
}

void write_provenance(std::ostream& out, const nlohmann::json& config) {
  out << "# schema_version: " << kSchemaVersion << "\r\n";
  out << "# config: " << config.dump() << "\r\n";
}

void write_reports_csv(std::ostream& out, const std::vector<GradientReport>& reports) {
  write_csv_record(out, {"label", "variables", "estimate", "ci_low", "ci_high", "significant", "n_boot", "seed"});
  for (const auto& r : reports) {
    write_csv_record(out, {r.label, join(r.variables, ';'), format_double(r.estimate), format_double(r.ci_low),
                           format_double(r.ci_high), r.significant ? "true" : "false", std::to_string(r.n_boot),
                           std::to_string(r.seed)});
  }
}

void write_edges_csv(std::ostream& out, const std::vector<GradientReport>& reports) {
  write_csv_record(out, {"node_i", "node_j", "value", "significant"});
  for (const auto& r : reports) {
    if (r.variables.size() != 2) {
      throw std::invalid_argument("edge list needs pairwise reports, got '" + r.label + "'");
    }
    write_csv_record(out, {r.variables[0], r.variables[1], format_double(r.estimate), r.significant ? "true" : "false"});
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  std::vector<std::string> header{"beta"};
  header.insert(header.end(), sweep.labels.begin(), sweep.labels.end());
  write_csv_record(out, header);
  for (std::size_t b = 0; b < sweep.betas.size(); ++b) {
    std::vector<std::string> row{format_double(sweep.betas[b])};
    for (const auto& curve : sweep.curves) row.push_back(format_double(curve[b]));
    write_csv_record(out, row);
  }
}

void write_scan_csv(std::ostream& out, const MultipletScan& scan, const std::vector<std::string>& names) {
  write_csv_record(out, {"kind", "variables", "estimate", "ci_low", "ci_high", "significant", "redundancy", "synergy"});
  for (const auto& r : scan.reports) {
    write_csv_record(out, {"multiplet", join(r.variables, ';'), format_double(r.estimate), format_double(r.ci_low),
                           format_double(r.ci_high), r.significant ? "true" : "false", "", ""});
  }
  for (std::size_t v = 0; v < scan.redundancy.size(); ++v) {
    write_csv_record(out, {"variable", names.at(v), "", "", "", "", format_double(scan.redundancy[v]),
                           format_double(scan.synergy[v])});
  }
  for (const auto& p : scan.pairs) {
    write_csv_record(out, {"pair", names.at(p.i) + ";" + names.at(p.j), "", "", "", "", format_double(p.redundancy),
                           format_double(p.synergy)});
  }
}

}  // namespace hoi
