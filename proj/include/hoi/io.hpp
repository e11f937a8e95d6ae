#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "hoi/data_matrix.hpp"
#include "hoi/inference.hpp"
#include "hoi/ising.hpp"
#include "hoi/verify.hpp"

namespace hoi {

inline constexpr int kSchemaVersion = 1;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 reader: comma separated, double-quote quoting, CRLF or LF line
/// ends. A header row is required. Lines starting with '#' before the
/// header are skipped (the provenance block this library writes).
CsvTable parse_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view value);
/// Writes one CRLF-terminated record.
void write_csv_record(std::ostream& out, const std::vector<std::string>& fields);
/// Shortest text that reads back to the same double.
std::string format_double(double value);

/// r_t = ln(x_{t+1} / x_t). Throws std::invalid_argument naming the first
/// non-positive entry (0-based row).
std::vector<double> log_returns(std::span<const double> series);

enum class Preprocessing { None, LogReturns };

struct LoadedData {
  DataMatrix data;
  /// Human-readable notes about what the loader did (dropped date column...).
  std::vector<std::string> notices;
};

/// Converts a parsed table into a data matrix. If the first column does not
/// parse as numbers it is treated as a date index and dropped with a notice.
/// An empty selection keeps every remaining column; otherwise columns are
/// taken by name in the given order. Throws std::invalid_argument on an
/// unknown column or a non-numeric cell.
LoadedData table_to_data(const CsvTable& table, const std::vector<std::string>& columns,
                         Preprocessing preprocessing);

/// Square numeric matrix, one row per line, comma or whitespace separated.
Eigen::MatrixXd read_matrix(std::istream& in);

nlohmann::json to_json(const GradientReport& report);
nlohmann::json to_json(const SweepResult& sweep);
nlohmann::json to_json(const MultipletScan& scan, const std::vector<std::string>& names);
nlohmann::json to_json(const CheckResult& check);

/// '#'-prefixed provenance lines: schema version and the compact config.
void write_provenance(std::ostream& out, const nlohmann::json& config);

/// label,variables,estimate,ci_low,ci_high,significant,n_boot,seed
void write_reports_csv(std::ostream& out, const std::vector<GradientReport>& reports);
/// node_i,node_j,value,significant (pairwise reports only).
void write_edges_csv(std::ostream& out, const std::vector<GradientReport>& reports);
/// beta followed by one column per quantity.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
/// kind,variables,estimate,ci_low,ci_high,significant,redundancy,synergy
/// with kind one of multiplet, variable, pair.
void write_scan_csv(std::ostream& out, const MultipletScan& scan, const std::vector<std::string>& names);

}  // namespace hoi
