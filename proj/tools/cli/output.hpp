#pragma once

/// @file output.hpp
/// Tabular result emission as CSV or JSON, and parsing of emitted aggregates.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rvea/drift.hpp"
#include "rvea/experiments.hpp"
#include "rvea/scaling_fit.hpp"

namespace rvea::cli {

enum class OutputFormat { Csv, Json };

/// Empty cell (CSV "") / JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Rows with a fixed, ordered set of columns.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Column order of aggregate output.
inline const std::vector<std::string> kAggregateColumns{"n",    "r",         "algorithm", "operator",   "metric",
                                                        "mean", "std_error", "median",    "replicates", "capped"};

[[nodiscard]] Table aggregate_table(std::span<const AggregateResult> results);

struct DriftRow {
    std::int64_t n;
    std::int64_t r;
    AlgorithmKind algorithm;
    StepOperatorKind op;
    MetricKind metric;
    std::string potential;
    DriftEstimate estimate;
};
[[nodiscard]] Table drift_table(std::span<const DriftRow> rows);

struct TokenRow {
    std::int64_t r;
    std::string distribution;
    double mean;
    double std_error;
    /// Exact expectation; unset when r exceeds the exact solver's limit.
    std::optional<double> exact;
    std::size_t replicates;
    std::size_t capped;
};
[[nodiscard]] Table token_table(std::span<const TokenRow> rows);

/// One row per fitted term.
[[nodiscard]] Table fit_table(const ScalingFit& fit, std::size_t points);

/// Columns j, probability.
[[nodiscard]] Table pmf_table(std::span<const double> pmf);

/// Writes `table`. Numbers use 10 significant digits and '.' as decimal
/// separator; NaN is written as an empty CSV field or JSON null. Output ends
/// with a newline. Throws UsageError for an empty table.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

/// Writes to `path`, or to `fallback` when no path is given. Throws IoError
/// when the destination cannot be written.
void emit_table(const Table& table, OutputFormat format, const std::optional<std::string>& path, std::ostream& fallback);

/// Parses aggregates written by write_table in either format (detected from
/// the first non-blank character). Throws UsageError on malformed input.
[[nodiscard]] std::vector<AggregateResult> parse_aggregates(const std::string& text);

} // namespace rvea::cli
