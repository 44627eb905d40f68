#include "cli/output.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include "json.hpp"
#include <sstream>

#include "cli/errors.hpp"
#include "rvea/format.hpp"

namespace rvea::cli {

namespace {

constexpr int kDigits = 10;

Cell number(double v) {
    if (!std::isfinite(v)) return std::monostate{};
    return v;
}

Cell count(std::size_t v) { return static_cast<std::int64_t>(v); }

std::string csv_field(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return {};
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_general(v, kDigits);
            } else {
                if (v.find_first_of(",\"\n") == std::string::npos) return v;
                std::string quoted = "\"";
                for (char c : v) {
                    if (c == '"') quoted += '"';
                    quoted += c;
                }
                return quoted + "\"";
            }
        },
        cell);
}

nlohmann::ordered_json json_value(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                return round_significant(v, kDigits);
            } else {
                return v;
            }
        },
        cell);
}

} // namespace

Table aggregate_table(std::span<const AggregateResult> results) {
    Table t{kAggregateColumns, {}};
    for (const auto& a : results) {
        t.rows.push_back({a.n, a.r, std::string(to_string(a.algorithm)), std::string(to_string(a.op)),
                          std::string(to_string(a.metric)), number(a.mean), number(a.std_error), number(a.median),
                          count(a.replicates), count(a.capped_count)});
    }
    return t;
}

Table drift_table(std::span<const DriftRow> rows) {
    Table t{{"n", "r", "algorithm", "operator", "metric", "potential", "level", "mean_drop", "confidence_halfwidth",
             "samples"},
            {}};
    for (const auto& d : rows) {
        t.rows.push_back({d.n, d.r, std::string(to_string(d.algorithm)), std::string(to_string(d.op)),
                          std::string(to_string(d.metric)), d.potential, number(d.estimate.level),
                          number(d.estimate.mean_drop), number(d.estimate.confidence_halfwidth),
                          static_cast<std::int64_t>(d.estimate.samples)});
    }
    return t;
}

Table token_table(std::span<const TokenRow> rows) {
    Table t{{"r", "distribution", "mean", "std_error", "exact", "replicates", "capped"}, {}};
    for (const auto& row : rows) {
        t.rows.push_back({row.r, row.distribution, number(row.mean), number(row.std_error),
                          row.exact ? number(*row.exact) : Cell{}, count(row.replicates), count(row.capped)});
    }
    return t;
}

Table fit_table(const ScalingFit& fit, std::size_t points) {
    Table t{{"model", "term", "coefficient", "r_squared", "points"}, {}};
    for (std::size_t k = 0; k < fit.terms.size(); ++k) {
        t.rows.push_back({fit.model, fit.terms[k], number(fit.coefficients[k]), number(fit.r_squared), count(points)});
    }
    return t;
}

Table pmf_table(std::span<const double> pmf) {
    Table t{{"j", "probability"}, {}};
    for (std::size_t j = 0; j < pmf.size(); ++j) t.rows.push_back({static_cast<std::int64_t>(j + 1), pmf[j]});
    return t;
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
    if (table.rows.empty()) throw UsageError("no results to emit");
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
            out << '\n';
        }
        return;
    }
    auto array = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_value(row[c]);
        array.push_back(std::move(obj));
    }
    out << array.dump(2) << '\n';
}

void emit_table(const Table& table, OutputFormat format, const std::optional<std::string>& path,
                std::ostream& fallback) {
    if (!path || *path == "-") {
        write_table(fallback, table, format);
        fallback.flush();
        if (!fallback) throw IoError("failed writing results to standard output");
        return;
    }
    // Render first so a failing destination never sees partial output.
    std::ostringstream buffer;
    write_table(buffer, table, format);
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + *path + "' for writing");
    file << buffer.str();
    file.flush();
    if (!file) throw IoError("failed writing '" + *path + "'");
}

namespace {

double json_number(const nlohmann::json& v) {
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!v.is_number()) throw UsageError("expected a number in aggregate input");
    return v.get<double>();
}

std::size_t json_count(const nlohmann::json& v) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw UsageError("expected a non-negative integer");
    return v.get<std::size_t>();
}

AggregateResult from_fields(const std::vector<std::string>& f) {
    auto to_double = [](const std::string& s) {
        if (s.empty() || s == "nan") return std::numeric_limits<double>::quiet_NaN();
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw UsageError("malformed number '" + s + "'");
        return v;
    };
    auto to_int = [](const std::string& s) {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw UsageError("malformed integer '" + s + "'");
        return v;
    };
    AggregateResult a;
    a.n = to_int(f[0]);
    a.r = to_int(f[1]);
    a.algorithm = parse_algorithm(f[2]);
    a.op = parse_step_operator(f[3]);
    a.metric = parse_metric(f[4]);
    a.mean = to_double(f[5]);
    a.std_error = to_double(f[6]);
    a.median = to_double(f[7]);
    a.replicates = static_cast<std::size_t>(to_int(f[8]));
    a.capped_count = static_cast<std::size_t>(to_int(f[9]));
    return a;
}

} // namespace

std::vector<AggregateResult> parse_aggregates(const std::string& text) {
    std::vector<AggregateResult> out;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw UsageError("aggregate input is empty");
    try {
        if (text[first] == '[') {
            const auto doc = nlohmann::json::parse(text);
            for (const auto& obj : doc) {
                AggregateResult a;
                a.n = obj.at("n").get<std::int64_t>();
                a.r = obj.at("r").get<std::int64_t>();
                a.algorithm = parse_algorithm(obj.at("algorithm").get<std::string>());
                a.op = parse_step_operator(obj.at("operator").get<std::string>());
                a.metric = parse_metric(obj.at("metric").get<std::string>());
                a.mean = json_number(obj.at("mean"));
                a.std_error = json_number(obj.at("std_error"));
                a.median = json_number(obj.at("median"));
                a.replicates = json_count(obj.at("replicates"));
                a.capped_count = json_count(obj.at("capped"));
                out.push_back(a);
            }
            return out;
        }
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string expected;
        for (const auto& c : kAggregateColumns) expected += (expected.empty() ? "" : ",") + c;
        if (line != expected) throw UsageError("aggregate CSV header must be '" + expected + "'");
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::stringstream row(line);
            std::string field;
            while (std::getline(row, field, ',')) fields.push_back(field);
            if (line.back() == ',') fields.emplace_back();
            if (fields.size() != kAggregateColumns.size()) throw UsageError("aggregate CSV row has wrong field count");
            out.push_back(from_fields(fields));
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed aggregate JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("malformed aggregate input: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw UsageError(std::string("malformed aggregate input: ") + e.what());
    }
    return out;
}

} // namespace rvea::cli
