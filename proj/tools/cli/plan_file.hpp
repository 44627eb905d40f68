#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace rvea::cli {

/// Raw settings keyed by canonical option name ("n", "r", "algo", ...). Every
/// value is a list; scalars are lists of length one.
using Settings = std::map<std::string, std::vector<std::string>>;

/// Parses a flat key-value plan document:
///
///     # comment
///     n = [50, 100]
///     r = [3, 5, 9]
///     algorithm = ea
///     replicates = 200
///
/// Keys are mapped to their canonical option names ("algorithm" -> "algo",
/// "operator" -> "op", "replicates" -> "reps", "distribution" -> "dist").
/// Throws UsageError with the line number on malformed input or unknown keys.
[[nodiscard]] Settings parse_plan(std::istream& in);

/// Reads and parses a plan file; throws IoError if it cannot be opened.
[[nodiscard]] Settings load_plan(const std::string& path);

/// Canonical name for a plan key or alias; empty if unknown.
[[nodiscard]] std::string canonical_key(const std::string& key);

} // namespace rvea::cli
