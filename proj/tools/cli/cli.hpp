#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cli/output.hpp"
#include "rvea/drift.hpp"
#include "rvea/experiments.hpp"
#include "rvea/token_process.hpp"

namespace rvea::cli {

enum class Subcommand { Run, Drift, Token, Fit, Pmf };

/// Fully merged configuration: plan-file values overridden by inline flags.
struct CliConfig {
    Subcommand subcommand = Subcommand::Run;
    std::optional<std::string> plan_file;

    std::vector<std::int64_t> n;
    std::vector<std::int64_t> r;
    std::vector<AlgorithmKind> algorithms{AlgorithmKind::RLS};
    std::vector<StepOperatorKind> operators{StepOperatorKind::Uniform};
    MetricKind metric = MetricKind::Interval;
    TargetPolicy target = TargetPolicy::AllZero;
    StartPolicy start = StartPolicy::uniform_random();
    std::size_t replicates = 1;
    std::optional<std::uint64_t> seed;
    std::uint64_t cap = kDefaultIterationCap;
    unsigned threads = 0;

    PotentialKind potential = PotentialKind::hamming();
    DriftConditioning::Mode drift_mode = DriftConditioning::Mode::Planted;
    std::vector<std::int64_t> levels;
    std::uint64_t samples = 10'000;

    std::vector<std::string> distributions{"harmonic"};

    std::optional<std::string> input;
    std::string model;

    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> output;

    /// Plan for `run`.
    [[nodiscard]] ExperimentPlan experiment_plan() const;
};

/// Parses arguments (without the program name). Throws UsageError for unknown
/// or malformed flags, missing required flags and violated invariants,
/// HelpRequested for --help, IoError for an unreadable plan file.
[[nodiscard]] CliConfig parse_args(std::span<const std::string> args);

/// Runs a parsed configuration, writing data to `out` (unless --out is given)
/// and diagnostics to `err`. Returns the process exit status.
int execute(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit-code mapping: 0 ok, 1 usage, 2 I/O, 3 capacity.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace rvea::cli
