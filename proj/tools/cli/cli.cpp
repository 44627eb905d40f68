#include "cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cli/errors.hpp"
#include "cli/plan_file.hpp"
#include "rvea/errors.hpp"
#include "rvea/step_operators.hpp"

namespace rvea::cli {

namespace {

struct OptionSpec {
    const char* key;
    const char* help;
};

// Keys each subcommand accepts, as flags and as plan-file keys.
const std::map<Subcommand, std::vector<OptionSpec>>& option_table() {
    static const OptionSpec n{"n", "dimension(s), comma separated"};
    static const OptionSpec r{"r", "alphabet size(s), comma separated"};
    static const OptionSpec algo{"algo", "algorithm(s): rls | ea"};
    static const OptionSpec op{"op", "step operator(s): uniform | pm1 | harmonic"};
    static const OptionSpec metric{"metric", "interval | ring"};
    static const OptionSpec target{"target", "target policy: zero | center | random"};
    static const OptionSpec start{"start", "start policy: uniform | max | hamming:K"};
    static const OptionSpec reps{"reps", "replicates per cell"};
    static const OptionSpec seed{"seed", "base seed (required)"};
    static const OptionSpec cap{"cap", "iteration cap per run"};
    static const OptionSpec threads{"threads", "worker threads (0 = all cores); results do not depend on it"};
    static const OptionSpec potential{"potential", "hamming | fitness | exp"};
    static const OptionSpec w{"w", "base of the exponential potential, 1 < w <= 2"};
    static const OptionSpec levels{"levels", "potential levels to plant, comma separated"};
    static const OptionSpec samples{"samples", "samples per level (planted) or in total (trajectory), >= 100"};
    static const OptionSpec mode{"mode", "planted | trajectory"};
    static const OptionSpec dist{"dist", "step-size law(s): unit | uniform | harmonic"};
    static const OptionSpec input{"input", "aggregate results (CSV or JSON) written by 'run'"};
    static const OptionSpec model{"model", "scaling model name"};
    static const std::map<Subcommand, std::vector<OptionSpec>> table{
        {Subcommand::Run, {n, r, algo, op, metric, target, start, reps, seed, cap, threads}},
        {Subcommand::Drift, {n, r, algo, op, metric, target, potential, w, levels, samples, mode, seed, cap, threads}},
        {Subcommand::Token, {r, dist, reps, seed, cap, threads}},
        {Subcommand::Fit, {input, model}},
        {Subcommand::Pmf, {r}},
    };
    return table;
}

const char* subcommand_name(Subcommand s) {
    switch (s) {
    case Subcommand::Run: return "run";
    case Subcommand::Drift: return "drift";
    case Subcommand::Token: return "token";
    case Subcommand::Fit: return "fit";
    case Subcommand::Pmf: return "pmf";
    }
    return "?";
}

const char* subcommand_help(Subcommand s) {
    switch (s) {
    case Subcommand::Run: return "replicated run-time study over a grid of (n, r) cells";
    case Subcommand::Drift: return "empirical one-step drift of a potential";
    case Subcommand::Token: return "token process: Monte-Carlo and exact expected hitting times";
    case Subcommand::Fit: return "least-squares scaling fit of aggregate results";
    case Subcommand::Pmf: return "harmonic step-size probabilities for alphabet size r";
    }
    return "";
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("invalid integer for --" + key + ": '" + text + "'");
    }
    return value;
}

double parse_real(const std::string& key, const std::string& text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw UsageError("invalid number for --" + key + ": '" + text + "'");
    }
    return value;
}

class Merged {
public:
    explicit Merged(Settings s) : s_(std::move(s)) {}

    [[nodiscard]] bool has(const std::string& key) const { return s_.contains(key); }

    [[nodiscard]] const std::vector<std::string>& list(const std::string& key) const { return s_.at(key); }

    [[nodiscard]] const std::string& single(const std::string& key) const {
        const auto& values = s_.at(key);
        if (values.size() != 1) throw UsageError("--" + key + " takes a single value");
        return values.front();
    }

    template <typename T>
    [[nodiscard]] std::vector<T> integers(const std::string& key) const {
        std::vector<T> out;
        for (const auto& v : list(key)) out.push_back(parse_integer<T>(key, v));
        return out;
    }

    template <typename Fn>
    auto convert(const std::string& key, Fn&& fn) const {
        try {
            return fn(single(key));
        } catch (const DomainError& e) {
            throw UsageError("--" + key + ": " + e.what());
        }
    }

    template <typename Fn>
    auto convert_all(const std::string& key, Fn&& fn) const {
        std::vector<decltype(fn(std::string{}))> out;
        try {
            for (const auto& v : list(key)) out.push_back(fn(v));
        } catch (const DomainError& e) {
            throw UsageError("--" + key + ": " + e.what());
        }
        return out;
    }

private:
    Settings s_;
};

void require(const Merged& m, const std::string& key) {
    if (!m.has(key)) throw UsageError("missing required flag --" + key);
}

void check_alphabet(const std::vector<std::int64_t>& rs, std::int64_t minimum) {
    for (auto r : rs) {
        if (r < minimum) throw UsageError(minimum == 2 ? "r must be ≥ 2" : "r must be ≥ 1");
    }
}

CliConfig build_config(Subcommand sub, std::optional<std::string> plan_file, const Settings& inline_values,
                       OutputFormat format, std::optional<std::string> output) {
    Settings settings;
    if (plan_file) {
        settings = load_plan(*plan_file);
        std::set<std::string> allowed;
        for (const auto& spec : option_table().at(sub)) allowed.insert(spec.key);
        for (const auto& [key, _] : settings) {
            if (!allowed.contains(key)) {
                throw UsageError("plan key '" + key + "' does not apply to '" + subcommand_name(sub) + "'");
            }
        }
    }
    for (const auto& [key, values] : inline_values) settings[key] = values;
    const Merged m(std::move(settings));

    CliConfig c;
    c.subcommand = sub;
    c.plan_file = std::move(plan_file);
    c.format = format;
    c.output = std::move(output);

    if (m.has("n")) c.n = m.integers<std::int64_t>("n");
    if (m.has("r")) c.r = m.integers<std::int64_t>("r");
    if (m.has("algo")) c.algorithms = m.convert_all("algo", [](const std::string& s) { return parse_algorithm(s); });
    if (m.has("op")) c.operators = m.convert_all("op", [](const std::string& s) { return parse_step_operator(s); });
    if (m.has("metric")) c.metric = m.convert("metric", [](const std::string& s) { return parse_metric(s); });
    if (m.has("target")) c.target = m.convert("target", [](const std::string& s) { return parse_target_policy(s); });
    if (m.has("start")) c.start = m.convert("start", [](const std::string& s) { return parse_start_policy(s); });
    if (m.has("reps")) c.replicates = parse_integer<std::size_t>("reps", m.single("reps"));
    if (m.has("seed")) c.seed = parse_integer<std::uint64_t>("seed", m.single("seed"));
    if (m.has("cap")) c.cap = parse_integer<std::uint64_t>("cap", m.single("cap"));
    if (m.has("threads")) c.threads = parse_integer<unsigned>("threads", m.single("threads"));
    if (m.has("levels")) c.levels = m.integers<std::int64_t>("levels");
    if (m.has("samples")) c.samples = parse_integer<std::uint64_t>("samples", m.single("samples"));
    if (m.has("dist")) c.distributions = m.list("dist");
    if (m.has("input")) c.input = m.single("input");
    if (m.has("model")) c.model = m.single("model");
    if (m.has("potential")) {
        const double w = m.has("w") ? parse_real("w", m.single("w")) : PotentialKind::kDefaultWeight;
        c.potential = m.convert("potential", [w](const std::string& s) { return parse_potential(s, w); });
    } else if (m.has("w")) {
        throw UsageError("--w requires --potential exp");
    }
    if (m.has("mode")) {
        c.drift_mode = m.convert("mode", [](const std::string& s) {
            if (s == "planted") return DriftConditioning::Mode::Planted;
            if (s == "trajectory") return DriftConditioning::Mode::Trajectory;
            throw UsageError("--mode must be planted or trajectory");
        });
    }

    check_alphabet(c.r, sub == Subcommand::Token ? 1 : 2);
    for (auto n : c.n) {
        if (n < 1) throw UsageError("n must be ≥ 1");
    }
    if (m.has("reps") && c.replicates < 1) throw UsageError("--reps must be ≥ 1");
    if (m.has("cap") && c.cap < 1) throw UsageError("--cap must be ≥ 1");

    switch (sub) {
    case Subcommand::Run:
        require(m, "n");
        require(m, "r");
        require(m, "seed");
        if (c.start.kind() == StartPolicy::Kind::FixedHamming) {
            for (auto n : c.n) {
                if (c.start.hamming() > n) throw UsageError("--start hamming:K needs K ≤ n");
            }
        }
        break;
    case Subcommand::Drift:
        require(m, "n");
        require(m, "r");
        require(m, "seed");
        if (c.n.size() != 1 || c.r.size() != 1) throw UsageError("drift takes a single --n and --r");
        if (c.algorithms.size() != 1 || c.operators.size() != 1) throw UsageError("drift takes a single --algo and --op");
        if (c.drift_mode == DriftConditioning::Mode::Planted) require(m, "levels");
        if (c.samples < 100) throw UsageError("--samples must be ≥ 100");
        break;
    case Subcommand::Token:
        require(m, "r");
        require(m, "seed");
        for (const auto& d : c.distributions) {
            try {
                (void)parse_step_size_law(d);
            } catch (const DomainError& e) {
                throw UsageError(std::string("--dist: ") + e.what());
            }
        }
        break;
    case Subcommand::Fit:
        require(m, "input");
        require(m, "model");
        try {
            (void)scaling_model(c.model);
        } catch (const DomainError& e) {
            throw UsageError(std::string("--model: ") + e.what());
        }
        break;
    case Subcommand::Pmf:
        require(m, "r");
        if (c.r.size() != 1) throw UsageError("pmf takes a single --r");
        break;
    }
    return c;
}

} // namespace

ExperimentPlan CliConfig::experiment_plan() const {
    ExperimentPlan plan;
    for (auto nv : n) {
        for (auto rv : r) plan.grid.push_back({nv, rv});
    }
    plan.algorithms = algorithms;
    plan.operators = operators;
    plan.metric = metric;
    plan.target_policy = target;
    plan.start_policy = start;
    plan.replicates = replicates;
    plan.base_seed = seed.value_or(0);
    plan.iteration_cap = cap;
    plan.threads = threads;
    return plan;
}

CliConfig parse_args(std::span<const std::string> args) {
    CLI::App app{"Randomized search heuristics on r-valued OneMax functions", "rvea"};
    app.require_subcommand(1, 1);
    app.set_help_flag("-h,--help", "print help for every subcommand and exit");

    struct Slot {
        CLI::App* app;
        Settings values;
        std::string plan;
        std::string format = "csv";
        std::string out;
    };
    std::map<Subcommand, Slot> slots;
    for (const auto& [sub, specs] : option_table()) {
        auto& slot = slots[sub];
        slot.app = app.add_subcommand(subcommand_name(sub), subcommand_help(sub));
        slot.app->set_help_flag("-h,--help", "print this help and exit");
        for (const auto& spec : specs) {
            slot.app->add_option(std::string("--") + spec.key, slot.values[spec.key], spec.help)
                ->delimiter(',')
                ->allow_extra_args(false);
        }
        if (sub != Subcommand::Fit && sub != Subcommand::Pmf) {
            slot.app->add_option("--plan", slot.plan, "flat key-value plan file; inline flags override it");
        }
        slot.app->add_option("--format", slot.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        slot.app->add_option("--out", slot.out, "output path (default: standard output)");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto selected = app.get_subcommands();
        throw HelpRequested(selected.empty() ? app.help("", CLI::AppFormatMode::All) : selected.front()->help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (auto& [sub, slot] : slots) {
        if (!slot.app->parsed()) continue;
        Settings given;
        for (auto& [key, values] : slot.values) {
            if (slot.app->get_option("--" + key)->count() > 0) given[key] = values;
        }
        const auto format = slot.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        std::optional<std::string> out;
        if (slot.app->get_option("--out")->count() > 0) out = slot.out;
        std::optional<std::string> plan;
        if (slot.app->get_option_no_throw("--plan") && slot.app->get_option("--plan")->count() > 0) plan = slot.plan;
        return build_config(sub, std::move(plan), given, format, std::move(out));
    }
    throw UsageError("a subcommand is required");
}

namespace {

Table run_subcommand(const CliConfig& config, std::ostream& err) {
    const auto plan = config.experiment_plan();
    err << "rvea run: " << plan.grid.size() * plan.algorithms.size() * plan.operators.size() << " cell(s) x "
        << plan.replicates << " replicate(s)\n";
    const auto results = execute_plan(plan);
    for (const auto& a : results) {
        if (a.right_censored()) {
            err << "warning: cell n=" << a.n << " r=" << a.r << " " << to_string(a.algorithm) << "/"
                << to_string(a.op) << " is right-censored (" << a.capped_count << " of " << a.replicates
                << " runs capped)\n";
        }
    }
    return aggregate_table(results);
}

Table drift_subcommand(const CliConfig& config, std::ostream& err) {
    const SpaceParams params(config.n.front(), config.r.front());
    Rng target_rng(sub_seed(*config.seed, 0x7a));
    RunConfig run{.algorithm = config.algorithms.front(),
                  .op = config.operators.front(),
                  .instance = ProblemInstance(params, config.metric, make_target(config.target, params, target_rng)),
                  .seed = *config.seed,
                  .iteration_cap = config.cap,
                  .initial_point = std::nullopt,
                  .trace_potentials = {}};
    const auto conditioning = config.drift_mode == DriftConditioning::Mode::Planted
                                  ? DriftConditioning::planted(config.levels)
                                  : DriftConditioning::trajectory();
    err << "rvea drift: " << config.potential.name() << ", " << config.samples << " samples\n";
    const auto estimates = estimate_drift(run, config.potential, conditioning, config.samples, config.threads);
    std::vector<DriftRow> rows;
    for (const auto& e : estimates) {
        rows.push_back({params.n(), params.r(), run.algorithm, run.op, config.metric, config.potential.name(), e});
    }
    return drift_table(rows);
}

Table token_subcommand(const CliConfig& config, std::ostream& err) {
    std::vector<TokenRow> rows;
    std::uint64_t index = 0;
    for (auto r : config.r) {
        for (const auto& name : config.distributions) {
            TokenConfig tc{.r = r,
                           .distribution = parse_step_size_law(name),
                           .seed = sub_seed(*config.seed, index++),
                           .iteration_cap = config.cap,
                           .start = std::nullopt};
            err << "rvea token: r=" << r << " " << name << "\n";
            const auto records = token_batch(tc, config.replicates, config.threads);
            std::vector<double> times;
            std::size_t capped = 0;
            for (const auto& rec : records) {
                if (rec.capped()) {
                    ++capped;
                } else {
                    times.push_back(static_cast<double>(*rec.hitting_time));
                }
            }
            TokenRow row{r, name, std::nan(""), std::nan(""), std::nullopt, records.size(), capped};
            if (!times.empty()) {
                const auto summary = summarize_drops(0.0, times);
                row.mean = summary.mean_drop;
                row.std_error = summary.confidence_halfwidth / 1.959963984540054;
            }
            if (r <= kMaxExactTokenR) {
                try {
                    row.exact = token_expected_hitting_time_exact(r, tc.distribution);
                } catch (const DivergenceError&) {
                }
            }
            rows.push_back(row);
        }
    }
    return token_table(rows);
}

Table fit_subcommand(const CliConfig& config) {
    std::ifstream file(*config.input, std::ios::binary);
    if (!file) throw IoError("cannot open input '" + *config.input + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    const auto results = parse_aggregates(buffer.str());
    const auto fit = fit_scaling(results, scaling_model(config.model));
    return fit_table(fit, results.size());
}

} // namespace

int execute(const CliConfig& config, std::ostream& out, std::ostream& err) {
    Table table;
    switch (config.subcommand) {
    case Subcommand::Run: table = run_subcommand(config, err); break;
    case Subcommand::Drift: table = drift_subcommand(config, err); break;
    case Subcommand::Token: table = token_subcommand(config, err); break;
    case Subcommand::Fit: table = fit_subcommand(config); break;
    case Subcommand::Pmf: {
        const auto pmf = harmonic_pmf(config.r.front());
        table = pmf_table(pmf);
        break;
    }
    }
    emit_table(table, config.format, config.output, out);
    return kExitOk;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    try {
        const CliConfig config = parse_args(args);
        return execute(config, out, err);
    } catch (const HelpRequested& help) {
        out << help.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const DegeneracyError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitCapacity;
    }
}

} // namespace rvea::cli
