#include "wpcn/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "wpcn/analytic.hpp"
#include "wpcn/engine.hpp"
#include "wpcn/error.hpp"
#include "wpcn/policies.hpp"
#include "wpcn/report.hpp"
#include "wpcn/sweep.hpp"

namespace wpcn {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliOptions {
    ScenarioConfig scenario;
    std::vector<std::string> policies;
    std::vector<double> rate_grid;
    std::string axis = "rate_target";
    std::vector<double> axis_values;
    std::vector<std::size_t> m_values;
    std::uint64_t slots = 1'000'000;
    std::size_t replications = 4;
    std::string seed = "20160518";
    std::uint64_t warmup = 0;
    int threads = 0;
    std::string output;
    std::string format = "csv";
    std::string trace;
    int figure = 0;
    std::size_t n_available = 1;
};

std::uint64_t resolve_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) | rd();
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("seed must be an unsigned integer or 'random', got '" + text + "'");
    }
    return value;
}

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
    }
    return p;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!file) throw IoError("cannot open output file '" + path.string() + "' for writing");
    return file;
}

void emit_points(const CliOptions& o, const std::vector<CurvePoint>& points, std::ostream& out) {
    auto write = [&](std::ostream& os, const std::string& format) {
        if (format == "csv") {
            write_csv(os, points);
        } else if (format == "json-lines") {
            write_json_lines(os, points);
        } else {
            write_gnuplot(os, points);
        }
    };
    if (o.output.empty()) {
        write(out, o.format);
        return;
    }
    const auto path = resolve_output(o.output);
    {
        auto file = open_output(path);
        write(file, o.format);
        if (!file) throw IoError("failed writing '" + path.string() + "'");
    }
    // Plot-ready companion next to tabular output.
    if (o.format != "gnuplot") {
        auto dat_path = path;
        dat_path.replace_extension(".dat");
        auto file = open_output(dat_path);
        write(file, "gnuplot");
    }
}

std::vector<PolicyId> parse_policies(const std::vector<std::string>& names) {
    std::vector<PolicyId> ids;
    for (const auto& n : names) ids.push_back(parse_policy(n));
    return ids;
}

std::vector<double> rate_grid_or_default(const CliOptions& o) {
    return o.rate_grid.empty() ? default_rate_grid() : o.rate_grid;
}

SweepSpec base_spec(const CliOptions& o) {
    SweepSpec spec;
    spec.base_params = o.scenario.to_params();
    spec.slots_per_point = o.slots;
    spec.replications = o.replications;
    spec.base_seed = resolve_seed(o.seed);
    spec.warmup = o.warmup;
    spec.axis_values = rate_grid_or_default(o);
    return spec;
}

std::vector<CurvePoint> run_specs(const std::vector<SweepSpec>& specs, int threads) {
    for (const auto& s : specs) validate(s);
    std::vector<CurvePoint> all;
    for (const auto& s : specs) {
        auto points = run_sweep(s, threads);
        all.insert(all.end(), points.begin(), points.end());
    }
    return all;
}

// Preset sweeps mirroring the published figures. Caller-supplied --slots,
// --replications, --seed, --rate-grid and --threads still apply.
std::vector<SweepSpec> figure_specs(const CliOptions& o, bool m_given) {
    SweepSpec spec = base_spec(o);
    spec.base_params.n_relays = 10;
    spec.base_params.source_power = dbw_to_watts(10.0);
    spec.base_params.fixed_relay_power = dbw_to_watts(10.0);
    spec.base_params.noise_power = 1.0;
    spec.base_params.slot_duration = 1.0;
    spec.base_params.decode_set_cap = 1;
    spec.axis = SweepAxis::RateTarget;

    std::vector<SweepSpec> specs;
    auto add = [&](std::vector<PolicyId> ids, std::size_t n, std::size_t m) {
        SweepSpec s = spec;
        s.policy_ids = std::move(ids);
        s.base_params.n_relays = n;
        s.base_params.decode_set_cap = m;
        specs.push_back(std::move(s));
    };
    const std::size_t mrs_m = m_given ? o.scenario.decode_set_cap : 3;

    switch (o.figure) {
        case 2:
            spec.base_params.harvest_efficiency = 0.7;
            for (std::size_t n : {1, 3, 5, 7, 10}) add({PolicyId::SrsNcsi}, n, 1);
            break;
        case 3:
            spec.base_params.harvest_efficiency = 0.1;
            add({PolicyId::SrsNcsi, PolicyId::SrsBestEnergy, PolicyId::SrsBestDecoding}, 10, 1);
            break;
        case 4:
            spec.base_params.harvest_efficiency = 0.1;
            for (std::size_t m = 1; m <= 6; ++m) add({PolicyId::MrsAcsi}, 10, m);
            break;
        case 5:
            spec.base_params.harvest_efficiency = 0.1;
            add({PolicyId::MrsAcsi}, 10, mrs_m);
            add({PolicyId::SrsBestEnergyCsit, PolicyId::SrsBestDecodingCsit}, 10, 1);
            break;
        case 6:
            spec.base_params.harvest_efficiency = 0.1;
            add({PolicyId::MrsAcsi}, 10, mrs_m);
            add({PolicyId::MrsBestEnergy}, 10, 5);
            break;
        default:
            throw ConfigError("figure must be one of 2, 3, 4, 5, 6");
    }
    return specs;
}

void add_scenario_options(CLI::App& app, CliOptions& o) {
    auto& s = o.scenario;
    app.add_option("--n-relays", s.n_relays, "Number of relays N")->capture_default_str();
    app.add_option("--m", s.decode_set_cap, "Decode set cap M (two-phase policies)")->capture_default_str();
    app.add_option("--eta", s.eta, "Energy harvesting efficiency")->capture_default_str();
    app.add_option("--rate", s.rate, "Target rate R in bit/s/Hz")->capture_default_str();
    app.add_option("--ps-dbw", s.ps_dbw, "Source power in dBW")->capture_default_str();
    app.add_option("--pr-dbw", s.pr_dbw, "Fixed relay power in dBW")->capture_default_str();
    app.add_option("--noise", s.noise, "Noise power in W")->capture_default_str();
    app.add_option("--slot", s.slot, "Slot duration in s")->capture_default_str();
    app.add_option("--distance", s.distance, "Hop distance in m")->capture_default_str();
    app.add_option("--path-loss-exp", s.path_loss_exp, "Path loss exponent")->capture_default_str();
    app.add_option("--slots", o.slots, "Slots per run")->capture_default_str();
    app.add_option("--replications", o.replications, "Independent runs per sweep point")->capture_default_str();
    app.add_option("--seed", o.seed, "Base seed, or 'random'")->capture_default_str();
    app.add_option("--warmup", o.warmup, "Packets from the first slots that are not counted")
        ->capture_default_str();
    app.add_option("--threads", o.threads, "Worker threads for sweeps (0 = OpenMP default)")
        ->capture_default_str();
    app.add_option("--output", o.output, "Output file (default: stdout)");
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json-lines", "gnuplot"}))
        ->capture_default_str();
    app.add_option("--rate-grid", o.rate_grid, "Comma separated rate grid")->delimiter(',');
    app.add_option("--policy", o.policies, "Policy id(s), comma separated")->delimiter(',');
}

void print_floor(const CliOptions& o, std::ostream& out) {
    const auto& s = o.scenario;
    const OutageFloor f = grid_powered_outage(s.rate, dbw_to_watts(s.ps_dbw), dbw_to_watts(s.pr_dbw), s.noise,
                                              o.n_available);
    out << std::fixed << std::setprecision(5) << "single_relay " << f.single_relay << '\n'
        << "n_relay_floor " << f.n_relay_floor << '\n';
    out.unsetf(std::ios::floatfield);
}

}  // namespace

SystemParams ScenarioConfig::to_params() const {
    SystemParams p;
    p.n_relays = n_relays;
    p.decode_set_cap = decode_set_cap;
    p.harvest_efficiency = eta;
    p.rate_target = rate;
    p.source_power = dbw_to_watts(ps_dbw);
    p.fixed_relay_power = dbw_to_watts(pr_dbw);
    p.noise_power = noise;
    p.slot_duration = slot;
    p.distance = distance;
    p.path_loss_exp = path_loss_exp;
    validate(p);
    return p;
}

std::vector<double> default_rate_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k) grid.push_back(0.25 * k);
    return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliOptions o;
    CLI::App app{"Monte Carlo outage simulator for energy-harvesting relay selection", "wpcn_sim"};
    app.set_config("--config", "", "Flat key = value scenario file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();
    add_scenario_options(app, o);

    auto* simulate_cmd = app.add_subcommand("simulate", "Single run, printed as a JSON object");
    simulate_cmd->add_option("--trace", o.trace, "Write a per-slot JSON-lines trace to this file");

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one axis for one or more policies");
    sweep_cmd->add_option("--axis", o.axis, "rate_target, n_relays or decode_set_cap")->capture_default_str();
    sweep_cmd->add_option("--values", o.axis_values, "Axis values for count axes")->delimiter(',');

    auto* optimize_cmd = app.add_subcommand("optimize-m", "Search the decode set cap minimising outage");
    optimize_cmd->add_option("--m-values", o.m_values, "Candidate M values (default 1..N)")->delimiter(',');

    auto* floor_cmd = app.add_subcommand("floor", "Grid-powered analytic outage floor");
    floor_cmd->add_option("--n", o.n_available, "Relays available for decoding")->capture_default_str();

    auto* figure_cmd = app.add_subcommand("figure", "Preset sweep reproducing one figure (2-6)");
    figure_cmd->add_option("figure", o.figure, "Figure number")->required()->check(CLI::Range(2, 6));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*simulate_cmd) {
            const SystemParams params = o.scenario.to_params();
            if (o.policies.size() > 1) throw ConfigError("simulate takes exactly one --policy");
            const PolicyId policy = parse_policy(o.policies.empty() ? "srs-ncsi" : o.policies.front());
            const std::uint64_t seed = resolve_seed(o.seed);
            Trace trace;
            SimOptions options;
            options.warmup = o.warmup;
            std::optional<std::ofstream> trace_file;
            if (!o.trace.empty()) {
                trace_file = open_output(resolve_output(o.trace));
                options.trace = &trace;
            }
            const SimResult result = simulate(params, policy, o.slots, seed, options);
            const std::string text = to_json(result, params, policy);
            if (o.output.empty()) {
                out << text << '\n';
            } else {
                auto file = open_output(resolve_output(o.output));
                file << text << '\n';
            }
            if (trace_file) write_trace_jsonl(*trace_file, trace);
        } else if (*sweep_cmd) {
            SweepSpec spec = base_spec(o);
            spec.axis = parse_axis(o.axis);
            if (spec.axis != SweepAxis::RateTarget) {
                if (o.axis_values.empty()) throw ConfigError("--values is required for axis " + o.axis);
                spec.axis_values = o.axis_values;
            }
            spec.policy_ids = parse_policies(o.policies.empty() ? std::vector<std::string>{"srs-ncsi"} : o.policies);
            emit_points(o, run_specs({spec}, o.threads), out);
        } else if (*optimize_cmd) {
            const SystemParams params = o.scenario.to_params();
            const PolicyId policy = parse_policy(o.policies.empty() ? "mrs-acsi" : o.policies.front());
            std::vector<std::size_t> ms = o.m_values;
            if (ms.empty()) {
                for (std::size_t m = 1; m <= params.n_relays; ++m) ms.push_back(m);
            }
            const MOptimum best = optimize_m(params, ms, params.rate_target, o.slots, resolve_seed(o.seed), policy,
                                             o.replications, o.threads);
            out << "best_m " << best.best_m << " outage_prob " << format_double(best.outage_prob) << " ci95 "
                << format_double(best.ci95) << '\n';
            emit_points(o, best.profile, out);
        } else if (*floor_cmd) {
            print_floor(o, out);
        } else if (*figure_cmd) {
            const bool m_given = app.count("--m") > 0;
            if (o.output.empty() && std::getenv(kOutputDirEnv)) {
                o.output = "figure" + std::to_string(o.figure) + ".csv";
            }
            emit_points(o, run_specs(figure_specs(o, m_given), o.threads), out);
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const IoError& e) {
        err << "output error: " << e.what() << '\n';
        return kExitIoError;
    }
    return 0;
}

}  // namespace wpcn
