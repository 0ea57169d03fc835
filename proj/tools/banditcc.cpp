#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "banditcc/experiment.hpp"

namespace fs = std::filesystem;
using namespace banditcc;

namespace {

constexpr int kUsageError = 2;

fs::path output_root(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("BANDITCC_OUT"); env && *env) return env;
    return "out";
}

std::string loss_tag(double loss) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", loss);
    return buf;
}

std::vector<int> parse_cases(const std::vector<std::string>& items) {
    std::vector<int> cases;
    for (const auto& item : items) {
        for (auto c : parse_seeds(item)) {
            if (c < 1 || c > 6) throw ConfigError("case must be 1..6 or custom, got " + std::to_string(c));
            cases.push_back(static_cast<int>(c));
        }
    }
    return cases;
}

std::vector<double> parse_losses(const std::vector<std::string>& items) {
    std::vector<double> losses;
    for (const auto& item : items) {
        std::stringstream in(item);
        std::string part;
        while (std::getline(in, part, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(part, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != part.size() || v < 0.0 || v > 1.0) {
                throw ConfigError("invalid loss rate '" + part + "' (expected a fraction in [0, 1])");
            }
            losses.push_back(v);
        }
    }
    return losses;
}

// Rows with a config hash produced by this invocation replace their old copies.
void merge_summary(const fs::path& path, const std::vector<SummaryRow>& fresh) {
    std::vector<SummaryRow> rows;
    if (fs::exists(path)) {
        std::ifstream in(path);
        try {
            rows = read_summary_csv(in);
        } catch (const ConfigError& e) {
            std::cerr << "warning: discarding unreadable " << path.string() << ": " << e.what() << '\n';
            rows.clear();
        }
    }
    std::erase_if(rows, [&](const SummaryRow& r) {
        return std::any_of(fresh.begin(), fresh.end(),
                           [&](const SummaryRow& f) { return f.config_hash == r.config_hash; });
    });
    rows.insert(rows.end(), fresh.begin(), fresh.end());
    std::ostringstream out;
    write_summary_csv(out, rows);
    write_file_atomic(path, out.str());
}

void write_rows(const fs::path& path, const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    write_summary_csv(out, rows);
    write_file_atomic(path, out.str());
}

std::vector<RunOutcome> execute(const std::vector<RunConfig>& configs, unsigned threads) {
    try {
        return run_batch(configs, threads);
    } catch (const BatchError& e) {
        std::cerr << "error: " << e.what() << '\n'
                  << "completed " << e.completed << " of " << configs.size() << " runs; no summary written\n";
        throw;
    }
}

struct RunOptions {
    std::string scenario = "single-run";
    std::vector<std::string> cases;
    std::vector<std::string> algos;
    std::vector<std::string> losses;
    std::string seeds = "1";
    double duration = kDeskDuration;
    bool paper_duration = false;
    std::string out;
    std::string config;
    unsigned threads = 0;
};

int write_fluid(const fs::path& path) {
    std::ostringstream out;
    write_fluid_sweep(out, default_fluid_sweep());
    write_file_atomic(path, out.str());
    std::cout << path.string() << '\n';
    return 0;
}

int cmd_run(const RunOptions& opt) {
    const fs::path root = output_root(opt.out);
    std::vector<RunConfig> configs;

    if (!opt.config.empty()) {
        std::ifstream in(opt.config);
        if (!in) throw ConfigError("cannot open config file " + opt.config);
        configs = parse_config(in);
    } else {
        const Scenario scenario = parse_scenario(opt.scenario);
        if (scenario == Scenario::fluid_sweep) {
            return write_fluid(root / "fluid-sweep" / "fluid.csv");
        }
        for (const auto& c : opt.cases) {
            if (c == "custom") throw ConfigError("a custom case needs --config with l1..l5");
        }
        const auto cases = parse_cases(opt.cases.empty() ? std::vector<std::string>{"1"} : opt.cases);
        const auto algorithms = expand_algorithms(opt.algos.empty() ? std::vector<std::string>{"learningcc"}
                                                                    : opt.algos);
        std::vector<double> losses = parse_losses(opt.losses);
        if (losses.empty()) {
            losses = scenario == Scenario::loss_sweep ? loss_sweep_rates() : std::vector<double>{0.0};
        }
        const auto seeds = parse_seeds(opt.seeds);
        const double duration = opt.paper_duration ? kPaperDuration : opt.duration;
        if (!(duration > 0.0)) throw ConfigError("duration must be positive");

        for (int c : cases) {
            for (double loss : losses) {
                for (auto seed : seeds) {
                    RunConfig r;
                    r.scenario = scenario;
                    r.case_number = c;
                    r.topology = TopologyConfig::table_case(c);
                    r.algorithms = algorithms;
                    r.loss_rate = loss;
                    r.seed = seed;
                    r.duration = duration;
                    configs.push_back(r);
                }
            }
        }
    }
    if (opt.paper_duration) {
        for (auto& c : configs) c.duration = kPaperDuration;
    }

    const auto outcomes = execute(configs, opt.threads);

    std::map<fs::path, std::vector<SummaryRow>> by_dir;
    for (const auto& o : outcomes) {
        const fs::path dir = root / to_string(o.config.scenario) / o.config.case_label();
        fs::create_directories(dir);
        for (const auto& trace : o.result.flows) {
            const std::string name = o.config.algorithm_label() + "_loss" + loss_tag(o.config.loss_rate) + "_seed" +
                                     std::to_string(o.config.seed) + "_flow" + std::to_string(trace.flow_id) +
                                     ".csv";
            std::ostringstream out;
            write_trace_csv(out, trace);
            write_file_atomic(dir / name, out.str());
        }
        by_dir[dir].push_back(run_row(o.summary));
    }
    for (const auto& [dir, rows] : by_dir) {
        merge_summary(dir / "summary.csv", rows);
        for (const auto& r : rows) std::cout << format_row(r) << '\n';
    }
    return 0;
}

struct SuiteOptions {
    std::string profile = "desk";
    int seeds = 3;
    double duration = 0.0;
    std::string out;
    unsigned threads = 0;
};

int cmd_suite(const SuiteOptions& opt) {
    const double duration = opt.duration > 0.0 ? opt.duration
                            : opt.profile == "paper" ? kPaperDuration
                                                     : kDeskDuration;
    if (opt.seeds < 1) throw ConfigError("--seeds must be at least 1");
    const fs::path root = output_root(opt.out) / "suite";

    struct Group {
        std::string figure;
        Scenario scenario;
        std::vector<std::vector<std::string>> algorithm_sets;
        std::vector<double> losses;
    };
    const std::vector<Group> groups{
        {"fairness", Scenario::fairness, {{"learningcc"}, {"reno"}, {"cubic"}}, {0.0}},
        {"ratio", Scenario::competence, {{"learningcc", "reno"}, {"learningcc", "cubic"}}, {0.0}},
        {"utilization", Scenario::loss_sweep, {{"learningcc"}, {"reno"}, {"cubic"}}, loss_sweep_rates()},
    };

    std::vector<RunConfig> configs;
    std::vector<std::size_t> group_of;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (int c = 1; c <= 6; ++c) {
            for (const auto& algos : groups[g].algorithm_sets) {
                for (double loss : groups[g].losses) {
                    for (int s = 1; s <= opt.seeds; ++s) {
                        RunConfig r;
                        r.scenario = groups[g].scenario;
                        r.case_number = c;
                        r.topology = TopologyConfig::table_case(c);
                        r.algorithms = expand_algorithms(algos);
                        r.loss_rate = loss;
                        r.seed = static_cast<std::uint64_t>(s);
                        r.duration = duration;
                        configs.push_back(r);
                        group_of.push_back(g);
                    }
                }
            }
        }
    }
    std::cerr << "suite: " << configs.size() << " runs of " << duration << " s\n";
    const auto outcomes = execute(configs, opt.threads);

    std::vector<std::vector<SummaryRow>> per_seed(groups.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) per_seed[group_of[i]].push_back(run_row(outcomes[i].summary));

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::string scenario = to_string(groups[g].scenario);
        write_rows(root / ("runs_" + scenario + ".csv"), per_seed[g]);
        const auto aggregate = aggregate_over_seeds(per_seed[g]);
        if (groups[g].scenario == Scenario::fairness) {
            write_rows(root / "fig_owd.csv", aggregate);
        }
        write_rows(root / ("fig_" + groups[g].figure + ".csv"), aggregate);
    }
    std::ostringstream fluid;
    write_fluid_sweep(fluid, default_fluid_sweep());
    write_file_atomic(root / "fig_fluid.csv", fluid.str());
    std::cout << root.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bandit congestion control experiments on a dumbbell simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Simulate one scenario and write traces plus summary.csv");
    run->add_option("--scenario", run_opt.scenario, "fairness, competence, loss-sweep, fluid-sweep or single-run")
        ->capture_default_str();
    run->add_option("--case", run_opt.cases, "Topology case 1..6; ranges like 1..6 are accepted");
    run->add_option("--algo", run_opt.algos, "Algorithm per flow; repeat for 2 (alternating) or 4 flows");
    run->add_option("--loss", run_opt.losses, "Bottleneck random loss rate(s), comma separated");
    run->add_option("--seed", run_opt.seeds, "Seed list: 1..5 or 1,2,3")->capture_default_str();
    run->add_option("--duration", run_opt.duration, "Simulated seconds")->capture_default_str();
    run->add_flag("--paper-duration", run_opt.paper_duration, "Use 300 s runs");
    run->add_option("--out", run_opt.out, "Output directory (default $BANDITCC_OUT or ./out)");
    run->add_option("--config", run_opt.config, "key = value run description file");
    run->add_option("--threads", run_opt.threads, "Worker threads (0 = all cores)");

    SuiteOptions suite_opt;
    auto* suite = app.add_subcommand("suite", "Run every figure scenario and write aggregate CSVs");
    suite->add_option("--profile", suite_opt.profile, "desk (60 s) or paper (300 s)")
        ->check(CLI::IsMember({"desk", "paper"}))
        ->capture_default_str();
    suite->add_option("--seeds", suite_opt.seeds, "Seeds per configuration")->capture_default_str();
    suite->add_option("--duration", suite_opt.duration, "Override the profile duration");
    suite->add_option("--out", suite_opt.out, "Output directory (default $BANDITCC_OUT or ./out)");
    suite->add_option("--threads", suite_opt.threads, "Worker threads (0 = all cores)");

    std::string fluid_out;
    auto* fluid = app.add_subcommand("fluid", "Write the fluid-model equilibrium sweep");
    fluid->add_option("--out", fluid_out, "CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*run) return cmd_run(run_opt);
        if (*suite) return cmd_suite(suite_opt);
        if (*fluid) {
            if (fluid_out.empty()) {
                write_fluid_sweep(std::cout, default_fluid_sweep());
                return 0;
            }
            return write_fluid(fluid_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const BatchError&) {
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
