#include "banditcc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace banditcc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid " + what + ": '" + text + "'");
    }
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::fairness: return "fairness";
        case Scenario::competence: return "competence";
        case Scenario::loss_sweep: return "loss-sweep";
        case Scenario::fluid_sweep: return "fluid-sweep";
        case Scenario::single_run: return "single-run";
    }
    return "single-run";
}

Scenario parse_scenario(const std::string& text) {
    for (auto s : {Scenario::fairness, Scenario::competence, Scenario::loss_sweep, Scenario::fluid_sweep,
                   Scenario::single_run}) {
        if (to_string(s) == text) return s;
    }
    throw ConfigError("unknown scenario '" + text +
                      "' (valid: fairness, competence, loss-sweep, fluid-sweep, single-run)");
}

const std::vector<double>& loss_sweep_rates() {
    static const std::vector<double> rates{0.01, 0.015, 0.02, 0.025, 0.03, 0.035, 0.04, 0.045, 0.05};
    return rates;
}

// ---------------------------------------------------------------- runs

std::string RunConfig::case_label() const {
    return case_number > 0 ? std::to_string(case_number) : "custom";
}

std::string RunConfig::algorithm_label() const {
    if (algorithms.empty()) return "none";
    const bool uniform = std::all_of(algorithms.begin(), algorithms.end(),
                                     [&](const std::string& a) { return a == algorithms.front(); });
    if (uniform) return algorithms.front();
    if (algorithms.size() == 4 && algorithms[0] == algorithms[2] && algorithms[1] == algorithms[3]) {
        return algorithms[0] + "-vs-" + algorithms[1];
    }
    std::string label;
    for (const auto& a : algorithms) label += (label.empty() ? "" : "+") + a;
    return label;
}

std::string RunConfig::config_hash() const {
    std::string canon = "case=" + case_label() + ";";
    for (const auto& l : topology.links) {
        canon += l.name + "=" + fmt("%.9g", l.config.bandwidth_bps) + "," + fmt("%.9g", l.config.owd) + "," +
                 fmt("%.9g", l.config.qdelay) + ";";
    }
    for (const auto& a : algorithms) canon += a + ";";
    canon += "loss=" + fmt("%.9g", loss_rate) + ";seed=" + std::to_string(seed) +
             ";duration=" + fmt("%.9g", duration);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canon));
    return buf;
}

std::vector<std::string> expand_algorithms(const std::vector<std::string>& names) {
    for (const auto& n : names) {
        if (std::find(algorithm_names().begin(), algorithm_names().end(), n) == algorithm_names().end()) {
            make_controller(n, 1);  // throws with the list of valid names
        }
    }
    switch (names.size()) {
        case 1: return {names[0], names[0], names[0], names[0]};
        case 2: return {names[0], names[1], names[0], names[1]};
        case 4: return names;
        default:
            throw ConfigError("expected 1, 2 or 4 algorithms, got " + std::to_string(names.size()));
    }
}

std::vector<FlowConfig> dumbbell_flows(const std::vector<std::string>& algorithms, Seconds duration) {
    std::vector<FlowConfig> flows;
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        FlowConfig f;
        f.flow_id = static_cast<int>(i) + 1;
        f.path = i < 2 ? 1 : 2;
        f.algorithm = algorithms[i];
        f.start_time = 0.0;
        f.duration = duration;
        flows.push_back(f);
    }
    return flows;
}

RunSummary summarize_run(const RunConfig& config, const SimulationResult& result) {
    RunSummary s;
    s.case_label = config.case_label();
    s.algorithm = config.algorithm_label();
    s.loss_rate = config.loss_rate;
    s.seed = config.seed;
    s.config_hash = config.config_hash();

    std::vector<double> rates;
    std::vector<FlowTrace> path1;
    double action_sum = 0.0;
    for (const auto& trace : result.flows) {
        s.flows.push_back(summarize(trace, config.duration));
        s.flow_mean_owd.push_back(s.flows.back().mean_owd);
        rates.push_back(s.flows.back().rate);
        if (trace.path == 1) path1.push_back(trace);
        if (trace.bandit) {
            static const std::vector<int> table{1, 2, 3, 4, 5};
            action_sum += trace.bandit->mean_action(table) * static_cast<double>(trace.bandit->selections);
            s.selections += trace.bandit->selections;
            s.explorations += trace.bandit->explorations;
        }
    }
    s.mean_action = s.selections ? action_sum / static_cast<double>(s.selections) : 0.0;
    if (!rates.empty()) {
        s.jain = jain_index(rates);
    }
    if (rates.size() >= 2) {
        s.ratio = throughput_ratio(rates[0], rates[1]);
    }
    s.path1_mean_owd = path1.empty() ? 0.0 : average_owd(std::span<const FlowTrace>(path1));
    const double capacity = config.topology.link(config.topology.bottleneck).config.bandwidth_bps / 8.0;
    s.utilization = channel_utilization(std::span<const FlowTrace>(result.flows), capacity, config.duration);
    return s;
}

RunOutcome run_experiment(const RunConfig& config) {
    RunConfig cfg = config;
    cfg.topology.set_bottleneck_loss(cfg.loss_rate);
    RunOutcome outcome;
    outcome.result = run_simulation(cfg.topology, dumbbell_flows(cfg.algorithms, cfg.duration), cfg.seed,
                                    cfg.duration);
    outcome.summary = summarize_run(cfg, outcome.result);
    outcome.config = std::move(cfg);
    return outcome;
}

std::vector<RunOutcome> run_batch(const std::vector<RunConfig>& configs, unsigned threads,
                                  const std::function<void(const RunOutcome&)>& on_done) {
    std::vector<RunOutcome> outcomes(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, configs.size())));

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                outcomes[i] = run_experiment(configs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    const auto failed = std::count_if(errors.begin(), errors.end(), [](const auto& e) { return e != nullptr; });
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (!errors[i]) continue;
        std::string what = "run failed";
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            what = e.what();
        }
        throw BatchError("run " + std::to_string(i + 1) + " (case " + configs[i].case_label() + ", " +
                             configs[i].algorithm_label() + ", seed " + std::to_string(configs[i].seed) +
                             "): " + what,
                         configs.size() - static_cast<std::size_t>(failed));
    }
    if (on_done) {
        for (const auto& o : outcomes) on_done(o);
    }
    return outcomes;
}

// ---------------------------------------------------------------- CSV

SummaryRow run_row(const RunSummary& s) {
    SummaryRow row;
    row.case_label = s.case_label;
    row.algorithm = s.algorithm;
    row.flow_id = "all";
    double sum = 0.0;
    for (const auto& f : s.flows) sum += f.rate;
    row.rate_bps = s.flows.empty() ? 0.0 : 8.0 * sum / static_cast<double>(s.flows.size());
    row.mean_owd_ms = 1e3 * s.path1_mean_owd;
    row.jain = s.jain;
    row.ratio = s.ratio;
    row.utilization = s.utilization;
    row.loss_rate = s.loss_rate;
    row.seed = std::to_string(s.seed);
    row.config_hash = s.config_hash;
    return row;
}

std::vector<SummaryRow> flow_rows(const RunSummary& s) {
    std::vector<SummaryRow> rows;
    for (std::size_t i = 0; i < s.flows.size(); ++i) {
        SummaryRow row = run_row(s);
        row.flow_id = std::to_string(s.flows[i].flow_id);
        row.rate_bps = 8.0 * s.flows[i].rate;
        row.mean_owd_ms = 1e3 * s.flow_mean_owd[i];
        rows.push_back(row);
    }
    return rows;
}

std::string format_row(const SummaryRow& r) {
    std::string line = r.case_label + "," + r.algorithm + "," + r.flow_id + ",";
    line += fmt("%.3f", r.rate_bps) + "," + fmt("%.6f", r.mean_owd_ms) + "," + fmt("%.6f", r.jain) + ",";
    line += (r.ratio ? fmt("%.6f", *r.ratio) : std::string("starved")) + ",";
    line += fmt("%.6f", r.utilization) + "," + fmt("%.4f", r.loss_rate) + "," + r.seed + "," + r.config_hash;
    return line;
}

SummaryRow parse_row(const std::string& line) {
    const auto f = split(line, ',');
    if (f.size() != 11) {
        throw ConfigError("summary CSV: expected 11 fields in '" + line + "'");
    }
    SummaryRow r;
    r.case_label = f[0];
    r.algorithm = f[1];
    r.flow_id = f[2];
    r.rate_bps = parse_double(f[3], "rate_bps");
    r.mean_owd_ms = parse_double(f[4], "mean_owd_ms");
    r.jain = parse_double(f[5], "jain");
    if (f[6] != "starved") r.ratio = parse_double(f[6], "ratio");
    r.utilization = parse_double(f[7], "utilization");
    r.loss_rate = parse_double(f[8], "loss_rate");
    r.seed = f[9];
    r.config_hash = f[10];
    return r;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << kSummaryHeader << '\n';
    for (const auto& r : rows) out << format_row(r) << '\n';
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != kSummaryHeader) {
        throw ConfigError("summary CSV: unexpected header");
    }
    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) rows.push_back(parse_row(trim(line)));
    }
    return rows;
}

std::vector<SummaryRow> aggregate_over_seeds(const std::vector<SummaryRow>& rows) {
    struct Acc {
        SummaryRow row;
        std::size_t n = 0;
        std::size_t ratio_n = 0;
        double ratio_sum = 0.0;
        std::string seeds;
        std::string hashes;
    };
    std::vector<std::string> order;
    std::map<std::string, Acc> groups;
    for (const auto& r : rows) {
        const std::string key = r.case_label + "|" + r.algorithm + "|" + r.flow_id + "|" + fmt("%.6f", r.loss_rate);
        auto [it, inserted] = groups.try_emplace(key);
        Acc& acc = it->second;
        if (inserted) {
            order.push_back(key);
            acc.row = r;
            acc.row.rate_bps = acc.row.mean_owd_ms = acc.row.jain = acc.row.utilization = 0.0;
        }
        ++acc.n;
        acc.row.rate_bps += r.rate_bps;
        acc.row.mean_owd_ms += r.mean_owd_ms;
        acc.row.jain += r.jain;
        acc.row.utilization += r.utilization;
        if (r.ratio) {
            acc.ratio_sum += *r.ratio;
            ++acc.ratio_n;
        }
        acc.seeds += (acc.seeds.empty() ? "" : ";") + r.seed;
        acc.hashes += r.config_hash;
    }
    std::vector<SummaryRow> out;
    for (const auto& key : order) {
        Acc& acc = groups[key];
        const auto n = static_cast<double>(acc.n);
        SummaryRow r = acc.row;
        r.rate_bps /= n;
        r.mean_owd_ms /= n;
        r.jain /= n;
        r.utilization /= n;
        r.ratio = acc.ratio_n ? std::optional<double>(acc.ratio_sum / static_cast<double>(acc.ratio_n))
                              : std::nullopt;
        r.seed = acc.seeds;
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(acc.hashes));
        r.config_hash = buf;
        out.push_back(r);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------- config files

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) continue;
        const auto dots = part.find("..");
        try {
            if (dots == std::string::npos) {
                seeds.push_back(std::stoull(part));
            } else {
                const auto lo = std::stoull(part.substr(0, dots));
                const auto hi = std::stoull(part.substr(dots + 2));
                if (hi < lo) throw ConfigError("empty seed range " + part);
                for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("invalid seed '" + part + "'");
        }
    }
    if (seeds.empty()) throw ConfigError("no seeds given");
    return seeds;
}

std::vector<RunConfig> parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    const auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    RunConfig base;
    base.scenario = parse_scenario(take("scenario").value_or("single-run"));
    const std::string case_text = take("case").value_or("1");
    if (case_text == "custom") {
        std::array<LinkConfig, 5> links;
        for (int i = 0; i < 5; ++i) {
            const std::string key = "l" + std::to_string(i + 1);
            const auto v = take(key);
            if (!v) throw ConfigError("custom case requires link " + key);
            const auto f = split(*v, ',');
            if (f.size() != 3) throw ConfigError("link " + key + ": expected Mbps,owd_ms,qdelay_ms");
            links[static_cast<std::size_t>(i)] = LinkConfig::from_table(
                parse_double(f[0], key + " bandwidth"), parse_double(f[1], key + " owd"),
                parse_double(f[2], key + " qdelay"));
        }
        base.case_number = 0;
        base.topology = TopologyConfig::dumbbell(links);
    } else {
        base.case_number = static_cast<int>(parse_double(case_text, "case"));
        base.topology = TopologyConfig::table_case(base.case_number);
    }

    std::vector<std::string> algos;
    if (const auto a = take("algo")) {
        algos = split(*a, ',');
    } else {
        for (int i = 1; i <= 4; ++i) {
            if (const auto f = take("flow" + std::to_string(i))) algos.push_back(*f);
        }
    }
    if (algos.empty()) algos = {"learningcc"};
    base.algorithms = expand_algorithms(algos);

    base.duration = parse_double(take("duration").value_or("60"), "duration");
    if (!(base.duration > 0.0)) throw ConfigError("duration must be positive");

    std::vector<double> losses;
    for (const auto& l : split(take("loss").value_or("0"), ',')) {
        const double v = parse_double(l, "loss");
        if (v < 0.0 || v > 1.0) throw ConfigError("loss rate must lie in [0, 1]");
        losses.push_back(v);
    }
    std::string seed_text = take("seeds").value_or("");
    if (const auto s = take("seed")) seed_text = *s;
    const auto seeds = parse_seeds(seed_text.empty() ? "1" : seed_text);

    if (!kv.empty()) {
        throw ConfigError("unknown config key '" + kv.begin()->first + "'");
    }
    base.topology.validate();

    std::vector<RunConfig> runs;
    for (double loss : losses) {
        for (auto seed : seeds) {
            RunConfig r = base;
            r.loss_rate = loss;
            r.seed = seed;
            runs.push_back(r);
        }
    }
    return runs;
}

// ---------------------------------------------------------------- fluid sweep

FluidSweep default_fluid_sweep() {
    FluidSweep s;
    s.p_values = {0.001, 0.005, 0.01, 0.02, 0.035, 0.05, 0.1};
    s.rtts = {0.04, 0.08, 0.12};
    s.rtt_mins = {0.02, 0.04};
    s.alpha_bars = {1.0, 1.1, 2.0, 3.0};
    return s;
}

void write_fluid_sweep(std::ostream& out, const FluidSweep& sweep) {
    out << kFluidHeader << '\n';
    char line[200];
    for (double p : sweep.p_values) {
        for (double rtt : sweep.rtts) {
            for (double rtt_min : sweep.rtt_mins) {
                if (rtt_min > rtt) continue;
                fluid::FluidParams params;
                params.p = p;
                params.rtt = rtt;
                params.rtt_min = rtt_min;
                const double reno = fluid::reno_equilibrium(params);
                std::snprintf(line, sizeof line, "reno,%g,%g,%g,%g,%.6f\n", p, rtt, rtt_min, 1.0, reno);
                out << line;
                for (double a : sweep.alpha_bars) {
                    params.alpha_bar = a;
                    const double x = fluid::learningcc_equilibrium(params);
                    std::snprintf(line, sizeof line, "learningcc,%g,%g,%g,%g,%.6f\n", p, rtt, rtt_min, a, x);
                    out << line;
                }
            }
        }
    }
}

}  // namespace banditcc
