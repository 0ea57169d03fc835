#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditcc/fluid.hpp"
#include "banditcc/metrics.hpp"
#include "banditcc/netsim.hpp"

namespace banditcc {

inline constexpr Seconds kDeskDuration = 60.0;
inline constexpr Seconds kPaperDuration = 300.0;

enum class Scenario { fairness, competence, loss_sweep, fluid_sweep, single_run };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& text);

/// The nine bottleneck loss rates of the lossy-link sweep.
const std::vector<double>& loss_sweep_rates();

/// One simulation: topology, four flow algorithms, bottleneck loss, seed.
struct RunConfig {
    Scenario scenario = Scenario::single_run;
    int case_number = 1;  // 0 for a custom link table
    TopologyConfig topology;
    std::vector<std::string> algorithms;  // flow1..flow4
    double loss_rate = 0.0;
    std::uint64_t seed = 1;
    Seconds duration = kDeskDuration;

    std::string case_label() const;
    std::string algorithm_label() const;
    /// Stable hex digest of every parameter that affects the result.
    std::string config_hash() const;
};

/// Flows 1 and 2 on path1, flows 3 and 4 on path2.
std::vector<FlowConfig> dumbbell_flows(const std::vector<std::string>& algorithms, Seconds duration);

/// Expands 1, 2 or 4 names into the four flow algorithms. Two names alternate
/// (flow1/flow3 get the first, flow2/flow4 the second).
std::vector<std::string> expand_algorithms(const std::vector<std::string>& names);

struct RunSummary {
    std::string case_label;
    std::string algorithm;
    std::vector<FlowSummary> flows;
    std::vector<double> flow_mean_owd;  // seconds, per flow
    Seconds path1_mean_owd = 0.0;
    double jain = 0.0;
    std::optional<double> ratio;  // flow1 / flow2
    double utilization = 0.0;
    double loss_rate = 0.0;
    std::uint64_t seed = 0;
    std::string config_hash;
    double mean_action = 0.0;        // realized mean increase factor over learningcc flows
    std::uint64_t selections = 0;    // bandit decisions over learningcc flows
    std::uint64_t explorations = 0;
};

struct RunOutcome {
    RunConfig config;
    SimulationResult result;
    RunSummary summary;
};

RunSummary summarize_run(const RunConfig& config, const SimulationResult& result);
RunOutcome run_experiment(const RunConfig& config);

struct BatchError : std::runtime_error {
    BatchError(const std::string& what, std::size_t completed)
        : std::runtime_error(what), completed(completed) {}
    std::size_t completed;
};

/// Runs independent configurations, in parallel when `threads` > 1; output order follows input.
std::vector<RunOutcome> run_batch(const std::vector<RunConfig>& configs, unsigned threads = 0,
                                  const std::function<void(const RunOutcome&)>& on_done = {});

// ---------------------------------------------------------------- CSV

inline constexpr const char* kSummaryHeader =
    "case,algorithm,flow_id,rate_bps,mean_owd_ms,jain,ratio,utilization,loss_rate,seed,config_hash";

struct SummaryRow {
    std::string case_label;
    std::string algorithm;
    std::string flow_id;  // "all" for a run-level row
    double rate_bps = 0.0;
    double mean_owd_ms = 0.0;
    double jain = 0.0;
    std::optional<double> ratio;
    double utilization = 0.0;
    double loss_rate = 0.0;
    std::string seed;
    std::string config_hash;
};

/// Run-level row: mean per-flow rate, path1 mean one-way delay.
SummaryRow run_row(const RunSummary& s);
std::vector<SummaryRow> flow_rows(const RunSummary& s);

std::string format_row(const SummaryRow& row);
SummaryRow parse_row(const std::string& line);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

/// Arithmetic mean over rows sharing (case, algorithm, flow_id, loss_rate).
std::vector<SummaryRow> aggregate_over_seeds(const std::vector<SummaryRow>& rows);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// ---------------------------------------------------------------- config files

/// `key = value` lines; `#` starts a comment. Keys: scenario, case, l1..l5
/// ("Mbps,owd_ms,qdelay_ms"), algo or flow1..flow4, loss, seed or seeds
/// ("1..3" or "1,2,3"), duration.
std::vector<RunConfig> parse_config(std::istream& in);

std::vector<std::uint64_t> parse_seeds(const std::string& text);

// ---------------------------------------------------------------- fluid sweep

inline constexpr const char* kFluidHeader = "model,p,rtt_s,rtt_min_s,alpha_bar,x_equilibrium_pps";

struct FluidSweep {
    std::vector<double> p_values;
    std::vector<Seconds> rtts;
    std::vector<Seconds> rtt_mins;
    std::vector<double> alpha_bars;
};

FluidSweep default_fluid_sweep();
/// Grid rows; combinations with no real equilibrium are skipped.
void write_fluid_sweep(std::ostream& out, const FluidSweep& sweep);

}  // namespace banditcc
