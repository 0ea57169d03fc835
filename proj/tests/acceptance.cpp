// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion with
// the measured values underneath, and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "banditcc/experiment.hpp"

using namespace banditcc;

namespace {

using Clock = std::chrono::steady_clock;

constexpr Seconds kDuration = 60.0;
constexpr int kSeeds = 3;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void expect(bool ok, const std::string& what) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
    }
    void note(const std::string& what) { details.push_back("     " + what); }
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

bool rel_close(double actual, double expected, double tol = 1e-9) {
    return std::fabs(actual - expected) <= tol * std::fabs(expected);
}

RunConfig make_run(int case_number, const std::vector<std::string>& algos, double loss, std::uint64_t seed,
                   Seconds duration = kDuration) {
    RunConfig r;
    r.case_number = case_number;
    r.topology = TopologyConfig::table_case(case_number);
    r.algorithms = expand_algorithms(algos);
    r.loss_rate = loss;
    r.seed = seed;
    r.duration = duration;
    return r;
}

// Seed-averaged summaries for every case, keyed by algorithm label.
struct CaseMeans {
    double utilization = 0.0;
    double owd_ms = 0.0;
    double jain = 0.0;
    double ratio = 0.0;
    int starved = 0;
};

std::map<std::string, std::vector<CaseMeans>> run_matrix(const std::vector<std::vector<std::string>>& algo_sets,
                                                         double loss) {
    std::vector<RunConfig> configs;
    for (const auto& algos : algo_sets) {
        for (int c = 1; c <= 6; ++c) {
            for (int s = 1; s <= kSeeds; ++s) configs.push_back(make_run(c, algos, loss, static_cast<std::uint64_t>(s)));
        }
    }
    const auto outcomes = run_batch(configs);
    std::map<std::string, std::vector<CaseMeans>> out;
    for (const auto& o : outcomes) {
        auto& cases = out[o.summary.algorithm];
        cases.resize(6);
        auto& m = cases[static_cast<std::size_t>(o.config.case_number - 1)];
        m.utilization += o.summary.utilization / kSeeds;
        m.owd_ms += 1e3 * o.summary.path1_mean_owd / kSeeds;
        m.jain += o.summary.jain / kSeeds;
        if (o.summary.ratio) {
            m.ratio += *o.summary.ratio / kSeeds;
        } else {
            ++m.starved;
        }
    }
    return out;
}

std::string traces_and_summary(const RunOutcome& o) {
    std::ostringstream out;
    for (const auto& f : o.result.flows) write_trace_csv(out, f);
    write_summary_csv(out, {run_row(o.summary)});
    write_summary_csv(out, flow_rows(o.summary));
    return out.str();
}

// ---------------------------------------------------------------- criteria

Outcome formula_suite() {
    Outcome r;
    const auto t0 = Clock::now();

    LearningCc a;
    r.expect(rel_close(a.update_srtt(0.080), 0.080), "srtt first sample 0.080");
    LearningCc b;
    b.mutable_state().srtt = 0.100;
    r.expect(rel_close(b.update_srtt(0.060), 0.095), "srtt 0.100 then 0.060 -> 0.095");

    const auto threshold = [](double base, double max) {
        LearningCc cc;
        cc.mutable_state().srtt = 0.1;
        cc.mutable_state().rtt_base = base;
        cc.mutable_state().srtt_max = max;
        return cc.rtt_threshold();
    };
    r.expect(rel_close(threshold(0.050, 0.100), 0.090), "threshold 0.050/0.100 -> 0.090");
    r.expect(rel_close(threshold(0.040, 0.040), 0.040), "threshold 0.040/0.040 -> 0.040");
    r.expect(rel_close(threshold(0.030, 0.130), 0.110), "threshold 0.030/0.130 -> 0.110");

    r.expect(rel_close(instant_reward(2.5e6, 0.05), 5.0e7), "reward 2.5e6 B/s at 0.05 s -> 5e7");

    LearningCc c;
    c.update_reward(0, 1.0e6);
    r.expect(rel_close(c.update_reward(0, 2.0e6), 1.85e6), "smoothed reward 1e6, 2e6 -> 1.85e6");
    r.expect(rel_close(c.update_reward(3, 4.2e6), 4.2e6), "first reward 4.2e6 kept");

    LearningCc d;
    d.add_rate_sample(0.0, 1.25e6);
    d.mutable_state().rtt_min = 0.040;
    AckEvent loss;
    loss.acked_sequence = 1;
    loss.largest_sent = 10;
    loss.rtt_sample = 0.05;
    loss.has_loss = true;
    d.congestion_window_backoff(loss);
    r.expect(rel_close(d.state().cwnd_, 45000.0), "backoff 0.9 * 1.25e6 * 0.040 -> 45000 B");

    const std::vector<double> fair{1, 1, 1, 1}, one{1, 0, 0, 0}, mixed{2, 1, 1, 0};
    r.expect(rel_close(jain_index(fair), 1.0), "jain (1,1,1,1) -> 1");
    r.expect(rel_close(jain_index(one), 0.25), "jain (1,0,0,0) -> 0.25");
    r.expect(rel_close(jain_index(mixed), 16.0 / 24.0), "jain (2,1,1,0) -> 2/3");

    r.expect(rel_close(channel_utilization_bytes(168'750'000, 625'000.0, 300.0), 0.90), "utilization -> 0.90");

    fluid::FluidParams f;
    f.p = 0.01;
    f.rtt = 0.1;
    r.expect(rel_close(fluid::reno_equilibrium(f), 10.0 * std::sqrt(198.0)), "reno x* -> 140.71");
    f.rtt = 0.08;
    f.rtt_min = 0.04;
    f.alpha_bar = 3.0;
    r.expect(rel_close(fluid::learningcc_equilibrium(f), std::sqrt(297.0) / std::sqrt(0.08 * 0.044)),
             "learningcc x* -> 290.5");

    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    r.expect(ms < 1000.0, fmt("runtime %.2f ms < 1 s", ms));
    return r;
}

Outcome determinism() {
    Outcome r;
    const auto t0 = Clock::now();
    const std::vector<RunConfig> scenarios{
        make_run(1, {"learningcc"}, 0.0, 1),
        make_run(4, {"learningcc", "cubic"}, 0.0, 2),
        make_run(6, {"reno"}, 0.035, 3),
    };
    const auto first = run_batch(scenarios, 1);
    const auto second = run_batch(scenarios, 3);
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto x = traces_and_summary(first[i]);
        const auto y = traces_and_summary(second[i]);
        const auto z = traces_and_summary(run_experiment(scenarios[i]));
        r.expect(x == y && y == z, fmt("case %s %s loss %.3f: %zu bytes identical across 3 runs",
                                       scenarios[i].case_label().c_str(),
                                       scenarios[i].algorithm_label().c_str(), scenarios[i].loss_rate, x.size()));
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    r.expect(s < 120.0, fmt("runtime %.1f s < 2 min", s));
    return r;
}

Outcome fluid_consistency() {
    Outcome r;
    const auto t0 = Clock::now();
    double worst_residual = 0.0;
    double worst_convergence = 0.0;
    int points = 0;
    for (double p : {0.001, 0.005, 0.01, 0.02, 0.05}) {
        for (double rtt_min : {0.01, 0.03, 0.06, 0.1, 0.2}) {
            for (double ratio : {1.0, 1.5, 2.0, 4.0}) {
                ++points;
                fluid::FluidParams f;
                f.p = p;
                f.rtt_min = rtt_min;
                f.rtt = ratio * rtt_min;
                f.alpha_bar = 3.0;
                for (auto m : {fluid::Model::reno, fluid::Model::learningcc}) {
                    const double x = fluid::equilibrium(m, f);
                    worst_residual = std::max(worst_residual, std::fabs(fluid::rate_derivative(m, f, x)) / x);
                    const auto traj = fluid::integrate_rate_ode(m, f, 0.1 * x, 200.0 * f.rtt, f.rtt / 10.0);
                    worst_convergence = std::max(worst_convergence, std::fabs(traj.back().x - x) / x);
                }
            }
        }
    }
    r.expect(points == 100, fmt("%d grid points, both models", points));
    r.expect(worst_residual < 1e-9, fmt("max |dx/dt(x*)| / x* = %.3g < 1e-9", worst_residual));
    r.expect(worst_convergence <= 0.02, fmt("max |x(200 rtt) - x*| / x* from 0.1 x* = %.3g <= 0.02",
                                            worst_convergence));
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    r.expect(s < 10.0, fmt("runtime %.2f s < 10 s", s));
    return r;
}

Outcome crossover() {
    Outcome r;
    fluid::FluidParams f;
    f.rtt_min = 0.04;
    f.rtt = 2.0 * f.rtt_min;
    f.beta = 0.5;
    f.beta_l = 0.9;
    const double a = fluid::crossover_alpha(f);
    r.expect(a == 1.1, fmt("crossover %.17g == 1.1", a));
    return r;
}

Outcome lossy_headline() {
    Outcome r;
    const auto t0 = Clock::now();
    std::vector<RunConfig> configs;
    for (int s = 1; s <= kSeeds; ++s) {
        configs.push_back(make_run(6, {"learningcc"}, 0.035, static_cast<std::uint64_t>(s)));
        configs.push_back(make_run(6, {"reno"}, 0.035, static_cast<std::uint64_t>(s)));
    }
    const auto out = run_batch(configs);
    double lcc = 0.0, reno = 0.0;
    for (const auto& o : out) {
        (o.summary.algorithm == "reno" ? reno : lcc) += o.summary.utilization / kSeeds;
    }
    r.expect(lcc >= 0.75, fmt("learningcc utilization %.3f >= 0.75", lcc));
    r.expect(lcc >= 2.0 * reno, fmt("learningcc / reno utilization %.2f >= 2", lcc / reno));
    r.expect(reno <= 0.50, fmt("reno utilization %.3f <= 0.50", reno));
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    r.expect(s < 600.0, fmt("runtime %.1f s < 10 min", s));
    return r;
}

Outcome loss_resilience() {
    Outcome r;
    const auto t0 = Clock::now();
    const auto m = run_matrix({{"learningcc"}}, 0.05);
    const auto& cases = m.at("learningcc");
    for (std::size_t c = 0; c < cases.size(); ++c) {
        r.expect(cases[c].utilization >= 0.80, fmt("case %zu utilization %.3f >= 0.80", c + 1, cases[c].utilization));
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    r.expect(s < 900.0, fmt("runtime %.1f s < 15 min", s));
    return r;
}

struct Matrices {
    std::map<std::string, std::vector<CaseMeans>> same;
    std::map<std::string, std::vector<CaseMeans>> mixed;
};

Outcome delay_ordering(const Matrices& m) {
    Outcome r;
    const auto& l = m.same.at("learningcc");
    const auto& reno = m.same.at("reno");
    const auto& cubic = m.same.at("cubic");
    for (std::size_t c = 0; c < 6; ++c) {
        r.expect(l[c].owd_ms < reno[c].owd_ms && l[c].owd_ms < cubic[c].owd_ms,
                 fmt("case %zu path1 owd ms: learningcc %.1f, reno %.1f, cubic %.1f", c + 1, l[c].owd_ms,
                     reno[c].owd_ms, cubic[c].owd_ms));
    }
    return r;
}

Outcome fairness(const Matrices& m) {
    Outcome r;
    const auto& l = m.same.at("learningcc");
    const auto& reno = m.same.at("reno");
    for (std::size_t c = 0; c < 6; ++c) {
        r.expect(reno[c].jain >= 0.95, fmt("case %zu reno jain %.4f >= 0.95", c + 1, reno[c].jain));
        r.expect(l[c].jain >= 0.80, fmt("case %zu learningcc jain %.4f >= 0.80", c + 1, l[c].jain));
    }
    return r;
}

Outcome competence(const Matrices& m) {
    Outcome r;
    const auto& vs_reno = m.mixed.at("learningcc-vs-reno");
    const auto& vs_cubic = m.mixed.at("learningcc-vs-cubic");
    int cubic_wins = 0;
    for (std::size_t c = 0; c < 6; ++c) {
        r.expect(vs_reno[c].starved == 0 && vs_reno[c].ratio >= 0.7 && vs_reno[c].ratio <= 2.0,
                 fmt("case %zu learningcc/reno ratio %.3f in [0.7, 2.0]", c + 1, vs_reno[c].ratio));
        const bool win = vs_cubic[c].starved == 0 && vs_cubic[c].ratio > 1.0;
        cubic_wins += win ? 1 : 0;
        r.note(fmt("case %zu learningcc/cubic ratio %.3f%s", c + 1, vs_cubic[c].ratio, win ? " > 1" : ""));
    }
    r.expect(cubic_wins >= 4, fmt("learningcc/cubic ratio > 1 in %d of 6 cases (majority needs 4)", cubic_wins));
    return r;
}

Outcome bandit_behavior() {
    Outcome r;
    auto cfg = make_run(1, {"learningcc"}, 0.0, 1, 2.0 * kPaperDuration);
    const auto out = run_experiment(cfg);
    const auto& stats = out.result.flows.front().bandit;
    if (!stats) {
        r.expect(false, "flow 1 reports bandit statistics");
        return r;
    }
    const double frac = static_cast<double>(stats->explorations) / static_cast<double>(stats->selections);
    r.expect(stats->selections >= 1000, fmt("flow 1 made %llu selections >= 1000 in %.0f s",
                                            static_cast<unsigned long long>(stats->selections), cfg.duration));
    r.expect(std::fabs(frac - 0.3) <= 0.05, fmt("exploration fraction %.4f in 0.3 +- 0.05", frac));
    std::string counts;
    bool all = true;
    for (auto n : stats->arm_counts) {
        counts += (counts.empty() ? "" : ", ") + std::to_string(n);
        all = all && n > 0;
    }
    r.expect(all, "every arm selected: [" + counts + "]");
    return r;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    Matrices m;
    bool matrices_ready = false;
    const auto matrices = [&]() -> const Matrices& {
        if (!matrices_ready) {
            m.same = run_matrix({{"learningcc"}, {"reno"}, {"cubic"}}, 0.0);
            m.mixed = run_matrix({{"learningcc", "reno"}, {"learningcc", "cubic"}}, 0.0);
            matrices_ready = true;
        }
        return m;
    };

    const std::vector<Criterion> criteria{
        {"formula unit suite", formula_suite},
        {"determinism", determinism},
        {"fluid-model consistency", fluid_consistency},
        {"crossover factor", crossover},
        {"lossy-link headline (case 6, 3.5% loss)", lossy_headline},
        {"5% loss resilience", loss_resilience},
        {"delay ordering", [&] { return delay_ordering(matrices()); }},
        {"intra-protocol fairness", [&] { return fairness(matrices()); }},
        {"competence", [&] { return competence(matrices()); }},
        {"bandit behavior", bandit_behavior},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("%s  %s\n", o.pass ? "PASS" : "FAIL", c.name);
        for (const auto& d : o.details) std::printf("        %s\n", d.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
