#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "banditcc/cc_core.hpp"
#include "banditcc/rng.hpp"
#include "banditcc/windowed_filter.hpp"

namespace banditcc {

struct LearningCcParams {
    double epsilon = 0.3;    // exploration probability
    double theta = 0.8;      // delay threshold position between rtt_base and srtt_max
    double beta_l = 0.9;     // backoff factor on Bw * rtt_min
    double gamma = 0.125;    // srtt filter gain
    double delta = 0.85;     // reward filter gain
    std::vector<int> action_table{1, 2, 3, 4, 5};
    double rtt_min_window_rtts = 10.0;  // rtt_min window length in srtts
    Seconds srtt_max_window = 10.0;     // srtt_max observation window
    double bw_window_rtts = 10.0;       // Bw filter length in srtts
    Bytes initial_window = 10.0 * kMss;
    bool delay_trigger = true;      // false: only losses cause backoff
};

struct LearningCcState {
    static constexpr Seconds kUnset = std::numeric_limits<double>::infinity();

    Bytes cwnd_ = 10.0 * kMss;
    std::optional<Seconds> srtt;
    Seconds rtt_min = kUnset;
    Seconds srtt_max = 0.0;
    Seconds rtt_base = kUnset;
    PacketNumber last_cutback_ = 0;
    std::uint64_t acked_count_ = 0;
    bool action_chosen_ = false;
    std::size_t action_index_ = 0;
    PacketNumber action_start_seq = 0;
    std::vector<double> reward_table;
    std::vector<bool> reward_seen;
};

/// Counters describing what the bandit did over a run.
struct BanditStats {
    std::uint64_t selections = 0;
    std::uint64_t explorations = 0;
    std::uint64_t backoffs = 0;
    std::uint64_t delay_backoffs = 0;
    std::vector<std::uint64_t> arm_counts;

    /// Mean increase factor over all selections (0 if none).
    double mean_action(const std::vector<int>& table) const;
};

/// rate / srtt, in bytes/s^2. Throws DomainError if srtt is not positive.
double instant_reward(double rate, Seconds srtt);

/// Epsilon-greedy window controller.
///
/// Each arm is an additive-increase factor: with factor a the window gains one
/// MSS every cwnd/(a*MSS) acks. A delay excursion above the threshold or a
/// loss resets the window to beta_l * Bw * rtt_min and forces a fresh arm
/// choice once the packets sent before the cutback have been acked.
class LearningCc final : public Controller {
public:
    explicit LearningCc(std::uint64_t seed = 1, LearningCcParams params = {});

    void on_packet_sent(const SentPacketRecord& record) override;
    void on_ack(const AckEvent& ack) override;
    Bytes congestion_window() const override { return state_.cwnd_; }
    std::string_view algorithm_name() const override { return "learningcc"; }

    /// srtt filter step; also refreshes rtt_min, srtt_max and rtt_base.
    Seconds update_srtt(Seconds rtt_sample, Seconds now = 0.0);

    /// rtt_base + theta * (srtt_max - rtt_base); +inf while either is unsampled.
    Seconds rtt_threshold() const;

    double update_reward(std::size_t action_index, double reward_value);

    /// One epsilon-greedy decision from externally supplied draws.
    std::size_t select_action(double uniform_draw, std::size_t random_index,
                              PacketNumber largest_sent = 0);

    void on_packet_acked(const AckEvent& ack);

    /// Returns true if the window was cut.
    bool congestion_window_backoff(const AckEvent& ack);

    /// Max delivery rate seen in the last bw_window_rtts * srtt seconds.
    std::optional<double> estimate_bandwidth(Seconds now);
    void add_rate_sample(Seconds now, double rate) { bw_filter_.update(now, rate); }

    const LearningCcState& state() const { return state_; }
    LearningCcState& mutable_state() { return state_; }
    const LearningCcParams& params() const { return params_; }
    const BanditStats& stats() const { return stats_; }

private:
    LearningCcParams params_;
    LearningCcState state_;
    BanditStats stats_;
    Rng rng_;
    WindowedMin<Seconds> rtt_min_filter_;
    WindowedMax<Seconds> srtt_max_filter_;
    WindowedMax<double> bw_filter_;
};

}  // namespace banditcc
