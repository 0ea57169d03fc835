#include "banditcc/learningcc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace banditcc {

double BanditStats::mean_action(const std::vector<int>& table) const {
    if (selections == 0) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < arm_counts.size() && i < table.size(); ++i) {
        sum += static_cast<double>(arm_counts[i]) * table[i];
    }
    return sum / static_cast<double>(selections);
}

double instant_reward(double rate, Seconds srtt) {
    if (!(srtt > 0.0)) {
        throw DomainError("instant_reward: srtt must be positive (filter not initialized)");
    }
    return rate / srtt;
}

LearningCc::LearningCc(std::uint64_t seed, LearningCcParams params)
    : params_(std::move(params)), rng_(seed) {
    if (params_.action_table.empty()) {
        throw std::invalid_argument("LearningCc: empty action table");
    }
    state_.cwnd_ = std::max(kMinWindow, params_.initial_window);
    state_.reward_table.assign(params_.action_table.size(), 0.0);
    state_.reward_seen.assign(params_.action_table.size(), false);
    stats_.arm_counts.assign(params_.action_table.size(), 0);
}

void LearningCc::on_packet_sent(const SentPacketRecord&) {}

Seconds LearningCc::update_srtt(Seconds rtt_sample, Seconds now) {
    if (!(rtt_sample > 0.0) || !std::isfinite(rtt_sample)) {
        throw DomainError("update_srtt: rtt sample must be positive, got " +
                          std::to_string(rtt_sample));
    }
    const double g = params_.gamma;
    state_.srtt = state_.srtt ? (1.0 - g) * *state_.srtt + g * rtt_sample : rtt_sample;

    rtt_min_filter_.update(now, rtt_sample);
    srtt_max_filter_.update(now, *state_.srtt);
    // rtt_min spans the same horizon as the Bw filter, so Bw * rtt_min is a
    // bandwidth-delay product measured over one interval.
    state_.rtt_min = *rtt_min_filter_.best(now, params_.rtt_min_window_rtts * *state_.srtt);
    state_.srtt_max = *srtt_max_filter_.best(now, params_.srtt_max_window);

    // rtt_base only remembers samples inside the observation window too.
    state_.rtt_base = std::max(std::min(state_.rtt_base, rtt_sample), state_.rtt_min);
    return *state_.srtt;
}

Seconds LearningCc::rtt_threshold() const {
    if (!state_.srtt || !std::isfinite(state_.rtt_base)) {
        return LearningCcState::kUnset;
    }
    return state_.rtt_base + params_.theta * (state_.srtt_max - state_.rtt_base);
}

double LearningCc::update_reward(std::size_t action_index, double reward_value) {
    double& entry = state_.reward_table.at(action_index);
    if (!state_.reward_seen[action_index]) {
        entry = reward_value;
        state_.reward_seen[action_index] = true;
    } else {
        entry = (1.0 - params_.delta) * entry + params_.delta * reward_value;
    }
    return entry;
}

std::size_t LearningCc::select_action(double uniform_draw, std::size_t random_index,
                                      PacketNumber largest_sent) {
    const auto& rewards = state_.reward_table;
    std::size_t chosen = 0;
    const bool explore = uniform_draw < params_.epsilon;
    if (explore) {
        chosen = random_index % rewards.size();
    } else {
        for (std::size_t i = 1; i < rewards.size(); ++i) {
            if (rewards[i] > rewards[chosen]) {
                chosen = i;
            }
        }
    }
    state_.action_index_ = chosen;
    state_.action_chosen_ = true;
    state_.rtt_base = LearningCcState::kUnset;
    state_.action_start_seq = largest_sent;

    ++stats_.selections;
    stats_.explorations += explore ? 1 : 0;
    ++stats_.arm_counts[chosen];
    return chosen;
}

std::optional<double> LearningCc::estimate_bandwidth(Seconds now) {
    if (!state_.srtt) {
        return bw_filter_.peek();
    }
    return bw_filter_.best(now, params_.bw_window_rtts * *state_.srtt);
}

bool LearningCc::congestion_window_backoff(const AckEvent& ack) {
    const bool delayed = params_.delay_trigger && ack.rtt_sample > rtt_threshold();
    if (!delayed && !ack.has_loss) {
        return false;
    }
    if (state_.last_cutback_ != 0 && ack.acked_sequence <= state_.last_cutback_) {
        return false;
    }
    const auto bw = estimate_bandwidth(ack.ack_receive_time);
    if (bw && std::isfinite(state_.rtt_min)) {
        state_.cwnd_ = std::max(kMinWindow, params_.beta_l * *bw * state_.rtt_min);
    } else {
        state_.cwnd_ = std::max(kMinWindow, state_.cwnd_ / 2.0);
    }
    state_.last_cutback_ = ack.largest_sent;
    state_.acked_count_ = 0;
    state_.action_chosen_ = false;

    ++stats_.backoffs;
    stats_.delay_backoffs += (delayed && !ack.has_loss) ? 1 : 0;
    return true;
}

void LearningCc::on_packet_acked(const AckEvent& ack) {
    if (state_.last_cutback_ != 0 && ack.acked_sequence <= state_.last_cutback_) {
        return;
    }
    if (!state_.action_chosen_) {
        const double draw = rng_.uniform();
        const auto index = static_cast<std::size_t>(rng_.index(params_.action_table.size()));
        select_action(draw, index, ack.largest_sent);
    }
    state_.rtt_base = std::min(state_.rtt_base, ack.rtt_sample);

    // Only packets sent under the current arm say anything about it.
    if (ack.rate && state_.srtt && ack.acked_sequence > state_.action_start_seq) {
        update_reward(state_.action_index_, instant_reward(ack.rate->rate, *state_.srtt));
    }

    ++state_.acked_count_;
    const auto action = static_cast<double>(params_.action_table[state_.action_index_]);
    if (static_cast<double>(state_.acked_count_) * action >= state_.cwnd_ / kMss) {
        state_.cwnd_ += kMss;
        state_.acked_count_ = 0;
    }
}

void LearningCc::on_ack(const AckEvent& ack) {
    update_srtt(ack.rtt_sample, ack.ack_receive_time);
    if (ack.rate) {
        add_rate_sample(ack.ack_receive_time, ack.rate->rate);
    }
    congestion_window_backoff(ack);
    on_packet_acked(ack);
}

}  // namespace banditcc
