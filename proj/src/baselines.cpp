#include "banditcc/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace banditcc {

// ---------------------------------------------------------------- Reno

Reno::Reno(Bytes initial_window) : cwnd_(std::max(kMinWindow, initial_window)) { start_round(); }

void Reno::start_round() {
    round_window_ = cwnd_;
    round_acked_ = 0.0;
}

bool Reno::on_loss(PacketNumber acked_sequence, PacketNumber largest_sent) {
    if (recovery_point_ != 0 && acked_sequence <= recovery_point_) {
        return false;
    }
    cwnd_ = std::max(kMinWindow, kBeta * cwnd_);
    ssthresh_ = cwnd_;
    recovery_point_ = largest_sent;
    start_round();
    return true;
}

void Reno::on_ack(const AckEvent& ack) {
    if (ack.has_loss && on_loss(ack.acked_sequence, ack.largest_sent)) {
        return;
    }
    if (recovery_point_ != 0 && ack.acked_sequence <= recovery_point_) {
        return;
    }
    const Bytes acked = ack.acked_bytes;
    if (in_slow_start()) {
        cwnd_ += acked;
        start_round();
        return;
    }
    cwnd_ += static_cast<double>(kMss) * acked / round_window_;
    round_acked_ += acked;
    if (round_acked_ >= round_window_) {
        cwnd_ = round_window_ + kMss;
        start_round();
    }
}

// ---------------------------------------------------------------- Cubic

Cubic::Cubic(Bytes initial_window) : cwnd_(std::max(kMinWindow, initial_window)) {}

void Cubic::set_epoch(Bytes w_max, Seconds epoch_start) {
    w_max_ = w_max;
    epoch_start_ = epoch_start;
    k_ = std::cbrt(w_max / kMss * (1.0 - kBeta) / kC);
}

Bytes Cubic::cubic_window(Seconds t) const {
    const double d = t - k_;
    const double w_mss = kC * d * d * d + w_max_ / kMss;
    return std::max(kMinWindow, w_mss * kMss);
}

bool Cubic::on_loss(PacketNumber acked_sequence, PacketNumber largest_sent, Seconds now) {
    if (recovery_point_ != 0 && acked_sequence <= recovery_point_) {
        return false;
    }
    set_epoch(cwnd_, now);
    cwnd_ = std::max(kMinWindow, kBeta * cwnd_);
    ssthresh_ = cwnd_;
    recovery_point_ = largest_sent;
    return true;
}

void Cubic::on_ack(const AckEvent& ack) {
    min_rtt_ = std::min(min_rtt_, ack.rtt_sample);
    if (ack.has_loss && on_loss(ack.acked_sequence, ack.largest_sent, ack.ack_receive_time)) {
        return;
    }
    if (recovery_point_ != 0 && ack.acked_sequence <= recovery_point_) {
        return;
    }
    const Bytes acked = ack.acked_bytes;
    if (cwnd_ < ssthresh_) {
        cwnd_ += acked;
        return;
    }
    if (!epoch_start_) {
        set_epoch(cwnd_, ack.ack_receive_time);
    }
    const Seconds t = ack.ack_receive_time - *epoch_start_ + min_rtt_;
    const Bytes target = cubic_window(t);
    double per_ack = 0.0;
    if (target > cwnd_) {
        // At most +50% per round.
        per_ack = std::min((target - cwnd_) / cwnd_, 0.5);
    } else {
        per_ack = 0.01 * kMss / cwnd_;
    }
    cwnd_ += per_ack * acked;
}

}  // namespace banditcc
