#pragma once

#include <limits>
#include <optional>

#include "banditcc/cc_core.hpp"

namespace banditcc {

// Reno with slow start. Congestion avoidance adds MSS^2/W per acked MSS, where
// W is the window at the start of the current round, so a full round of acks
// adds exactly one MSS.
class Reno final : public Controller {
public:
    static constexpr double kBeta = 0.5;

    explicit Reno(Bytes initial_window = 10.0 * kMss);

    void on_packet_sent(const SentPacketRecord&) override {}
    void on_ack(const AckEvent& ack) override;
    Bytes congestion_window() const override { return cwnd_; }
    std::string_view algorithm_name() const override { return "reno"; }

    /// Multiplicative decrease; ignored while still recovering from the previous one.
    bool on_loss(PacketNumber acked_sequence, PacketNumber largest_sent);

    Bytes ssthresh() const { return ssthresh_; }
    bool in_slow_start() const { return cwnd_ < ssthresh_; }

private:
    void start_round();

    Bytes cwnd_;
    Bytes ssthresh_ = std::numeric_limits<double>::infinity();
    Bytes round_window_ = 0.0;
    Bytes round_acked_ = 0.0;
    PacketNumber recovery_point_ = 0;
};

/// Cubic window growth (C = 0.4, decrease 0.7) without the TCP-friendly
/// region or fast convergence.
class Cubic final : public Controller {
public:
    static constexpr double kC = 0.4;
    static constexpr double kBeta = 0.7;

    explicit Cubic(Bytes initial_window = 10.0 * kMss);

    void on_packet_sent(const SentPacketRecord&) override {}
    void on_ack(const AckEvent& ack) override;
    Bytes congestion_window() const override { return cwnd_; }
    std::string_view algorithm_name() const override { return "cubic"; }

    bool on_loss(PacketNumber acked_sequence, PacketNumber largest_sent, Seconds now);

    /// Target window `t` seconds after the epoch start, in bytes.
    Bytes cubic_window(Seconds t) const;
    /// Time for the cubic curve to climb back to w_max, in seconds.
    Seconds k() const { return k_; }

    /// Sets the post-loss state directly, for tests.
    void set_epoch(Bytes w_max, Seconds epoch_start);

    Bytes w_max() const { return w_max_; }
    Bytes ssthresh() const { return ssthresh_; }

private:
    Bytes cwnd_;
    Bytes ssthresh_ = std::numeric_limits<double>::infinity();
    Bytes w_max_ = 0.0;
    Seconds k_ = 0.0;
    std::optional<Seconds> epoch_start_;
    Seconds min_rtt_ = std::numeric_limits<double>::infinity();
    PacketNumber recovery_point_ = 0;
};

}  // namespace banditcc
