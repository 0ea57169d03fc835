#pragma once

// Controller contract and delivery-rate sampling shared by every algorithm.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace banditcc {

using PacketNumber = std::uint64_t;
using Seconds = double;
using Bytes = double;

/// Payload bytes carried by every data packet.
inline constexpr std::uint32_t kMss = 1400;
/// Smallest window any controller may report.
inline constexpr Bytes kMinWindow = 2.0 * kMss;

struct ProtocolViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SentPacketRecord {
    PacketNumber sequence = 0;
    std::uint32_t bytes = 0;
    Seconds sent_time = 0.0;
    std::uint64_t delivered_at_send = 0;
    Seconds delivered_time_at_send = 0.0;

    friend bool operator==(const SentPacketRecord&, const SentPacketRecord&) = default;
};

struct RateSample {
    std::uint64_t delivered_delta = 0;
    Seconds interval = 0.0;
    double rate = 0.0;  // bytes per second
};

struct AckEvent {
    PacketNumber acked_sequence = 0;
    Seconds ack_receive_time = 0.0;
    Seconds rtt_sample = 0.0;
    bool has_loss = false;
    PacketNumber largest_sent = 0;
    std::uint32_t acked_bytes = kMss;
    // Delivery-rate measurement taken for this ack, if the interval was valid.
    std::optional<RateSample> rate;
};

// Per-packet snapshot delivery-rate estimation: every sent packet remembers the
// cumulative delivered counter, and an ack measures progress since that snapshot.
class DeliveryTracker {
public:
    SentPacketRecord record_sent(PacketNumber seq, std::uint32_t bytes, Seconds now);

    /// Marks `seq` as delivered at `now` and returns its send-time record.
    SentPacketRecord on_acked(PacketNumber seq, Seconds now);

    /// Forgets a packet declared lost; returns its record.
    SentPacketRecord on_lost(PacketNumber seq);

    /// Rate since the snapshot held in `record`; nullopt if the interval is not positive.
    std::optional<RateSample> sample_rate(const SentPacketRecord& record, Seconds now) const;

    const SentPacketRecord* find(PacketNumber seq) const;

    std::uint64_t delivered() const { return delivered_; }
    Seconds delivered_time() const { return delivered_time_; }
    std::size_t outstanding() const { return in_flight_.size(); }
    PacketNumber largest_sent() const { return largest_sent_; }

    /// Test hook: credits delivered bytes without an associated send record.
    void credit_delivered(std::uint64_t bytes, Seconds now);

private:
    SentPacketRecord take(PacketNumber seq);

    std::map<PacketNumber, SentPacketRecord> in_flight_;
    std::uint64_t delivered_ = 0;
    Seconds delivered_time_ = 0.0;
    PacketNumber largest_sent_ = 0;
};

class Controller {
public:
    virtual ~Controller() = default;

    virtual void on_packet_sent(const SentPacketRecord& record) = 0;
    virtual void on_ack(const AckEvent& ack) = 0;
    virtual Bytes congestion_window() const = 0;
    virtual std::string_view algorithm_name() const = 0;
};

}  // namespace banditcc
