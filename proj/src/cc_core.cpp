#include "banditcc/cc_core.hpp"

#include <cmath>
#include <string>

namespace banditcc {

SentPacketRecord DeliveryTracker::record_sent(PacketNumber seq, std::uint32_t bytes, Seconds now) {
    if (bytes == 0) {
        throw ProtocolViolation("packet " + std::to_string(seq) + " has zero bytes");
    }
    if (seq <= largest_sent_) {
        throw ProtocolViolation("packet number " + std::to_string(seq) +
                                " not above largest sent " + std::to_string(largest_sent_));
    }
    SentPacketRecord record{seq, bytes, now, delivered_, delivered_time_};
    // An idle sender restarts the interval at send time.
    if (in_flight_.empty()) {
        record.delivered_time_at_send = now;
    }
    in_flight_.emplace(seq, record);
    largest_sent_ = seq;
    return record;
}

SentPacketRecord DeliveryTracker::take(PacketNumber seq) {
    auto it = in_flight_.find(seq);
    if (it == in_flight_.end()) {
        throw ProtocolViolation("packet " + std::to_string(seq) + " is not outstanding");
    }
    SentPacketRecord record = it->second;
    in_flight_.erase(it);
    return record;
}

SentPacketRecord DeliveryTracker::on_acked(PacketNumber seq, Seconds now) {
    SentPacketRecord record = take(seq);
    delivered_ += record.bytes;
    delivered_time_ = now;
    return record;
}

SentPacketRecord DeliveryTracker::on_lost(PacketNumber seq) { return take(seq); }

std::optional<RateSample> DeliveryTracker::sample_rate(const SentPacketRecord& record,
                                                       Seconds now) const {
    const Seconds interval = now - record.delivered_time_at_send;
    if (!(interval > 0.0) || !std::isfinite(interval)) {
        return std::nullopt;
    }
    RateSample sample;
    sample.delivered_delta = delivered_ - record.delivered_at_send;
    sample.interval = interval;
    sample.rate = static_cast<double>(sample.delivered_delta) / interval;
    return sample;
}

const SentPacketRecord* DeliveryTracker::find(PacketNumber seq) const {
    auto it = in_flight_.find(seq);
    return it == in_flight_.end() ? nullptr : &it->second;
}

void DeliveryTracker::credit_delivered(std::uint64_t bytes, Seconds now) {
    delivered_ += bytes;
    delivered_time_ = now;
}

}  // namespace banditcc
