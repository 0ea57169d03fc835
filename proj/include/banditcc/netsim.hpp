#pragma once

// Deterministic discrete-event simulation of the two-path dumbbell:
//
//   n0 --l1--+              +--l3-- n4     path1: n0 -> n4 over l1, l2, l3
//            n2 ----l2---- n3
//   n1 --l4--+              +--l5-- n5     path2: n1 -> n5 over l4, l2, l5
//
// Every link is full duplex with a drop-tail FIFO per direction. Data packets
// carry kMss payload bytes plus a fixed header; each data packet is acked
// individually by a small ack that travels the reverse path.

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditcc/cc_core.hpp"
#include "banditcc/learningcc.hpp"

namespace banditcc {

inline constexpr std::uint32_t kHeaderBytes = 40;
inline constexpr std::uint32_t kDataWireBytes = kMss + kHeaderBytes;
inline constexpr std::uint32_t kAckWireBytes = 40;
inline constexpr Seconds kMinRto = 0.200;
inline constexpr int kReorderThreshold = 3;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LinkConfig {
    double bandwidth_bps = 0.0;
    Seconds owd = 0.0;
    Seconds qdelay = 0.0;
    double loss_rate = 0.0;

    /// Buffer size implied by the maximum queueing delay.
    std::uint64_t queue_capacity_bytes() const;
    Seconds serialization_delay(std::uint32_t bytes) const;
    void validate(const std::string& name) const;

    static LinkConfig from_table(double mbps, double owd_ms, double qdelay_ms);
};

struct LinkSpec {
    std::string name;
    int node_a = 0;
    int node_b = 0;
    LinkConfig config;
};

struct TopologyConfig {
    std::vector<LinkSpec> links;
    int path1_src = 0, path1_dst = 4;
    int path2_src = 1, path2_dst = 5;
    std::string bottleneck = "l2";

    /// The dumbbell with links l1..l5 in order.
    static TopologyConfig dumbbell(const std::array<LinkConfig, 5>& links);
    /// One of the six reference configurations (1-based).
    static TopologyConfig table_case(int case_number);

    /// Throws ConfigError for bad link parameters, cycles, unknown nodes or
    /// paths that do not share the bottleneck.
    void validate() const;

    const LinkSpec& link(const std::string& name) const;
    LinkSpec& link(const std::string& name);

    /// Link names traversed from src to dst.
    std::vector<std::string> route(int src, int dst) const;
    std::vector<std::string> path_links(int path) const;
    Seconds path_propagation(int path) const;
    void set_bottleneck_loss(double loss_rate);
};

enum class Verdict { accepted, dropped };

/// Byte-bounded FIFO with tail drop.
template <typename Item>
class DropTailQueue {
public:
    explicit DropTailQueue(std::uint64_t capacity_bytes = 0) : capacity_(capacity_bytes) {}

    Verdict enqueue(Item item, std::uint32_t bytes) {
        if (occupancy_ + bytes > capacity_) {
            ++drops_;
            return Verdict::dropped;
        }
        occupancy_ += bytes;
        items_.push_back({std::move(item), bytes});
        return Verdict::accepted;
    }

    Item pop() {
        auto entry = std::move(items_.front());
        items_.pop_front();
        occupancy_ -= entry.bytes;
        return std::move(entry.item);
    }

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }
    std::uint64_t occupancy_bytes() const { return occupancy_; }
    std::uint64_t capacity_bytes() const { return capacity_; }
    std::uint64_t drops() const { return drops_; }

private:
    struct Entry {
        Item item;
        std::uint32_t bytes;
    };
    std::deque<Entry> items_;
    std::uint64_t occupancy_ = 0;
    std::uint64_t capacity_;
    std::uint64_t drops_ = 0;
};

/// Bernoulli loss decision: dropped iff draw < loss_rate.
Verdict apply_random_loss(const LinkConfig& link, double rng_draw);

/// Time the last bit reaches the far end when transmission starts at `now`.
Seconds serialize_and_propagate(const LinkConfig& link, std::uint32_t bytes, Seconds now);

struct OutstandingPacket {
    PacketNumber number = 0;
    std::uint64_t segment = 0;
    Seconds sent_time = 0.0;
};

/// Sender-side loss inference: a packet is lost once kReorderThreshold
/// later-numbered packets are acked, or when it has been outstanding for a
/// full retransmission timeout.
class LossDetector {
public:
    struct AckOutcome {
        std::optional<OutstandingPacket> acked;  // empty if already acked or declared lost
        std::vector<OutstandingPacket> lost;
    };

    void on_sent(PacketNumber number, std::uint64_t segment, Seconds now);
    AckOutcome on_ack(PacketNumber number);
    /// Declares lost the oldest packet and every other one sent at or before now - rto.
    std::vector<OutstandingPacket> on_timeout(Seconds now, Seconds rto);

    bool empty() const { return outstanding_.empty(); }
    std::size_t size() const { return outstanding_.size(); }

private:
    std::map<PacketNumber, OutstandingPacket> outstanding_;
};

/// max(2 * srtt, kMinRto); 1 s before the first sample.
class RtoEstimator {
public:
    void on_rtt(Seconds rtt);
    Seconds rto() const;
    std::optional<Seconds> srtt() const { return srtt_; }

private:
    std::optional<Seconds> srtt_;
};

struct FlowConfig {
    int flow_id = 1;
    int path = 1;
    std::string algorithm = "learningcc";
    Seconds start_time = 0.0;
    Seconds duration = 60.0;
};

struct DeliveryRecord {
    std::uint64_t segment = 0;
    std::uint32_t bytes = 0;
    Seconds send_time = 0.0;
    Seconds recv_time = 0.0;
    Seconds owd = 0.0;
};

struct FlowTrace {
    int flow_id = 0;
    int path = 1;
    std::string algorithm;
    Seconds start_time = 0.0;
    Seconds duration = 0.0;
    std::vector<DeliveryRecord> deliveries;  // unique segments, in arrival order
    std::uint64_t total_bytes = 0;
    std::uint64_t packets_sent = 0;
    std::uint64_t retransmissions = 0;
    std::uint64_t losses_detected = 0;
    std::uint64_t timeouts = 0;
    std::optional<BanditStats> bandit;  // learningcc flows only
};

struct SimStats {
    std::uint64_t events = 0;
    std::uint64_t data_sent = 0;
    std::uint64_t data_arrived = 0;  // at the receiver, duplicates included
    std::uint64_t queue_drops = 0;
    std::uint64_t random_drops = 0;
    std::uint64_t data_in_network = 0;
    std::uint64_t max_queue_excess = 0;  // must stay 0
};

struct SimulationResult {
    std::vector<FlowTrace> flows;
    SimStats stats;
    Seconds duration = 0.0;
};

struct SimulationOptions {
    /// Upper bound of the uniform per-packet sender processing delay; defaults
    /// to one data packet's serialization time on the bottleneck. Breaks the
    /// phase lock-in that fixed-size packets cause at a drop-tail queue.
    std::optional<Seconds> host_jitter;
    /// Called after every event; used by tests to check invariants.
    std::function<void(const SimStats&)> on_event;
};

/// Builds a controller by name; throws ConfigError listing valid names.
std::unique_ptr<Controller> make_controller(const std::string& algorithm, std::uint64_t seed);
const std::vector<std::string>& algorithm_names();

SimulationResult run_simulation(const TopologyConfig& topology, const std::vector<FlowConfig>& flows,
                                std::uint64_t seed, Seconds duration,
                                const SimulationOptions& options = {});

/// `flow_id,seq,bytes,send_time_s,recv_time_s,owd_s`
void write_trace_csv(std::ostream& out, const FlowTrace& trace);
std::vector<DeliveryRecord> read_trace_csv(std::istream& in, int* flow_id = nullptr);

}  // namespace banditcc
