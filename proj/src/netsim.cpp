#include "banditcc/netsim.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "banditcc/baselines.hpp"
#include "banditcc/rng.hpp"

namespace banditcc {

// ---------------------------------------------------------------- links

std::uint64_t LinkConfig::queue_capacity_bytes() const {
    return static_cast<std::uint64_t>(std::llround(bandwidth_bps / 8.0 * qdelay));
}

Seconds LinkConfig::serialization_delay(std::uint32_t bytes) const {
    return static_cast<double>(bytes) * 8.0 / bandwidth_bps;
}

void LinkConfig::validate(const std::string& name) const {
    if (!(bandwidth_bps > 0.0) || !std::isfinite(bandwidth_bps)) {
        throw ConfigError("link " + name + ": bandwidth must be positive");
    }
    if (!(owd >= 0.0) || !(qdelay >= 0.0)) {
        throw ConfigError("link " + name + ": delays must be non-negative");
    }
    if (!(loss_rate >= 0.0 && loss_rate <= 1.0)) {
        throw ConfigError("link " + name + ": loss rate must lie in [0, 1]");
    }
}

LinkConfig LinkConfig::from_table(double mbps, double owd_ms, double qdelay_ms) {
    return LinkConfig{mbps * 1e6, owd_ms * 1e-3, qdelay_ms * 1e-3, 0.0};
}

Verdict apply_random_loss(const LinkConfig& link, double rng_draw) {
    return rng_draw < link.loss_rate ? Verdict::dropped : Verdict::accepted;
}

Seconds serialize_and_propagate(const LinkConfig& link, std::uint32_t bytes, Seconds now) {
    return now + link.serialization_delay(bytes) + link.owd;
}

// ---------------------------------------------------------------- topology

TopologyConfig TopologyConfig::dumbbell(const std::array<LinkConfig, 5>& links) {
    TopologyConfig topo;
    topo.links = {
        {"l1", 0, 2, links[0]},
        {"l2", 2, 3, links[1]},
        {"l3", 3, 4, links[2]},
        {"l4", 1, 2, links[3]},
        {"l5", 3, 5, links[4]},
    };
    return topo;
}

TopologyConfig TopologyConfig::table_case(int case_number) {
    // (Mbps, one-way delay ms, max queue delay ms) for l1..l5.
    static constexpr double kTable[6][5][3] = {
        {{100, 10, 60}, {5, 10, 60}, {100, 10, 60}, {100, 10, 60}, {100, 10, 60}},
        {{100, 10, 120}, {5, 10, 120}, {100, 10, 120}, {100, 20, 120}, {100, 10, 120}},
        {{100, 30, 100}, {6, 10, 100}, {100, 10, 100}, {100, 20, 100}, {100, 20, 100}},
        {{100, 10, 150}, {6, 10, 150}, {100, 10, 150}, {100, 20, 150}, {100, 20, 150}},
        {{100, 5, 90}, {8, 10, 90}, {100, 5, 90}, {100, 15, 90}, {100, 5, 90}},
        {{100, 20, 120}, {8, 20, 120}, {100, 20, 120}, {100, 20, 120}, {100, 20, 120}},
    };
    if (case_number < 1 || case_number > 6) {
        throw ConfigError("unknown case " + std::to_string(case_number) + " (valid: 1-6)");
    }
    std::array<LinkConfig, 5> links;
    for (int i = 0; i < 5; ++i) {
        const auto& row = kTable[case_number - 1][i];
        links[i] = LinkConfig::from_table(row[0], row[1], row[2]);
    }
    return dumbbell(links);
}

const LinkSpec& TopologyConfig::link(const std::string& name) const {
    for (const auto& l : links) {
        if (l.name == name) {
            return l;
        }
    }
    throw ConfigError("missing link " + name);
}

LinkSpec& TopologyConfig::link(const std::string& name) {
    return const_cast<LinkSpec&>(std::as_const(*this).link(name));
}

std::vector<std::string> TopologyConfig::route(int src, int dst) const {
    // Depth-first search; validate() guarantees a tree so the path is unique.
    std::vector<std::string> path;
    std::vector<bool> visited(64, false);
    std::function<bool(int)> dfs = [&](int node) {
        if (node == dst) {
            return true;
        }
        visited.at(static_cast<std::size_t>(node)) = true;
        for (const auto& l : links) {
            int next = -1;
            if (l.node_a == node) next = l.node_b;
            if (l.node_b == node) next = l.node_a;
            if (next < 0 || visited.at(static_cast<std::size_t>(next))) {
                continue;
            }
            path.push_back(l.name);
            if (dfs(next)) {
                return true;
            }
            path.pop_back();
        }
        return false;
    };
    if (!dfs(src)) {
        throw ConfigError("no route from n" + std::to_string(src) + " to n" + std::to_string(dst));
    }
    return path;
}

std::vector<std::string> TopologyConfig::path_links(int path) const {
    if (path == 1) return route(path1_src, path1_dst);
    if (path == 2) return route(path2_src, path2_dst);
    throw ConfigError("unknown path " + std::to_string(path));
}

Seconds TopologyConfig::path_propagation(int path) const {
    Seconds total = 0.0;
    for (const auto& name : path_links(path)) {
        total += link(name).config.owd;
    }
    return total;
}

void TopologyConfig::set_bottleneck_loss(double loss_rate) { link(bottleneck).config.loss_rate = loss_rate; }

void TopologyConfig::validate() const {
    if (links.empty()) {
        throw ConfigError("topology has no links");
    }
    std::vector<int> parent(64);
    for (int i = 0; i < 64; ++i) parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (std::size_t i = 0; i < links.size(); ++i) {
        const auto& l = links[i];
        l.config.validate(l.name);
        for (std::size_t j = 0; j < i; ++j) {
            if (links[j].name == l.name) {
                throw ConfigError("duplicate link " + l.name);
            }
        }
        if (l.node_a < 0 || l.node_b < 0 || l.node_a >= 64 || l.node_b >= 64 || l.node_a == l.node_b) {
            throw ConfigError("link " + l.name + " has invalid endpoints");
        }
        const int ra = find(l.node_a);
        const int rb = find(l.node_b);
        if (ra == rb) {
            throw ConfigError("link " + l.name + " closes a cycle");
        }
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    const auto& bottleneck_link = link(bottleneck);
    for (int p : {1, 2}) {
        const auto names = path_links(p);
        if (std::find(names.begin(), names.end(), bottleneck) == names.end()) {
            throw ConfigError("path " + std::to_string(p) + " does not cross bottleneck " +
                              bottleneck_link.name);
        }
    }
}

// ---------------------------------------------------------------- loss detection

void LossDetector::on_sent(PacketNumber number, std::uint64_t segment, Seconds now) {
    outstanding_.emplace(number, OutstandingPacket{number, segment, now});
}

LossDetector::AckOutcome LossDetector::on_ack(PacketNumber number) {
    AckOutcome outcome;
    auto it = outstanding_.find(number);
    if (it == outstanding_.end()) {
        return outcome;
    }
    outcome.acked = it->second;
    outstanding_.erase(it);
    while (!outstanding_.empty() &&
           outstanding_.begin()->first + kReorderThreshold <= number) {
        outcome.lost.push_back(outstanding_.begin()->second);
        outstanding_.erase(outstanding_.begin());
    }
    return outcome;
}

std::vector<OutstandingPacket> LossDetector::on_timeout(Seconds now, Seconds rto) {
    std::vector<OutstandingPacket> lost;
    for (auto it = outstanding_.begin(); it != outstanding_.end();) {
        if (lost.empty() || it->second.sent_time + rto <= now) {
            lost.push_back(it->second);
            it = outstanding_.erase(it);
        } else {
            ++it;
        }
    }
    return lost;
}

void RtoEstimator::on_rtt(Seconds rtt) { srtt_ = srtt_ ? 0.875 * *srtt_ + 0.125 * rtt : rtt; }

Seconds RtoEstimator::rto() const { return srtt_ ? std::max(2.0 * *srtt_, kMinRto) : 1.0; }

// ---------------------------------------------------------------- controllers

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names{"learningcc", "reno", "cubic"};
    return names;
}

std::unique_ptr<Controller> make_controller(const std::string& algorithm, std::uint64_t seed) {
    if (algorithm == "learningcc") return std::make_unique<LearningCc>(seed);
    if (algorithm == "reno") return std::make_unique<Reno>();
    if (algorithm == "cubic") return std::make_unique<Cubic>();
    std::string valid;
    for (const auto& n : algorithm_names()) {
        valid += (valid.empty() ? "" : ", ") + n;
    }
    throw ConfigError("unknown algorithm '" + algorithm + "' (valid: " + valid + ")");
}

// ---------------------------------------------------------------- simulator

namespace {

struct Packet {
    int flow = 0;
    bool is_ack = false;
    PacketNumber number = 0;
    std::uint64_t segment = 0;
    std::uint32_t wire_bytes = 0;
    Seconds send_time = 0.0;
    std::size_t hop = 0;
};

struct Port {
    LinkConfig config;
    bool forward_bottleneck = false;
    DropTailQueue<Packet> queue;
    std::optional<Packet> transmitting;
};

enum class EventKind { arrival, tx_complete, rto, flow_start, host_departure };

struct Event {
    Seconds time;
    std::uint64_t order;
    EventKind kind;
    int index;              // port for tx_complete, flow for rto / flow_start
    std::uint64_t token;    // rto generation
    Packet packet;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.order > b.order;
    }
};

struct Flow {
    FlowConfig config;
    std::unique_ptr<Controller> cc;
    DeliveryTracker tracker;
    LossDetector detector;
    RtoEstimator rto;
    Rng loss_rng{1};
    Rng jitter_rng{1};
    Seconds last_host_departure = 0.0;
    std::vector<int> forward_ports;
    std::vector<int> reverse_ports;

    PacketNumber next_number = 1;
    std::uint64_t next_segment = 0;
    std::deque<std::uint64_t> retransmit;
    std::vector<bool> segment_acked;
    std::vector<bool> segment_received;
    Bytes bytes_in_flight = 0.0;
    bool pending_loss = false;
    bool rto_armed = false;
    std::uint64_t rto_generation = 0;
    FlowTrace trace;
};

class Simulator {
public:
    Simulator(const TopologyConfig& topology, const std::vector<FlowConfig>& flows, std::uint64_t seed,
              Seconds duration, const SimulationOptions& options)
        : duration_(duration), options_(options) {
        build_ports(topology);
        host_jitter_ = options.host_jitter.value_or(
            topology.link(topology.bottleneck).config.serialization_delay(kDataWireBytes));
        for (const auto& fc : flows) {
            if (!(fc.duration > 0.0)) {
                throw ConfigError("flow " + std::to_string(fc.flow_id) + ": duration must be positive");
            }
            if (fc.start_time < 0.0) {
                throw ConfigError("flow " + std::to_string(fc.flow_id) + ": negative start time");
            }
            Flow flow;
            flow.config = fc;
            flow.cc = make_controller(fc.algorithm, stream_seed(seed, static_cast<std::uint64_t>(fc.flow_id)));
            flow.loss_rng = Rng(stream_seed(seed, 1000 + static_cast<std::uint64_t>(fc.flow_id)));
            flow.jitter_rng = Rng(stream_seed(seed, 2000 + static_cast<std::uint64_t>(fc.flow_id)));
            flow.forward_ports = ports_for(topology, fc.path, false);
            flow.reverse_ports = ports_for(topology, fc.path, true);
            flow.trace.flow_id = fc.flow_id;
            flow.trace.path = fc.path;
            flow.trace.algorithm = fc.algorithm;
            flow.trace.start_time = fc.start_time;
            flow.trace.duration = fc.duration;
            flows_.push_back(std::move(flow));
        }
    }

    SimulationResult run() {
        for (std::size_t i = 0; i < flows_.size(); ++i) {
            schedule(flows_[i].config.start_time, EventKind::flow_start, static_cast<int>(i), 0, {});
        }
        while (!events_.empty() && events_.top().time <= duration_) {
            Event ev = events_.top();
            events_.pop();
            now_ = ev.time;
            ++stats_.events;
            dispatch(ev);
            if (options_.on_event) {
                options_.on_event(stats_);
            }
        }
        SimulationResult result;
        result.duration = duration_;
        result.stats = stats_;
        for (auto& flow : flows_) {
            if (auto* lcc = dynamic_cast<LearningCc*>(flow.cc.get())) {
                flow.trace.bandit = lcc->stats();
            }
            result.flows.push_back(std::move(flow.trace));
        }
        return result;
    }

private:
    void build_ports(const TopologyConfig& topology) {
        topology.validate();
        for (const auto& l : topology.links) {
            for (int dir = 0; dir < 2; ++dir) {
                Port port;
                port.config = l.config;
                port.queue = DropTailQueue<Packet>(l.config.queue_capacity_bytes());
                ports_.push_back(std::move(port));
            }
        }
        // Forward direction of the bottleneck is the one data packets use.
        const auto names = topology.path_links(1);
        const auto path_ports = ports_for(topology, 1, false);
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == topology.bottleneck) {
                ports_[static_cast<std::size_t>(path_ports[i])].forward_bottleneck = true;
            }
        }
        for (std::size_t i = 0; i < ports_.size(); ++i) {
            if (!ports_[i].forward_bottleneck) {
                ports_[i].config.loss_rate = 0.0;
            }
        }
    }

    static std::vector<int> ports_for(const TopologyConfig& topology, int path, bool reverse) {
        const int src = path == 1 ? topology.path1_src : topology.path2_src;
        const int dst = path == 1 ? topology.path1_dst : topology.path2_dst;
        const int from = reverse ? dst : src;
        const int to = reverse ? src : dst;
        std::vector<int> ports;
        int node = from;
        for (const auto& name : topology.route(from, to)) {
            for (std::size_t i = 0; i < topology.links.size(); ++i) {
                const auto& l = topology.links[i];
                if (l.name != name) continue;
                const bool a_to_b = l.node_a == node;
                ports.push_back(static_cast<int>(2 * i + (a_to_b ? 0 : 1)));
                node = a_to_b ? l.node_b : l.node_a;
            }
        }
        return ports;
    }

    void schedule(Seconds time, EventKind kind, int index, std::uint64_t token, const Packet& packet) {
        events_.push(Event{time, next_order_++, kind, index, token, packet});
    }

    void dispatch(const Event& ev) {
        switch (ev.kind) {
            case EventKind::flow_start:
                try_send(flows_[static_cast<std::size_t>(ev.index)]);
                break;
            case EventKind::tx_complete:
                on_tx_complete(ev.index);
                break;
            case EventKind::arrival:
                on_arrival(ev.packet);
                break;
            case EventKind::rto:
                on_rto(flows_[static_cast<std::size_t>(ev.index)], ev.token);
                break;
            case EventKind::host_departure:
                enqueue(flows_[static_cast<std::size_t>(ev.index)].forward_ports.front(), ev.packet);
                break;
        }
    }

    const std::vector<int>& route_of(const Packet& p) const {
        const auto& flow = flows_[static_cast<std::size_t>(p.flow)];
        return p.is_ack ? flow.reverse_ports : flow.forward_ports;
    }

    void enqueue(int port_index, const Packet& packet) {
        Port& port = ports_[static_cast<std::size_t>(port_index)];
        if (!port.transmitting) {
            start_transmission(port_index, packet);
            return;
        }
        if (port.queue.enqueue(packet, packet.wire_bytes) == Verdict::dropped) {
            if (!packet.is_ack) {
                ++stats_.queue_drops;
                --stats_.data_in_network;
            }
            return;
        }
        if (port.queue.occupancy_bytes() > port.queue.capacity_bytes()) {
            ++stats_.max_queue_excess;
        }
    }

    void start_transmission(int port_index, const Packet& packet) {
        Port& port = ports_[static_cast<std::size_t>(port_index)];
        port.transmitting = packet;
        schedule(now_ + port.config.serialization_delay(packet.wire_bytes), EventKind::tx_complete,
                 port_index, 0, {});
    }

    void on_tx_complete(int port_index) {
        Port& port = ports_[static_cast<std::size_t>(port_index)];
        Packet packet = *port.transmitting;
        port.transmitting.reset();
        schedule(now_ + port.config.owd, EventKind::arrival, port_index, 0, packet);
        if (!port.queue.empty()) {
            start_transmission(port_index, port.queue.pop());
        }
    }

    void on_arrival(Packet packet) {
        const auto& route = route_of(packet);
        const Port& port = ports_[static_cast<std::size_t>(route[packet.hop])];
        if (!packet.is_ack && port.forward_bottleneck && port.config.loss_rate > 0.0) {
            Flow& flow = flows_[static_cast<std::size_t>(packet.flow)];
            if (apply_random_loss(port.config, flow.loss_rng.uniform()) == Verdict::dropped) {
                ++stats_.random_drops;
                --stats_.data_in_network;
                return;
            }
        }
        ++packet.hop;
        if (packet.hop < route.size()) {
            enqueue(route[packet.hop], packet);
            return;
        }
        if (packet.is_ack) {
            on_ack(flows_[static_cast<std::size_t>(packet.flow)], packet);
        } else {
            on_data(flows_[static_cast<std::size_t>(packet.flow)], packet);
        }
    }

    void on_data(Flow& flow, const Packet& packet) {
        ++stats_.data_arrived;
        --stats_.data_in_network;
        if (flow.segment_received.size() <= packet.segment) {
            flow.segment_received.resize(packet.segment + 1, false);
        }
        if (!flow.segment_received[packet.segment]) {
            flow.segment_received[packet.segment] = true;
            DeliveryRecord rec;
            rec.segment = packet.segment;
            rec.bytes = kMss;
            rec.send_time = packet.send_time;
            rec.recv_time = now_;
            rec.owd = now_ - packet.send_time;
            flow.trace.deliveries.push_back(rec);
            flow.trace.total_bytes += kMss;
        }
        Packet ack = packet;
        ack.is_ack = true;
        ack.wire_bytes = kAckWireBytes;
        ack.hop = 0;
        enqueue(flow.reverse_ports.front(), ack);
    }

    void declare_lost(Flow& flow, const OutstandingPacket& lost) {
        flow.tracker.on_lost(lost.number);
        flow.bytes_in_flight -= kMss;
        ++flow.trace.losses_detected;
        if (!flow.segment_acked[lost.segment]) {
            flow.retransmit.push_back(lost.segment);
        }
    }

    void on_ack(Flow& flow, const Packet& packet) {
        auto outcome = flow.detector.on_ack(packet.number);
        flow.segment_acked[packet.segment] = true;
        if (!outcome.acked) {
            // Ack for a packet already declared lost.
            try_send(flow);
            return;
        }
        const SentPacketRecord record = flow.tracker.on_acked(packet.number, now_);
        flow.bytes_in_flight -= record.bytes;

        AckEvent ack;
        ack.acked_sequence = packet.number;
        ack.ack_receive_time = now_;
        ack.rtt_sample = now_ - record.sent_time;
        ack.acked_bytes = record.bytes;
        ack.rate = flow.tracker.sample_rate(record, now_);
        flow.rto.on_rtt(ack.rtt_sample);

        for (const auto& lost : outcome.lost) {
            declare_lost(flow, lost);
        }
        ack.has_loss = !outcome.lost.empty() || flow.pending_loss;
        flow.pending_loss = false;
        ack.largest_sent = flow.tracker.largest_sent();
        flow.cc->on_ack(ack);

        if (flow.detector.empty()) {
            flow.rto_armed = false;
            ++flow.rto_generation;
        } else {
            arm_rto(flow);
        }
        try_send(flow);
    }

    // Packets leave the sender after a small random processing delay, in order.
    void send_from_host(Flow& flow, const Packet& packet) {
        if (!(host_jitter_ > 0.0)) {
            enqueue(flow.forward_ports.front(), packet);
            return;
        }
        const Seconds departure =
            std::max(flow.last_host_departure, now_ + host_jitter_ * flow.jitter_rng.uniform());
        flow.last_host_departure = departure;
        schedule(departure, EventKind::host_departure, packet.flow, 0, packet);
    }

    void arm_rto(Flow& flow) {
        flow.rto_armed = true;
        ++flow.rto_generation;
        const int index = static_cast<int>(&flow - flows_.data());
        schedule(now_ + flow.rto.rto(), EventKind::rto, index, flow.rto_generation, {});
    }

    void on_rto(Flow& flow, std::uint64_t generation) {
        if (!flow.rto_armed || generation != flow.rto_generation) {
            return;
        }
        flow.rto_armed = false;
        ++flow.trace.timeouts;
        for (const auto& lost : flow.detector.on_timeout(now_, flow.rto.rto())) {
            declare_lost(flow, lost);
        }
        flow.pending_loss = true;
        try_send(flow);
        if (!flow.detector.empty() && !flow.rto_armed) {
            arm_rto(flow);
        }
    }

    void try_send(Flow& flow) {
        if (now_ >= flow.config.start_time + flow.config.duration) {
            return;
        }
        while (flow.bytes_in_flight + kMss <= flow.cc->congestion_window()) {
            std::uint64_t segment = 0;
            bool is_retransmission = false;
            while (!flow.retransmit.empty() && flow.segment_acked[flow.retransmit.front()]) {
                flow.retransmit.pop_front();
            }
            if (!flow.retransmit.empty()) {
                segment = flow.retransmit.front();
                flow.retransmit.pop_front();
                is_retransmission = true;
            } else {
                segment = flow.next_segment++;
                flow.segment_acked.push_back(false);
            }
            const PacketNumber number = flow.next_number++;
            const SentPacketRecord record = flow.tracker.record_sent(number, kMss, now_);
            flow.cc->on_packet_sent(record);
            flow.detector.on_sent(number, segment, now_);
            flow.bytes_in_flight += kMss;

            ++flow.trace.packets_sent;
            flow.trace.retransmissions += is_retransmission ? 1 : 0;
            ++stats_.data_sent;
            ++stats_.data_in_network;

            Packet packet;
            packet.flow = static_cast<int>(&flow - flows_.data());
            packet.number = number;
            packet.segment = segment;
            packet.wire_bytes = kDataWireBytes;
            packet.send_time = now_;
            send_from_host(flow, packet);

            if (!flow.rto_armed) {
                arm_rto(flow);
            }
        }
    }

    Seconds duration_;
    SimulationOptions options_;
    Seconds host_jitter_ = 0.0;
    Seconds now_ = 0.0;
    std::uint64_t next_order_ = 0;
    std::priority_queue<Event, std::vector<Event>, EventLater> events_;
    std::vector<Port> ports_;
    std::vector<Flow> flows_;
    SimStats stats_;
};

}  // namespace

SimulationResult run_simulation(const TopologyConfig& topology, const std::vector<FlowConfig>& flows,
                                std::uint64_t seed, Seconds duration, const SimulationOptions& options) {
    if (!(duration > 0.0)) {
        throw ConfigError("simulation duration must be positive");
    }
    Simulator sim(topology, flows, seed, duration, options);
    return sim.run();
}

// ---------------------------------------------------------------- trace CSV

void write_trace_csv(std::ostream& out, const FlowTrace& trace) {
    out << "flow_id,seq,bytes,send_time_s,recv_time_s,owd_s\n";
    char line[160];
    for (const auto& r : trace.deliveries) {
        std::snprintf(line, sizeof line, "%d,%" PRIu64 ",%u,%.9f,%.9f,%.9f\n", trace.flow_id, r.segment,
                      r.bytes, r.send_time, r.recv_time, r.owd);
        out << line;
    }
}

std::vector<DeliveryRecord> read_trace_csv(std::istream& in, int* flow_id) {
    std::string line;
    if (!std::getline(in, line) || line != "flow_id,seq,bytes,send_time_s,recv_time_s,owd_s") {
        throw ConfigError("trace CSV: unexpected header");
    }
    std::vector<DeliveryRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6) {
            throw ConfigError("trace CSV: malformed row '" + line + "'");
        }
        if (flow_id) *flow_id = std::stoi(fields[0]);
        DeliveryRecord r;
        r.segment = std::stoull(fields[1]);
        r.bytes = static_cast<std::uint32_t>(std::stoul(fields[2]));
        r.send_time = std::stod(fields[3]);
        r.recv_time = std::stod(fields[4]);
        r.owd = std::stod(fields[5]);
        records.push_back(r);
    }
    return records;
}

}  // namespace banditcc
