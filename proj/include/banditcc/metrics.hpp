#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditcc/cc_core.hpp"
#include "banditcc/netsim.hpp"

namespace banditcc {

struct MetricUndefined : std::domain_error {
    using std::domain_error::domain_error;
};

struct FlowSummary {
    int flow_id = 0;
    std::uint64_t total_bytes = 0;
    Seconds duration = 0.0;
    Seconds mean_owd = 0.0;
    double rate = 0.0;  // bytes per second
};

/// Session duration defaults to the flow's configured duration.
FlowSummary summarize(const FlowTrace& trace, std::optional<Seconds> duration = std::nullopt);

/// Packet-weighted mean one-way delay over the pooled deliveries of `flows`.
Seconds average_owd(std::span<const FlowTrace> flows);
Seconds average_owd(std::span<const std::vector<DeliveryRecord>> flows);

/// (sum x)^2 / (n * sum x^2).
double jain_index(std::span<const double> rates);

/// x1 / x2; nullopt when the competitor got nothing.
std::optional<double> throughput_ratio(double x1, double x2);

/// Delivered payload over capacity * time; capacity in bytes per second.
double channel_utilization(std::span<const FlowTrace> flows, double capacity_bytes_per_s, Seconds duration);
double channel_utilization_bytes(std::uint64_t delivered_bytes, double capacity_bytes_per_s,
                                 Seconds duration);

}  // namespace banditcc
