#include "banditcc/metrics.hpp"

#include <cmath>

namespace banditcc {

FlowSummary summarize(const FlowTrace& trace, std::optional<Seconds> duration) {
    FlowSummary s;
    s.flow_id = trace.flow_id;
    s.total_bytes = trace.total_bytes;
    s.duration = duration.value_or(trace.duration);
    if (!(s.duration > 0.0)) {
        throw MetricUndefined("flow " + std::to_string(trace.flow_id) + ": non-positive duration");
    }
    s.rate = static_cast<double>(s.total_bytes) / s.duration;
    if (!trace.deliveries.empty()) {
        double sum = 0.0;
        for (const auto& r : trace.deliveries) sum += r.owd;
        s.mean_owd = sum / static_cast<double>(trace.deliveries.size());
    }
    return s;
}

Seconds average_owd(std::span<const std::vector<DeliveryRecord>> flows) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& deliveries : flows) {
        if (deliveries.empty()) {
            throw MetricUndefined("average_owd: a flow has no deliveries");
        }
        for (const auto& r : deliveries) {
            sum += r.owd;
        }
        count += deliveries.size();
    }
    if (count == 0) {
        throw MetricUndefined("average_owd: no flows");
    }
    return sum / static_cast<double>(count);
}

Seconds average_owd(std::span<const FlowTrace> flows) {
    std::vector<std::vector<DeliveryRecord>> pooled;
    pooled.reserve(flows.size());
    for (const auto& f : flows) {
        pooled.push_back(f.deliveries);
    }
    return average_owd(std::span<const std::vector<DeliveryRecord>>(pooled));
}

double jain_index(std::span<const double> rates) {
    if (rates.empty()) {
        throw MetricUndefined("jain_index: no rates");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double x : rates) {
        if (x < 0.0 || !std::isfinite(x)) {
            throw MetricUndefined("jain_index: rates must be finite and non-negative");
        }
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq == 0.0) {
        throw MetricUndefined("jain_index: all rates are zero");
    }
    return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

std::optional<double> throughput_ratio(double x1, double x2) {
    if (!(x2 > 0.0)) {
        return std::nullopt;
    }
    return x1 / x2;
}

double channel_utilization_bytes(std::uint64_t delivered_bytes, double capacity_bytes_per_s,
                                 Seconds duration) {
    if (!(capacity_bytes_per_s > 0.0) || !(duration > 0.0)) {
        throw MetricUndefined("channel_utilization: capacity and duration must be positive");
    }
    return static_cast<double>(delivered_bytes) / (capacity_bytes_per_s * duration);
}

double channel_utilization(std::span<const FlowTrace> flows, double capacity_bytes_per_s, Seconds duration) {
    std::uint64_t total = 0;
    for (const auto& f : flows) {
        total += f.total_bytes;
    }
    return channel_utilization_bytes(total, capacity_bytes_per_s, duration);
}

}  // namespace banditcc
