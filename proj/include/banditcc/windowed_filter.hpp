#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>

namespace banditcc {

/// Sliding time-window extremum (min or max) over timestamped samples.
///
/// Keeps a monotone deque: a sample that is beaten by a newer one can never be
/// the answer again, so it is dropped on insert. Queries take an explicit
/// window length, which may change between calls (the bandwidth filter's
/// window scales with srtt).
template <typename T, typename Better = std::greater<T>>
class WindowedFilter {
public:
    void update(double time, T value) {
        while (!samples_.empty() && !better_(samples_.back().value, value)) {
            samples_.pop_back();
        }
        samples_.push_back({time, value});
    }

    /// Best sample with timestamp >= now - window; older samples are discarded.
    std::optional<T> best(double now, double window) {
        const double cutoff = now - window;
        while (!samples_.empty() && samples_.front().time < cutoff) {
            samples_.pop_front();
        }
        if (samples_.empty()) {
            return std::nullopt;
        }
        return samples_.front().value;
    }

    /// Best sample ever retained, without expiring anything.
    std::optional<T> peek() const {
        if (samples_.empty()) {
            return std::nullopt;
        }
        return samples_.front().value;
    }

    bool empty() const { return samples_.empty(); }
    void clear() { samples_.clear(); }

private:
    struct Sample {
        double time;
        T value;
    };
    std::deque<Sample> samples_;
    [[no_unique_address]] Better better_;
};

template <typename T>
using WindowedMax = WindowedFilter<T, std::greater<T>>;
template <typename T>
using WindowedMin = WindowedFilter<T, std::less<T>>;

}  // namespace banditcc
