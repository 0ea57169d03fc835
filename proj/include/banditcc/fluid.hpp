#pragma once

// Fluid approximation of per-flow rate dynamics under a congestion-event
// probability p. All rates are in packets per second; multiply by kMss for
// bytes.

#include <stdexcept>
#include <string_view>
#include <vector>

#include "banditcc/cc_core.hpp"

namespace banditcc::fluid {

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, Seconds last_valid_time)
        : std::runtime_error(what), last_valid_time(last_valid_time) {}
    Seconds last_valid_time;
};

struct FluidParams {
    double p = 0.01;
    Seconds rtt = 0.1;
    Seconds rtt_min = 0.05;
    double alpha_bar = 1.0;
    double beta = 0.5;
    double beta_l = 0.9;
};

enum class Model { reno, learningcc };

std::string_view model_name(Model m);

/// x* = sqrt((1 - p) / (beta p)) / rtt
double reno_equilibrium(const FluidParams& params);

/// x* = sqrt(alpha_bar (1 - p) / p) / sqrt(rtt (rtt - beta_l rtt_min))
double learningcc_equilibrium(const FluidParams& params);

double equilibrium(Model model, const FluidParams& params);

/// Smallest average increase factor for which LearningCC out-runs Reno:
/// (1 - beta_l (rtt_min / rtt)) / beta, floored at 0.
double crossover_alpha(const FluidParams& params);

/// Right-hand side dx/dt at rate x. For LearningCC the bandwidth estimate is
/// taken equal to x.
double rate_derivative(Model model, const FluidParams& params, double x);

struct TrajectoryPoint {
    Seconds t;
    double x;
};

/// Classic fourth-order Runge-Kutta with a fixed step, which must not exceed rtt / 10.
std::vector<TrajectoryPoint> integrate_rate_ode(Model model, const FluidParams& params, double x0,
                                                Seconds horizon, Seconds step);

inline double to_bytes_per_second(double packets_per_second) { return packets_per_second * kMss; }

}  // namespace banditcc::fluid
