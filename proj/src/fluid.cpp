#include "banditcc/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace banditcc::fluid {

namespace {

void check_common(const FluidParams& params) {
    if (!(params.p > 0.0 && params.p < 1.0)) {
        throw DomainError("congestion probability p must lie in (0, 1), got " + std::to_string(params.p));
    }
    if (!(params.rtt > 0.0)) {
        throw DomainError("rtt must be positive");
    }
    if (!(params.rtt_min >= 0.0)) {
        throw DomainError("rtt_min must be non-negative");
    }
}

double learningcc_denominator(const FluidParams& params) {
    const double gap = params.rtt - params.beta_l * params.rtt_min;
    if (!(gap > 0.0)) {
        throw DomainError("rtt must exceed beta_l * rtt_min for a real equilibrium");
    }
    return params.rtt * gap;
}

}  // namespace

std::string_view model_name(Model m) { return m == Model::reno ? "reno" : "learningcc"; }

double reno_equilibrium(const FluidParams& params) {
    check_common(params);
    if (!(params.beta > 0.0)) {
        throw DomainError("beta must be positive");
    }
    return std::sqrt((1.0 - params.p) / (params.beta * params.p)) / params.rtt;
}

double learningcc_equilibrium(const FluidParams& params) {
    check_common(params);
    const double denom = learningcc_denominator(params);
    return std::sqrt(params.alpha_bar * (1.0 - params.p) / params.p) / std::sqrt(denom);
}

double equilibrium(Model model, const FluidParams& params) {
    return model == Model::reno ? reno_equilibrium(params) : learningcc_equilibrium(params);
}

double crossover_alpha(const FluidParams& params) {
    const double ratio = params.rtt_min / params.rtt;
    return std::max(0.0, (1.0 - params.beta_l * ratio) / params.beta);
}

double rate_derivative(Model model, const FluidParams& params, double x) {
    const double p = params.p;
    const double rtt = params.rtt;
    if (model == Model::reno) {
        return (1.0 - p) / (rtt * rtt) - params.beta * x * x * p;
    }
    const double bw = x;
    return params.alpha_bar * (1.0 - p) / (rtt * rtt) +
           p * params.beta_l * x * bw * params.rtt_min / rtt - p * x * x;
}

std::vector<TrajectoryPoint> integrate_rate_ode(Model model, const FluidParams& params, double x0,
                                                Seconds horizon, Seconds step) {
    check_common(params);
    if (!(x0 > 0.0)) {
        throw DomainError("initial rate must be positive");
    }
    if (!(step > 0.0) || step > params.rtt / 10.0) {
        throw DomainError("step must lie in (0, rtt/10]");
    }
    if (!(horizon >= 0.0)) {
        throw DomainError("horizon must be non-negative");
    }
    const auto f = [&](double x) { return rate_derivative(model, params, x); };
    const auto steps = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));

    std::vector<TrajectoryPoint> out;
    out.reserve(steps + 1);
    out.push_back({0.0, x0});
    double x = x0;
    for (std::size_t i = 1; i <= steps; ++i) {
        const double h = std::min(step, horizon - static_cast<double>(i - 1) * step);
        const double k1 = f(x);
        const double k2 = f(x + 0.5 * h * k1);
        const double k3 = f(x + 0.5 * h * k2);
        const double k4 = f(x + h * k3);
        const double next = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next) || next < 0.0) {
            throw IntegrationError("fluid integration diverged", out.back().t);
        }
        x = next;
        out.push_back({static_cast<double>(i) * step, x});
    }
    if (!out.empty() && steps > 0) {
        out.back().t = horizon;
    }
    return out;
}

}  // namespace banditcc::fluid
