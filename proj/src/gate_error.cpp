#include "t2qc/gate_error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace t2qc {

void ErrorBudget::validate() const {
    if (!(amplitude_exponent > 0.0))
        throw std::invalid_argument("amplitude exponent must be positive");
    if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be positive");
}

double required_accuracy(double temperature, double amplitude_exponent, double delta_t) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    ErrorBudget{amplitude_exponent, delta_t}.validate();
    const double a = amplitude_exponent;
    return a / (temperature * temperature) * std::exp(-a / temperature) * delta_t;
}

std::vector<AccuracyPoint> accuracy_curve(double amplitude_exponent, double delta_t,
                                          std::span<const double> temperatures) {
    std::vector<AccuracyPoint> out;
    out.reserve(temperatures.size());
    for (double t : temperatures)
        out.push_back({t, required_accuracy(t, amplitude_exponent, delta_t)});
    return out;
}

std::string accuracy_curve_csv(double delta_t, std::span<const double> temperatures) {
    const auto curve_1d = accuracy_curve(1.0, delta_t, temperatures);
    const auto curve_2d = accuracy_curve(2.0, delta_t, temperatures);
    std::string out = "T,delta_p_1d,delta_p_2d\n";
    char line[96];
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", temperatures[i],
                      curve_1d[i].delta_p, curve_2d[i].delta_p);
        out += line;
    }
    return out;
}

double inject_rotation_error(double prob_target, double delta_p, double u) {
    if (!(prob_target >= 0.0 && prob_target <= 1.0))
        throw std::invalid_argument("probability must be in [0, 1]");
    if (delta_p < 0.0) throw std::invalid_argument("delta_p must be non-negative");
    if (delta_p == 0.0) return prob_target;
    const double p = std::sqrt(prob_target) + (2.0 * u - 1.0) * delta_p;
    const double clamped = std::clamp(p, 0.0, 1.0);
    return clamped * clamped;
}

}  // namespace t2qc
