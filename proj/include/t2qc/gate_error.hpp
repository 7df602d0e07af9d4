#pragma once

#include <span>
#include <string>
#include <vector>

namespace t2qc {

/// Rotation-gate accuracy budget for the probability-qubit amplitude
/// p(T) = exp(-a/T). The stated amplitude exponents are a = 1 for the 1D
/// system and a = 2 for 2D.
struct ErrorBudget {
    double amplitude_exponent = 2.0;  // a in p = exp(-a/T)
    double delta_t = 0.1;             // target temperature resolution, units of J

    void validate() const;
};

/// Maximum allowable amplitude error for a temperature resolution delta_t:
/// delta_p = |dp/dT| delta_t = (a/T^2) exp(-a/T) delta_t.
double required_accuracy(double temperature, double amplitude_exponent, double delta_t);

struct AccuracyPoint {
    double temperature;
    double delta_p;
};

std::vector<AccuracyPoint> accuracy_curve(double amplitude_exponent, double delta_t,
                                          std::span<const double> temperatures);

/// CSV with header T,delta_p_1d,delta_p_2d (a = 1 and a = 2 curves).
std::string accuracy_curve_csv(double delta_t, std::span<const double> temperatures);

/// Models an imperfect rotation: the amplitude p = sqrt(P) is shifted by
/// (2u - 1) * delta_p, clamped to [0, 1], and squared back into a
/// probability. u is an externally drawn uniform in [0, 1).
double inject_rotation_error(double prob_target, double delta_p, double u);

}  // namespace t2qc
