#pragma once

#include <optional>
#include <string>

#include "lamperti/measure.hpp"

namespace lamperti {

enum class Tristate { yes, no, undetermined };
enum class DriftDirection { to_plus_infinity, oscillates, to_minus_infinity };

const char* to_string(Tristate t);
const char* to_string(DriftDirection d);

struct ClassificationReport {
    bool finite_variation = false;
    double p_threshold = 0.0;
    Tristate creeps_up = Tristate::undetermined;
    Tristate zero_regular_upward = Tristate::undetermined;
    bool selfdecomposable = false;
    bool jurek = true;
    double tail_class_delta = 0.0;
    std::optional<DriftDirection> drift;  // d = 1 only
    std::optional<double> mean;           // d = 1 only
    std::optional<double> rho_zero;       // spectrally negative, alpha in (1,2)
    std::optional<double> cramer_root;    // spectrally negative and drifting to -infinity
    std::optional<bool> has_increase_times;
};

ClassificationReport classify(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

bool is_spectrally_negative(const LampertiCharacteristics& chars);

// Derivative at 0+ of the spectrally negative Laplace exponent with theta-tilde = 0,
// written without the removable singularities at rho = 1, 2.
double drift_root_function(double alpha, double c_minus, double rho);

// Root of drift_root_function in (1,2).
double rho_zero(double alpha, double c_minus);

struct DriftReport {
    DriftDirection direction;
    double rho_zero;
    double g_value;  // drift_root_function at the configured rho
};

// Requires alpha in (1,2), c_plus = 0 and theta-tilde = 0.
DriftReport drift_classification(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

// Sets theta so that theta-tilde vanishes (alpha >= 1) or the drift to zero (alpha < 1).
LampertiCharacteristics with_zero_theta_tilde(const LampertiCharacteristics& chars,
                                              const QuadratureSpec& spec = {});

// Positive zero of the spectrally negative Laplace exponent.
double cramer_root(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

bool has_increase_times(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

// int_a^b lambda^{-3} Phi(lambda) d lambda for the spectrally negative exponent.
double increase_times_integral(const LampertiCharacteristics& chars, double a, double b,
                               const QuadratureSpec& spec = {});

} // namespace lamperti
