#pragma once

#include <string>

#include "lamperti/measure.hpp"

namespace lamperti {

// Levy density of the background driving process of the OU representation
// with rate c; one-dimensional chars, max f <= alpha + 1/2.
double ou_driver_density(const LampertiCharacteristics& chars, double x, double rate);

// Parent process of a driftless Lamperti stable subordinator: psi(lambda) = lambda Phi_L(lambda).
double parent_laplace(const LampertiCharacteristics& chars, double lambda);

// Levy density of the parent process at x < 0.
double parent_levy_density(const LampertiCharacteristics& chars, double x);

// The two Lamperti stable summands (alpha+1, beta+1) and (alpha+1, beta) of the parent process.
struct ParentComponents {
    LampertiCharacteristics first;
    LampertiCharacteristics second;
};
ParentComponents parent_components(const LampertiCharacteristics& chars);

// c_+ int_x^inf e^{beta r}(e^r - 1)^{-(alpha+1)} dr by its binomial series, remainder below tol.
double tail_series(const LampertiCharacteristics& chars, double x, double tol = 1e-14);

enum class ScaleVariant { beta1, killed, wstar };
const char* to_string(ScaleVariant v);
ScaleVariant parse_scale_variant(const std::string& name);

// Laplace exponents of the killed construction. killing_rate = -raw_K > 0.
struct KilledExponents {
    double killing_rate = 0.0;
    double raw_K = 0.0;
    double alpha = 0.0, beta = 0.0, c_plus = 0.0;

    double phi_killed(double lambda) const;   // -c_+ Gamma(-alpha) (lambda + 1 - beta)_alpha
    double psi_yp(double lambda) const;       // lambda^2 / phi_killed
    double psi_yp_star(double lambda) const;  // lambda phi_killed
};
KilledExponents killed_exponents(const LampertiCharacteristics& chars);

class ScaleFunction {
public:
    ScaleFunction(const LampertiCharacteristics& chars, ScaleVariant variant);
    double operator()(double x) const;
    // The Laplace exponent psi with int e^{-lambda x} W(x) dx = 1 / psi(lambda).
    double psi(double lambda) const;
    ScaleVariant variant() const { return variant_; }

private:
    double integral(double x) const;  // int_0^x e^{-kappa y}(1 - e^{-y})^{alpha-1} dy
    double killed(double x) const;

    ScaleVariant variant_;
    double alpha_, beta_, c_plus_;
    double constant_ = 0.0;
    double kappa_ = 0.0;
    double series_limit_ = 0.0;  // int_0^inf y e^{beta y}(e^y-1)^{-(alpha+1)} dy
    KilledExponents killed_exponents_;
};

struct ScaleFunctionTable {
    Vector x_grid;
    Vector w_values;
    ScaleVariant method = ScaleVariant::beta1;
};

ScaleFunctionTable scale_function(const LampertiCharacteristics& chars, ScaleVariant variant,
                                  const Vector& x_grid);

// int_0^inf e^{-lambda x} W(x) dx by adaptive quadrature up to 60/lambda plus a
// linear extrapolation of W beyond.
double scale_laplace_transform(const ScaleFunction& w, double lambda);

} // namespace lamperti
