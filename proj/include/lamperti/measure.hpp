#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lamperti/quadrature.hpp"

namespace lamperti {

using Vector = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

// One atom of the spherical measure: sigma({xi}) = sigma, f(xi) = f.
struct Direction {
    Vector xi;
    double sigma = 0.0;
    double f = 0.0;
};

// Characteristics (alpha, f, sigma, theta) with the optional drift for alpha < 1.
// The exponent convention is E exp(i<y,X_t>) = exp(-t Psi(y)) with
// Psi(y) = i<y,theta> + int (1 - e^{i<y,x>} + i<y,x> 1{|x|<1}) nu(dx).
struct LampertiCharacteristics {
    double alpha = 0.0;
    std::vector<Direction> directions;
    Vector theta;
    std::optional<Vector> drift;

    // Throws DomainError naming the offending field.
    void validate() const;

    std::size_t dimension() const { return theta.size(); }
    bool is_one_dimensional() const { return dimension() == 1; }
    double gamma() const;        // max f
    double sigma_total() const;  // sigma(S^{d-1})

    // One-dimensional accessors; beta/rho refer to f(+1)/f(-1).
    double c_plus() const;
    double c_minus() const;
    double beta() const;
    double rho() const;

    // Directions with zero weight are omitted.
    static LampertiCharacteristics one_dimensional(double alpha, double beta, double rho,
                                                   double c_plus, double c_minus,
                                                   double theta = 0.0);
};

// sigma-free radial density e^{rf}(e^r - 1)^{-(alpha+1)}
double lamperti_density(double alpha, double f, double r);
// log((e^r - 1)/r), accurate for small r
double log_expm1_over_r(double r);
// r^{alpha+1} times the sigma-free density; equals 1 at r = 0
double density_kernel(double alpha, double f, double r);

// int_a^b r^p e^{rf}(e^r-1)^{-(alpha+1)} dr for 0 <= a < b <= inf (b may be +infinity).
QuadResult<double> radial_integral(double alpha, double f, double p, double a, double b,
                                   const QuadratureSpec& spec = {});

double density(const LampertiCharacteristics& chars, std::size_t direction_index, double r);
double tail(const LampertiCharacteristics& chars, std::size_t direction_index, double x,
            const QuadratureSpec& spec = {});

enum class Region { inner, outer };

struct MomentValue {
    double value = 0.0;
    bool divergent = false;
};

MomentValue truncated_moment(const LampertiCharacteristics& chars, double p, Region region,
                             const QuadratureSpec& spec = {});

double exp_moment_threshold(const LampertiCharacteristics& chars);

enum class Regime { short_time, long_time };

Vector eta_centering(const LampertiCharacteristics& chars, Regime regime,
                     const QuadratureSpec& spec = {});

struct StructuralConstants {
    Vector a_tilde_beta;  // one entry per +1 direction
    Vector b_tilde_rho;   // one entry per -1 direction
    double theta_tilde = 0.0;
};

// a-tilde integral for a direction with f(xi) = f (same expression for b-tilde).
double a_tilde(double alpha, double f, const QuadratureSpec& spec = {});

StructuralConstants structural_constants(const LampertiCharacteristics& chars,
                                         const QuadratureSpec& spec = {});

Matrix covariance_matrix(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

// sum_k xi_k sigma_k int_a^b r g_k(r) dr
Vector weighted_first_moment(const LampertiCharacteristics& chars, double a, double b,
                             const QuadratureSpec& spec = {});

// Drift of the uncompensated representation, alpha < 1 only: the configured
// drift if present, otherwise -theta - int_{|x|<=1} x nu(dx).
Vector effective_drift(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

// E[X_1] = -theta + int_{|x|>1} x nu(dx); finite for every valid chars.
Vector mean_vector(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

} // namespace lamperti
