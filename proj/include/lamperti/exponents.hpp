#pragma once

#include <optional>
#include <vector>

#include "lamperti/measure.hpp"
#include "lamperti/specfun.hpp"

namespace lamperti {

// Closed-form characteristic exponent of a one-dimensional Lamperti stable
// process with the linear coefficient theta-tilde computed once.
class CharExponent {
public:
    explicit CharExponent(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});
    Complex operator()(double lambda) const;
    double theta_tilde() const { return theta_tilde_; }

private:
    struct Term {
        double sign;  // xi = +1 or -1
        double sigma;
        double f;
        Complex offset;  // value of the gamma-ratio term at lambda = 0
    };
    double alpha_;
    double theta_tilde_;
    double gamma_neg_alpha_;
    std::vector<Term> terms_;
};

Complex char_exponent(const LampertiCharacteristics& chars, double lambda,
                      const QuadratureSpec& spec = {});

// Direct quadrature of the Levy-Khintchine integral.
QuadResult<Complex> char_exponent_oracle(const LampertiCharacteristics& chars, double lambda,
                                         const QuadratureSpec& spec = {});

struct ExponentEvaluation {
    double lambda = 0.0;
    Complex closed_form;
    std::optional<Complex> oracle;
    std::optional<double> abs_error;
};

std::vector<ExponentEvaluation> evaluate_exponent(const LampertiCharacteristics& chars,
                                                  const std::vector<double>& lambdas, bool with_oracle,
                                                  const QuadratureSpec& spec = {});

// E exp(-lambda X_t) = exp(-t Phi(lambda)); alpha < 1, no negative jumps, drift >= 0.
class SubordinatorExponent {
public:
    explicit SubordinatorExponent(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});
    double operator()(double lambda) const;
    double drift() const { return drift_; }

private:
    double alpha_, c_plus_, beta_, drift_, gamma_neg_alpha_, offset_;
};

// E exp(lambda X_t) = exp(t Phi(lambda)); alpha in (1,2), no positive jumps.
class SpectrallyNegativeExponent {
public:
    explicit SpectrallyNegativeExponent(const LampertiCharacteristics& chars,
                                        const QuadratureSpec& spec = {});
    double operator()(double lambda) const;
    double derivative(double lambda) const;
    double theta_tilde() const { return theta_tilde_; }

private:
    double alpha_, c_minus_, rho_, theta_tilde_, gamma_neg_alpha_, offset_;
};

double laplace_subordinator(const LampertiCharacteristics& chars, double lambda,
                            const QuadratureSpec& spec = {});
double laplace_spectrally_negative(const LampertiCharacteristics& chars, double lambda,
                                   const QuadratureSpec& spec = {});

struct DensityTable {
    std::vector<double> x;
    std::vector<double> pdf;
    double integral = 0.0;
    double min_pdf = 0.0;
    double cf_at_cutoff = 0.0;  // |exp(-t Psi(cutoff))|
    bool resolution_warning = false;
};

// Fourier inversion of exp(-t Psi) on `grid_size` points with |lambda| <= cutoff.
DensityTable density_via_fft(const LampertiCharacteristics& chars, double t, std::size_t grid_size,
                             double cutoff, const QuadratureSpec& spec = {});

} // namespace lamperti
