#pragma once

#include <complex>

namespace lamperti {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Continuous branch of log Gamma (imaginary part is not reduced mod 2*pi).
Complex log_gamma(Complex z);

Complex digamma(Complex z);

// (z)_a = Gamma(z+a)/Gamma(z). Throws on a pole of either Gamma.
Complex pochhammer(Complex z, double a);

// B(a,b) for Re a, Re b > 0.
Complex beta(Complex a, Complex b);

// Gamma(z+a)/Gamma(z) where a pole of the denominator yields 0.
// A pole of the numerator still throws.
Complex gamma_ratio(Complex z, double a);

double digamma(double x);

bool is_gamma_pole(Complex z);

} // namespace lamperti
