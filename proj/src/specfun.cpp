#include "lamperti/specfun.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "lamperti/errors.hpp"

namespace lamperti {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

std::string describe(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

Complex log_gamma_right(Complex z) {
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    const Complex t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

bool is_gamma_pole(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex log_gamma(Complex z) {
    if (is_gamma_pole(z)) throw DomainError("log_gamma: pole of Gamma at z = " + describe(z));
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_right(1.0 - z);
    }
    return log_gamma_right(z);
}

Complex digamma(Complex z) {
    if (is_gamma_pole(z)) throw DomainError("digamma: pole at z = " + describe(z));
    Complex acc = 0.0;
    if (z.real() < 0.5) {
        acc = -kPi / std::tan(kPi * z);
        z = 1.0 - z;
    }
    while (std::abs(z) < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const Complex w = 1.0 / (z * z);
    // Bernoulli tail of the asymptotic expansion, Horner in 1/z^2.
    const Complex series =
        w * (1.0 / 12 -
             w * (1.0 / 120 -
                  w * (1.0 / 252 -
                       w * (1.0 / 240 - w * (1.0 / 132 - w * (691.0 / 32760 - w / 12.0))))));
    return acc + std::log(z) - 0.5 / z - series;
}

double digamma(double x) { return digamma(Complex(x, 0.0)).real(); }

Complex pochhammer(Complex z, double a) {
    if (is_gamma_pole(z)) throw DomainError("pochhammer: denominator Gamma has a pole at " + describe(z));
    if (is_gamma_pole(z + a))
        throw DomainError("pochhammer: numerator Gamma has a pole at " + describe(z + a));
    if (a == 0.0) return 1.0;
    return std::exp(log_gamma(z + a) - log_gamma(z));
}

Complex gamma_ratio(Complex z, double a) {
    if (is_gamma_pole(z + a))
        throw DomainError("gamma ratio: numerator Gamma has a pole at " + describe(z + a));
    if (is_gamma_pole(z)) return 0.0;
    if (a == 0.0) return 1.0;
    return std::exp(log_gamma(z + a) - log_gamma(z));
}

Complex beta(Complex a, Complex b) {
    if (!(a.real() > 0.0) || !(b.real() > 0.0))
        throw DomainError("beta: requires Re a > 0 and Re b > 0, got a = " + describe(a) +
                          ", b = " + describe(b));
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

} // namespace lamperti
