#include "lamperti/exponents.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>

namespace lamperti {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const Complex kI(0.0, 1.0);

void require_one_dimensional(const LampertiCharacteristics& chars, const char* what) {
    chars.validate();
    if (!chars.is_one_dimensional())
        throw DomainError(std::string(what) + ": unsupported dimension " + std::to_string(chars.dimension()) +
                          " (only d = 1)");
}

// (e^{iy} - 1) / (iy)
Complex first_order_ratio(double y) {
    if (y == 0.0) return 1.0;
    const double s = std::sin(0.5 * y);
    return {std::sin(y) / y, 2.0 * s * s / y};
}

// (1 - e^{iy} + iy) / y^2
Complex second_order_ratio(double y) {
    if (y == 0.0) return 0.5;
    const double s = std::sin(0.5 * y);
    const double re = 2.0 * s * s / (y * y);
    double im;
    if (std::abs(y) < 0.5) {
        const double y2 = y * y;
        double term = y / 6.0, sum = term;
        for (int n = 5; n < 20; n += 2) {
            term *= -y2 / ((n - 1) * n);
            sum += term;
        }
        im = sum;
    } else {
        im = (y - std::sin(y)) / (y * y);
    }
    return {re, im};
}

} // namespace

CharExponent::CharExponent(const LampertiCharacteristics& chars, const QuadratureSpec& spec)
    : alpha_(chars.alpha) {
    require_one_dimensional(chars, "char_exponent");
    theta_tilde_ = structural_constants(chars, spec).theta_tilde;
    gamma_neg_alpha_ = alpha_ == 1.0 ? 0.0 : std::tgamma(-alpha_);
    for (const auto& d : chars.directions) {
        Term t{d.xi[0] > 0 ? 1.0 : -1.0, d.sigma, d.f, 0.0};
        if (alpha_ == 1.0)
            t.offset = d.f == 1.0 ? Complex(0.0) : (1.0 - d.f) * digamma(Complex(2.0 - d.f));
        else
            t.offset = gamma_ratio(Complex(1.0 - d.f), alpha_);
        terms_.push_back(t);
    }
}

Complex CharExponent::operator()(double lambda) const {
    Complex psi = kI * lambda * theta_tilde_;
    for (const auto& t : terms_) {
        // Positive jumps see -i lambda, negative jumps +i lambda.
        const Complex z(1.0 - t.f, -t.sign * lambda);
        if (alpha_ == 1.0) {
            const Complex v = (z == Complex(0.0)) ? Complex(0.0) : z * digamma(z + 1.0);
            psi -= t.sigma * (v - t.offset);
        } else {
            psi -= t.sigma * gamma_neg_alpha_ * (gamma_ratio(z, alpha_) - t.offset);
        }
    }
    return psi;
}

Complex char_exponent(const LampertiCharacteristics& chars, double lambda, const QuadratureSpec& spec) {
    return CharExponent(chars, spec)(lambda);
}

QuadResult<Complex> char_exponent_oracle(const LampertiCharacteristics& chars, double lambda,
                                         const QuadratureSpec& spec) {
    require_one_dimensional(chars, "char_exponent_oracle");
    const double alpha = chars.alpha;
    const double atol = spec.abs_tol * 1e-2;
    const double rtol = spec.rel_tol * 1e-2;
    QuadResult<Complex> out;
    if (alpha < 1.0)
        out.value = -kI * lambda * effective_drift(chars, spec)[0];
    else
        out.value = kI * lambda * chars.theta[0];
    if (lambda == 0.0) return out;

    for (const auto& d : chars.directions) {
        const double s = d.xi[0] > 0 ? 1.0 : -1.0;
        const double f = d.f;
        QuadResult<Complex> part;
        // [0, 1]: the integrand is r^q times a bounded factor.
        if (alpha < 1.0) {
            auto h = [&](double r) {
                return Complex(-kI * (s * lambda) * first_order_ratio(s * lambda * r) *
                               density_kernel(alpha, f, r));
            };
            part += integrate_power_singular<Complex>(h, -alpha, 1.0, atol, rtol, spec.max_subdivisions);
        } else {
            auto h = [&](double r) {
                return Complex(lambda * lambda * second_order_ratio(s * lambda * r) *
                               density_kernel(alpha, f, r));
            };
            part += integrate_power_singular<Complex>(h, 1.0 - alpha, 1.0, atol, rtol, spec.max_subdivisions);
        }
        // [1, R]: uncompensated, exponentially damped oscillation.
        const double delta = alpha + 1.0 - f;
        double R = 1.0;
        const double step = std::max(1.0, 1.0 / delta);
        while (2.0 * lamperti_density(alpha, f, R) / delta > 1e-4 * atol) R += step;
        auto g = [&](double r) {
            const double y = s * lambda * r;
            return Complex(1.0 - std::cos(y), -std::sin(y)) * lamperti_density(alpha, f, r);
        };
        part += gauss_kronrod<Complex>(g, 1.0, R, atol, rtol, spec.max_subdivisions);
        out.value += d.sigma * part.value;
        out.error += d.sigma * part.error;
        out.converged = out.converged && part.converged;
    }
    return out;
}

std::vector<ExponentEvaluation> evaluate_exponent(const LampertiCharacteristics& chars,
                                                  const std::vector<double>& lambdas, bool with_oracle,
                                                  const QuadratureSpec& spec) {
    const CharExponent psi(chars, spec);
    std::vector<ExponentEvaluation> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) {
        ExponentEvaluation e;
        e.lambda = l;
        e.closed_form = psi(l);
        if (with_oracle) {
            auto o = char_exponent_oracle(chars, l, spec);
            require_converged(o, spec.abs_tol, spec.rel_tol, "char_exponent_oracle");
            e.oracle = o.value;
            e.abs_error = std::abs(e.closed_form - o.value);
        }
        out.push_back(e);
    }
    return out;
}

SubordinatorExponent::SubordinatorExponent(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    require_one_dimensional(chars, "laplace_subordinator");
    if (!(chars.alpha < 1.0)) throw DomainError("laplace_subordinator: requires alpha in (0,1)");
    if (chars.c_minus() != 0.0) throw DomainError("laplace_subordinator: requires c_minus = 0");
    alpha_ = chars.alpha;
    c_plus_ = chars.c_plus();
    beta_ = chars.beta();
    drift_ = effective_drift(chars, spec)[0];
    if (drift_ < 0.0)
        throw DomainError("laplace_subordinator: drift must be nonnegative (set the drift field)");
    gamma_neg_alpha_ = std::tgamma(-alpha_);
    offset_ = gamma_ratio(Complex(1.0 - beta_), alpha_).real();
}

double SubordinatorExponent::operator()(double lambda) const {
    if (!(lambda >= 0.0)) throw DomainError("laplace_subordinator: lambda must be nonnegative");
    if (lambda == 0.0) return 0.0;
    return drift_ * lambda -
           c_plus_ * gamma_neg_alpha_ * (gamma_ratio(Complex(lambda + 1.0 - beta_), alpha_).real() - offset_);
}

SpectrallyNegativeExponent::SpectrallyNegativeExponent(const LampertiCharacteristics& chars,
                                                       const QuadratureSpec& spec) {
    require_one_dimensional(chars, "laplace_spectrally_negative");
    if (!(chars.alpha > 1.0)) throw DomainError("laplace_spectrally_negative: requires alpha in (1,2)");
    if (chars.c_plus() != 0.0) throw DomainError("laplace_spectrally_negative: requires c_plus = 0");
    alpha_ = chars.alpha;
    c_minus_ = chars.c_minus();
    rho_ = chars.rho();
    theta_tilde_ = structural_constants(chars, spec).theta_tilde;
    gamma_neg_alpha_ = std::tgamma(-alpha_);
    offset_ = gamma_ratio(Complex(1.0 - rho_), alpha_).real();
}

double SpectrallyNegativeExponent::operator()(double lambda) const {
    if (!(lambda >= 0.0)) throw DomainError("laplace_spectrally_negative: lambda must be nonnegative");
    if (lambda == 0.0) return 0.0;
    return -theta_tilde_ * lambda +
           c_minus_ * gamma_neg_alpha_ * (gamma_ratio(Complex(lambda + 1.0 - rho_), alpha_).real() - offset_);
}

double SpectrallyNegativeExponent::derivative(double lambda) const {
    // d/dlambda (z)_alpha = (z)_alpha (psi(z+alpha) - psi(z)), z = lambda + 1 - rho > 0 here.
    const double z = lambda + 1.0 - rho_;
    double dpoch;
    if (z > 0.0 || std::floor(z) != z) {
        const double p = gamma_ratio(Complex(z), alpha_).real();
        dpoch = p * (digamma(z + alpha_) - digamma(z));
    } else {
        // z a nonpositive integer: Gamma(z+alpha) * (-1)^n n! as the derivative of 1/Gamma.
        const int n = static_cast<int>(-z);
        dpoch = std::tgamma(z + alpha_) * std::pow(-1.0, n) * std::tgamma(n + 1.0);
    }
    return -theta_tilde_ + c_minus_ * gamma_neg_alpha_ * dpoch;
}

double laplace_subordinator(const LampertiCharacteristics& chars, double lambda, const QuadratureSpec& spec) {
    return SubordinatorExponent(chars, spec)(lambda);
}

double laplace_spectrally_negative(const LampertiCharacteristics& chars, double lambda,
                                   const QuadratureSpec& spec) {
    return SpectrallyNegativeExponent(chars, spec)(lambda);
}

DensityTable density_via_fft(const LampertiCharacteristics& chars, double t, std::size_t n, double cutoff,
                             const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("density_via_fft: t must be positive");
    if (n < 8 || (n & (n - 1)) != 0) throw DomainError("density_via_fft: grid_size must be a power of two >= 8");
    if (!(cutoff > 0.0)) throw DomainError("density_via_fft: cutoff must be positive");
    const CharExponent psi(chars, spec);
    const double x0 = t * mean_vector(chars, spec)[0];
    const double dl = 2.0 * cutoff / double(n);
    const double dx = 2.0 * kPi / (double(n) * dl);
    const double c = -0.5 * double(n) + 0.5;

    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buf) throw std::bad_alloc();
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> guard(buf, &fftw_free);
    const fftw_plan plan = fftw_plan_dft_1d(int(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);

    DensityTable out;
    for (std::size_t j = 0; j < n; ++j) {
        const double lam = (double(j) + c) * dl;
        const Complex phi = std::exp(-t * psi(lam));
        const Complex a = phi * std::exp(-kI * lam * x0) * ((j % 2) ? -1.0 : 1.0);
        buf[j][0] = a.real();
        buf[j][1] = a.imag();
    }
    out.cf_at_cutoff = std::abs(std::exp(-t * psi(cutoff)));
    out.resolution_warning = out.cf_at_cutoff > 1e-8;
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    out.x.resize(n);
    out.pdf.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = double(k) - 0.5 * double(n);
        const Complex phase = std::exp(-kI * (c * kk * 2.0 * kPi / double(n)));
        const Complex v = Complex(buf[k][0], buf[k][1]) * phase;
        out.x[k] = x0 + kk * dx;
        out.pdf[k] = dl / (2.0 * kPi) * v.real();
    }
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) integral += 0.5 * (out.pdf[k] + out.pdf[k + 1]) * dx;
    out.integral = integral;
    out.min_pdf = *std::min_element(out.pdf.begin(), out.pdf.end());
    return out;
}

} // namespace lamperti
