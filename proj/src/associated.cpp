#include "lamperti/associated.hpp"

#include <cmath>
#include <limits>

#include "lamperti/errors.hpp"
#include "lamperti/exponents.hpp"
#include "lamperti/specfun.hpp"

namespace lamperti {

namespace {

constexpr std::size_t kMaxSeriesTerms = 100000;

// Driftless subordinator with positive jumps only, alpha in (0,1).
void require_subordinator(const LampertiCharacteristics& chars, const char* what) {
    chars.validate();
    const std::string w(what);
    if (!chars.is_one_dimensional()) throw DomainError(w + ": requires one-dimensional chars");
    if (!(chars.alpha < 1.0)) throw DomainError(w + ": requires alpha in (0,1)");
    if (chars.c_minus() != 0.0) throw DomainError(w + ": requires c_minus = 0");
    if (!(chars.c_plus() > 0.0)) throw DomainError(w + ": requires c_plus > 0");
}

void require_driftless(const LampertiCharacteristics& chars, const char* what) {
    if (std::abs(effective_drift(chars)[0]) > 1e-12)
        throw DomainError(std::string(what) + ": requires zero drift (set drift to 0)");
}

// 1/(1 - e^{-r}) - 1/r
double coth_like(double r) {
    if (r < 0.1) {
        const double r2 = r * r;
        return 0.5 + r / 12.0 * (1.0 - r2 / 60.0 * (1.0 - r2 / 42.0 * (1.0 - r2 / 40.0)));
    }
    return 1.0 / -std::expm1(-r) - 1.0 / r;
}

double pochhammer_real(double a, double alpha) { return std::exp(std::lgamma(a + alpha) - std::lgamma(a)); }

} // namespace

double ou_driver_density(const LampertiCharacteristics& chars, double x, double rate) {
    chars.validate();
    if (!chars.is_one_dimensional()) throw DomainError("ou_driver_density: requires one-dimensional chars");
    if (!(rate > 0.0)) throw DomainError("rate: must be positive");
    if (x == 0.0) throw DomainError("ou_driver_density: x must be nonzero");
    if (chars.gamma() > chars.alpha + 0.5)
        throw DomainError("ou_driver_density: chars not selfdecomposable (max f > alpha + 1/2)");
    const double sign = x > 0.0 ? 1.0 : -1.0;
    const double a = chars.alpha;
    const double r = std::abs(x);
    for (const auto& d : chars.directions) {
        if (d.xi[0] != sign) continue;
        // Minus the derivative of k(r) = r e^{rf}(e^r - 1)^{-(alpha+1)}.
        const double k = std::pow(r, -a) * density_kernel(a, d.f, r);
        return rate * d.sigma * k * (a / r + (a + 1.0) * coth_like(r) - d.f);
    }
    return 0.0;
}

double parent_laplace(const LampertiCharacteristics& chars, double lambda) {
    require_subordinator(chars, "parent_laplace");
    require_driftless(chars, "parent_laplace");
    if (!(lambda >= 0.0)) throw DomainError("lambda: must be nonnegative");
    return lambda * laplace_subordinator(chars, lambda);
}

double parent_levy_density(const LampertiCharacteristics& chars, double x) {
    chars.validate();
    if (!(x < 0.0)) throw DomainError("parent_levy_density: x must be negative");
    const double a = chars.alpha, b = chars.beta(), c = chars.c_plus();
    if (b < 0.0) throw DomainError("parent_levy_density: requires beta >= 0");
    const double r = -x;
    // c e^{beta r}(e^r - 1)^{-(alpha+2)}((alpha+1-beta) e^r + beta)
    const double log_base = b * r - (a + 2.0) * (log_expm1_over_r(r) + std::log(r));
    return c * std::exp(log_base) * ((a + 1.0 - b) * std::exp(r) + b);
}

ParentComponents parent_components(const LampertiCharacteristics& chars) {
    chars.validate();
    const double a = chars.alpha, b = chars.beta(), c = chars.c_plus();
    if (!(a < 1.0)) throw DomainError("parent_components: requires alpha in (0,1)");
    if (b < 0.0) throw DomainError("parent_components: requires beta >= 0");
    return {LampertiCharacteristics::one_dimensional(a + 1.0, 0.0, b + 1.0, 0.0, c * (a + 1.0 - b)),
            LampertiCharacteristics::one_dimensional(a + 1.0, 0.0, b, 0.0, c * b)};
}

double tail_series(const LampertiCharacteristics& chars, double x, double tol) {
    chars.validate();
    if (!(x > 0.0)) throw DomainError("tail_series: x must be positive");
    if (!(tol > 0.0)) throw DomainError("tail_series: tol must be positive");
    const double a = chars.alpha, c = chars.c_plus();
    const double delta = a + 1.0 - chars.beta();
    // e^{-(alpha+1) r}(1 - e^{-r})^{-(alpha+1)} expanded binomially, integrated termwise.
    const double q = std::exp(-x);
    double coef = 1.0;  // (alpha+1)_n / n!
    double power = std::exp(-delta * x);
    double sum = 0.0;
    for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
        const double term = coef * power / (delta + n);
        sum += term;
        const double ratio = q * (a + 1.0 + n) / (n + 1.0);  // bounds every later term ratio
        if (ratio < 1.0 && c * term * ratio / (1.0 - ratio) < tol) return c * sum;
        coef *= (a + 1.0 + n) / (n + 1.0);
        power *= q;
    }
    throw ConvergenceError("tail_series: not converged within 1e5 terms", c * sum);
}

const char* to_string(ScaleVariant v) {
    switch (v) {
    case ScaleVariant::beta1: return "beta1";
    case ScaleVariant::killed: return "killed";
    case ScaleVariant::wstar: return "wstar";
    }
    return "unknown";
}

ScaleVariant parse_scale_variant(const std::string& name) {
    if (name == "beta1") return ScaleVariant::beta1;
    if (name == "killed") return ScaleVariant::killed;
    if (name == "wstar") return ScaleVariant::wstar;
    throw DomainError("variant: expected beta1, killed or wstar");
}

double KilledExponents::phi_killed(double lambda) const {
    if (!(lambda >= 0.0)) throw DomainError("lambda: must be nonnegative");
    return -c_plus * std::tgamma(-alpha) * pochhammer_real(lambda + 1.0 - beta, alpha);
}

double KilledExponents::psi_yp(double lambda) const { return lambda * lambda / phi_killed(lambda); }

double KilledExponents::psi_yp_star(double lambda) const { return lambda * phi_killed(lambda); }

KilledExponents killed_exponents(const LampertiCharacteristics& chars) {
    require_subordinator(chars, "killed_exponents");
    const double b = chars.beta();
    if (!(b < 1.0)) throw DomainError("killed_exponents: requires beta < 1");
    KilledExponents k;
    k.alpha = chars.alpha;
    k.beta = b;
    k.c_plus = chars.c_plus();
    k.raw_K = k.c_plus * std::tgamma(-k.alpha) * pochhammer_real(1.0 - b, k.alpha);
    k.killing_rate = -k.raw_K;
    return k;
}

ScaleFunction::ScaleFunction(const LampertiCharacteristics& chars, ScaleVariant variant) : variant_(variant) {
    require_subordinator(chars, "scale_function");
    alpha_ = chars.alpha;
    beta_ = chars.beta();
    c_plus_ = chars.c_plus();
    const double a = alpha_;
    constant_ = a / (c_plus_ * std::tgamma(a) * std::tgamma(1.0 - a));
    switch (variant) {
    case ScaleVariant::beta1:
        if (beta_ != 1.0) throw DomainError("scale_function: beta1 variant requires beta = 1");
        require_driftless(chars, "scale_function");
        kappa_ = 0.0;
        break;
    case ScaleVariant::killed:
    case ScaleVariant::wstar:
        if (!(beta_ < 1.0)) throw DomainError("scale_function: killed and wstar variants require beta < 1");
        killed_exponents_ = killed_exponents(chars);
        kappa_ = 1.0 - beta_;
        // Mean jump of the unit-weight measure: derivative of its Laplace exponent at 0.
        series_limit_ = -std::tgamma(-a) * pochhammer_real(1.0 - beta_, a) *
                        (digamma(1.0 - beta_ + a) - digamma(1.0 - beta_));
        break;
    }
}

double ScaleFunction::integral(double x) const {
    const double a = alpha_, kappa = kappa_;
    const double tol_abs = 1e-14, tol_rel = 1e-12;
    const double near = std::min(x, 1.0);
    // (1 - e^{-y})^{alpha-1} = y^{alpha-1} ((1 - e^{-y})/y)^{alpha-1}
    auto h = [&](double y) {
        const double ratio = y < 1e-8 ? 1.0 - 0.5 * y : -std::expm1(-y) / y;
        return std::exp(-kappa * y) * std::pow(ratio, a - 1.0);
    };
    auto total = integrate_power_singular<double>(h, a - 1.0, near, tol_abs, tol_rel);
    require_converged(total, tol_abs, tol_rel, "scale_function");
    if (x > 1.0) {
        auto g = [&](double y) { return std::exp(-kappa * y) * std::pow(-std::expm1(-y), a - 1.0); };
        auto far = gauss_kronrod<double>(g, 1.0, x, tol_abs, tol_rel);
        require_converged(far, tol_abs, tol_rel, "scale_function");
        total += far;
    }
    return total.value;
}

double ScaleFunction::killed(double x) const {
    const double a = alpha_;
    const double delta = a + 1.0 - beta_;
    const double q = std::exp(-x);
    // int_0^x of the tail = limit - sum_n (alpha+1)_n/n! e^{-(delta+n) x}/(delta+n)^2
    double coef = 1.0, power = std::exp(-delta * x), sum = 0.0;
    for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
        const double term = coef * power / ((delta + n) * (delta + n));
        sum += term;
        const double ratio = q * (a + 1.0 + n) / (n + 1.0);
        if (ratio < 1.0 && c_plus_ * term * ratio / (1.0 - ratio) < 1e-14)
            return killed_exponents_.killing_rate * x + c_plus_ * (series_limit_ - sum);
        coef *= (a + 1.0 + n) / (n + 1.0);
        power *= q;
    }
    throw ConvergenceError("scale_function: killed series not converged within 1e5 terms", sum);
}

double ScaleFunction::operator()(double x) const {
    if (!(x >= 0.0)) throw DomainError("scale_function: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (variant_ == ScaleVariant::killed) return killed(x);
    return constant_ * integral(x);
}

double ScaleFunction::psi(double lambda) const {
    switch (variant_) {
    case ScaleVariant::beta1:
        // lambda Phi_L(lambda) with Phi_L = -c_+ Gamma(-alpha) Gamma(lambda+alpha)/Gamma(lambda)
        return -lambda * c_plus_ * std::tgamma(-alpha_) * pochhammer_real(lambda, alpha_);
    case ScaleVariant::killed: return killed_exponents_.psi_yp(lambda);
    case ScaleVariant::wstar: return killed_exponents_.psi_yp_star(lambda);
    }
    return 0.0;
}

ScaleFunctionTable scale_function(const LampertiCharacteristics& chars, ScaleVariant variant,
                                  const Vector& x_grid) {
    ScaleFunction w(chars, variant);
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
        if (!(x_grid[j] >= 0.0)) throw DomainError("x_grid: entries must be nonnegative");
        if (j > 0 && !(x_grid[j] > x_grid[j - 1])) throw DomainError("x_grid: must be increasing");
    }
    ScaleFunctionTable t;
    t.x_grid = x_grid;
    t.method = variant;
    t.w_values.reserve(x_grid.size());
    for (double x : x_grid) t.w_values.push_back(w(x));
    return t;
}

double scale_laplace_transform(const ScaleFunction& w, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("lambda: must be positive");
    const double upper = 60.0 / lambda;
    auto f = [&](double x) { return std::exp(-lambda * x) * w(x); };
    auto r = gauss_kronrod<double>(f, 0.0, upper, 1e-13, 1e-10);
    require_converged(r, 1e-13, 1e-10, "scale_laplace_transform");
    // W(x) ~ a + b x beyond the cutoff.
    const double wu = w(upper), slope = wu - w(upper - 1.0);
    return r.value + std::exp(-lambda * upper) * (wu / lambda + slope / (lambda * lambda));
}

} // namespace lamperti
