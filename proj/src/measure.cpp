#include "lamperti/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lamperti/specfun.hpp"

namespace lamperti {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string field(std::size_t k, const char* name) {
    return "directions[" + std::to_string(k) + "]." + name;
}

void check_index(const LampertiCharacteristics& chars, std::size_t k) {
    if (k >= chars.directions.size())
        throw DomainError("direction index " + std::to_string(k) + " out of range");
}

void require_one_dimensional(const LampertiCharacteristics& chars, const char* what) {
    if (!chars.is_one_dimensional())
        throw DomainError(std::string(what) + ": unsupported dimension " +
                          std::to_string(chars.dimension()) + " (only d = 1)");
}

// Cutoff beyond which r^q * kernel(r) * e^{...} contributes below `target`,
// for an integrand decaying like e^{-delta r}.
template <class F>
double upper_cutoff(const F& integrand, double start, double delta, double target) {
    const double step = std::max(1.0, 1.0 / delta);
    double r = start;
    for (int i = 0; i < 100000; ++i) {
        const double v = std::abs(integrand(r)) / delta;
        if (v < target || v < 1e-300) return r;
        r += step;
    }
    throw ConvergenceError("radial cutoff search failed", start);
}

} // namespace

void LampertiCharacteristics::validate() const {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha: must lie in (0,2)");
    if (directions.empty()) throw DomainError("directions: must be nonempty");
    const std::size_t d = theta.size();
    if (d == 0) throw DomainError("theta: must have at least one component");
    for (double t : theta)
        if (!std::isfinite(t)) throw DomainError("theta: components must be finite");
    for (std::size_t k = 0; k < directions.size(); ++k) {
        const auto& dir = directions[k];
        if (dir.xi.size() != d)
            throw DomainError(field(k, "xi") + ": dimension " + std::to_string(dir.xi.size()) +
                              " does not match theta dimension " + std::to_string(d));
        double n2 = 0.0;
        for (double x : dir.xi) n2 += x * x;
        if (!(std::abs(std::sqrt(n2) - 1.0) < 1e-9)) throw DomainError(field(k, "xi") + ": must be a unit vector");
        if (!(dir.sigma > 0.0) || !std::isfinite(dir.sigma))
            throw DomainError(field(k, "sigma") + ": must be positive and finite");
        if (!std::isfinite(dir.f)) throw DomainError(field(k, "f") + ": must be finite");
        if (!(dir.f < alpha + 1.0)) throw DomainError(field(k, "f") + ": must be < alpha + 1");
        for (std::size_t j = 0; j < k; ++j) {
            double dist = 0.0;
            for (std::size_t i = 0; i < d; ++i) dist += std::abs(dir.xi[i] - directions[j].xi[i]);
            if (dist < 1e-12)
                throw DomainError(field(k, "xi") + ": duplicates directions[" + std::to_string(j) + "]");
        }
    }
    if (drift) {
        if (drift->size() != d) throw DomainError("drift: dimension does not match theta");
        if (!(alpha < 1.0)) throw DomainError("drift: only allowed when alpha < 1");
        for (double x : *drift)
            if (!std::isfinite(x)) throw DomainError("drift: components must be finite");
    }
}

double LampertiCharacteristics::gamma() const {
    double g = -kInf;
    for (const auto& d : directions) g = std::max(g, d.f);
    return g;
}

double LampertiCharacteristics::sigma_total() const {
    double s = 0.0;
    for (const auto& d : directions) s += d.sigma;
    return s;
}

double LampertiCharacteristics::c_plus() const {
    for (const auto& d : directions)
        if (d.xi.size() == 1 && d.xi[0] > 0) return d.sigma;
    return 0.0;
}

double LampertiCharacteristics::c_minus() const {
    for (const auto& d : directions)
        if (d.xi.size() == 1 && d.xi[0] < 0) return d.sigma;
    return 0.0;
}

double LampertiCharacteristics::beta() const {
    for (const auto& d : directions)
        if (d.xi.size() == 1 && d.xi[0] > 0) return d.f;
    throw DomainError("beta: no direction at +1");
}

double LampertiCharacteristics::rho() const {
    for (const auto& d : directions)
        if (d.xi.size() == 1 && d.xi[0] < 0) return d.f;
    throw DomainError("rho: no direction at -1");
}

LampertiCharacteristics LampertiCharacteristics::one_dimensional(double alpha, double beta, double rho,
                                                                 double c_plus, double c_minus,
                                                                 double theta) {
    LampertiCharacteristics c;
    c.alpha = alpha;
    c.theta = {theta};
    if (c_plus > 0.0) c.directions.push_back({{1.0}, c_plus, beta});
    if (c_minus > 0.0) c.directions.push_back({{-1.0}, c_minus, rho});
    return c;
}

double log_expm1_over_r(double r) {
    // e^r - 1 = r e^{r theta_r} with theta_r -> 1/2 as r -> 0.
    if (r < 1e-8) return r * (0.5 + r / 24.0);
    if (r < 30.0) return std::log(std::expm1(r) / r);
    return r + std::log1p(-std::exp(-r)) - std::log(r);
}

double density_kernel(double alpha, double f, double r) {
    return std::exp(f * r - (alpha + 1.0) * log_expm1_over_r(r));
}

double lamperti_density(double alpha, double f, double r) {
    return std::exp(f * r - (alpha + 1.0) * (log_expm1_over_r(r) + std::log(r)));
}

QuadResult<double> radial_integral(double alpha, double f, double p, double a, double b,
                                   const QuadratureSpec& spec) {
    if (!(a >= 0.0) || !(b > a)) throw DomainError("radial_integral: requires 0 <= a < b");
    const double q = p - alpha - 1.0;
    const double delta = alpha + 1.0 - f;
    const double atol = spec.abs_tol * 1e-2;
    const double rtol = spec.rel_tol * 1e-2;
    auto integrand = [&](double r) { return std::pow(r, q) * density_kernel(alpha, f, r); };

    QuadResult<double> out;
    const double split = std::min(b, std::max(spec.split_point, a));
    if (a < split) {
        if (a == 0.0) {
            if (!(q > -1.0)) throw DomainError("radial_integral: divergent at 0 (p <= alpha)");
            auto h = [&](double r) { return density_kernel(alpha, f, r); };
            out += integrate_power_singular<double>(h, q, split, atol, rtol, spec.max_subdivisions);
        } else if (a < split / 16.0) {
            out += integrate_log_scale<double>(integrand, a, split, atol, rtol, spec.max_subdivisions);
        } else {
            out += gauss_kronrod<double>(integrand, a, split, atol, rtol, spec.max_subdivisions);
        }
    }
    if (b > split) {
        double upper = b;
        double remainder = 0.0;
        // Far out the tail is tiny; keep the absolute tolerance relative to its size.
        double tail_atol = atol;
        if (std::isinf(b)) {
            if (!(delta > 0.0)) throw DomainError("radial_integral: no exponential decay (f >= alpha+1)");
            const double size = std::abs(out.value) + integrand(split) / delta;
            tail_atol = std::min(atol, rtol * size);
            const double target = 1e-4 * std::max(tail_atol, rtol * size);
            upper = upper_cutoff(integrand, split, delta, target);
            // Beyond the cutoff the integrand is r^q e^{-delta r} up to 1 + O(e^{-r}).
            remainder = integrand(upper) / (delta - q / upper);
        }
        if (upper > split) {
            out += gauss_kronrod<double>(integrand, split, upper, tail_atol, rtol, spec.max_subdivisions);
        }
        out.value += remainder;
    }
    return out;
}

double density(const LampertiCharacteristics& chars, std::size_t k, double r) {
    check_index(chars, k);
    if (!(r > 0.0)) throw DomainError("density: r must be positive");
    const auto& d = chars.directions[k];
    return d.sigma * lamperti_density(chars.alpha, d.f, r);
}

double tail(const LampertiCharacteristics& chars, std::size_t k, double x, const QuadratureSpec& spec) {
    check_index(chars, k);
    if (!(x > 0.0)) throw DomainError("tail: x must be positive");
    const auto& d = chars.directions[k];
    auto r = radial_integral(chars.alpha, d.f, 0.0, x, kInf, spec);
    require_converged(r, spec.abs_tol, spec.rel_tol, "tail");
    return d.sigma * r.value;
}

MomentValue truncated_moment(const LampertiCharacteristics& chars, double p, Region region,
                             const QuadratureSpec& spec) {
    if (!(p > 0.0)) throw DomainError("truncated_moment: p must be positive");
    if (region == Region::inner && p <= chars.alpha) return {kInf, true};
    QuadratureSpec s = spec;
    s.split_point = 1.0;
    double total = 0.0;
    for (const auto& d : chars.directions) {
        auto r = region == Region::inner ? radial_integral(chars.alpha, d.f, p, 0.0, 1.0, s)
                                         : radial_integral(chars.alpha, d.f, p, 1.0, kInf, s);
        require_converged(r, s.abs_tol, s.rel_tol, "truncated_moment");
        total += d.sigma * r.value;
    }
    return {total, false};
}

double exp_moment_threshold(const LampertiCharacteristics& chars) {
    return chars.alpha + 1.0 - chars.gamma();
}

Vector weighted_first_moment(const LampertiCharacteristics& chars, double a, double b,
                             const QuadratureSpec& spec) {
    QuadratureSpec s = spec;
    s.split_point = 1.0;
    Vector out(chars.dimension(), 0.0);
    for (const auto& d : chars.directions) {
        auto r = radial_integral(chars.alpha, d.f, 1.0, a, b, s);
        require_converged(r, s.abs_tol, s.rel_tol, "first moment");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += d.xi[i] * d.sigma * r.value;
    }
    return out;
}

Vector effective_drift(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    if (!(chars.alpha < 1.0)) throw DomainError("effective_drift: requires alpha < 1");
    if (chars.drift) return *chars.drift;
    Vector m0 = weighted_first_moment(chars, 0.0, 1.0, spec);
    for (std::size_t i = 0; i < m0.size(); ++i) m0[i] = -chars.theta[i] - m0[i];
    return m0;
}

Vector mean_vector(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    Vector m1 = weighted_first_moment(chars, 1.0, kInf, spec);
    if (chars.alpha < 1.0) {
        const Vector d = effective_drift(chars, spec);
        const Vector m0 = weighted_first_moment(chars, 0.0, 1.0, spec);
        for (std::size_t i = 0; i < m1.size(); ++i) m1[i] += d[i] + m0[i];
    } else {
        for (std::size_t i = 0; i < m1.size(); ++i) m1[i] -= chars.theta[i];
    }
    return m1;
}

Vector eta_centering(const LampertiCharacteristics& chars, Regime regime, const QuadratureSpec& spec) {
    // Both regimes centre at the quantity that makes the rescaled limit strictly
    // stable (short time) or mean zero (long time).
    if (regime == Regime::long_time) return mean_vector(chars, spec);
    if (chars.alpha == 1.0) return Vector(chars.dimension(), 0.0);
    if (chars.alpha < 1.0) return effective_drift(chars, spec);
    return mean_vector(chars, spec);
}

namespace {

// (expm1(-x) + x) / x^2, with a series where the subtraction cancels.
double second_order_remainder(double x) {
    if (x < 0.1) {
        double term = 0.5, sum = 0.5;
        for (int n = 3; n < 14; ++n) {
            term *= -x / n;
            sum += term;
        }
        return sum;
    }
    return (std::expm1(-x) + x) / (x * x);
}

// x / (1 - e^{-x})
double x_over_one_minus_exp(double x) {
    if (x == 0.0) return 1.0;
    return x / -std::expm1(-x);
}

} // namespace

double a_tilde(double alpha, double f, const QuadratureSpec& spec) {
    const double atol = spec.abs_tol * 1e-2;
    const double rtol = spec.rel_tol * 1e-2;
    const double q = 1.0 - alpha;
    double total = 0.0;
    if (alpha != f) {
        auto h1 = [&](double x) {
            const double lin = x == 0.0 ? alpha - f : -std::expm1(-(alpha - f) * x) / x;
            return std::exp(-x) * lin * std::pow(x_over_one_minus_exp(x), alpha + 1.0);
        };
        auto r = integrate_power_singular<double>(h1, q, 1.0, atol, rtol, spec.max_subdivisions);
        total += require_converged(r, atol, rtol, "a_tilde").value;
    }
    auto h2 = [&](double x) {
        return -std::exp(-x) * second_order_remainder(x) * std::pow(x_over_one_minus_exp(x), alpha + 1.0);
    };
    auto r2 = integrate_power_singular<double>(h2, q, 1.0, atol, rtol, spec.max_subdivisions);
    total += require_converged(r2, atol, rtol, "a_tilde").value;
    auto g3 = [&](double x) { return std::exp(-x - alpha * std::log1p(-std::exp(-x))); };
    auto r3 = gauss_kronrod<double>(g3, 1.0, 45.0, atol, rtol, spec.max_subdivisions);
    total += require_converged(r3, atol, rtol, "a_tilde").value + std::exp(-45.0);
    return total;
}

StructuralConstants structural_constants(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    require_one_dimensional(chars, "structural_constants");
    StructuralConstants sc;
    const double alpha = chars.alpha;
    double signed_sum = 0.0;
    for (const auto& d : chars.directions) {
        const double a = a_tilde(alpha, d.f, spec);
        if (d.xi[0] > 0) {
            sc.a_tilde_beta.push_back(a);
            signed_sum += d.sigma * a;
        } else {
            sc.b_tilde_rho.push_back(a);
            signed_sum -= d.sigma * a;
        }
    }
    const double cdiff = chars.c_plus() - chars.c_minus();
    if (alpha < 1.0) {
        sc.theta_tilde = -effective_drift(chars, spec)[0];
    } else if (alpha == 1.0) {
        sc.theta_tilde = chars.theta[0] - (signed_sum + cdiff * (1.0 - kEulerGamma));
    } else {
        sc.theta_tilde = chars.theta[0] - (signed_sum + cdiff / (alpha - 1.0));
    }
    return sc;
}

Matrix covariance_matrix(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    const std::size_t n = chars.dimension();
    Matrix m(n, Vector(n, 0.0));
    for (const auto& d : chars.directions) {
        auto r = radial_integral(chars.alpha, d.f, 2.0, 0.0, kInf, spec);
        require_converged(r, spec.abs_tol, spec.rel_tol, "covariance_matrix");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m[i][j] += d.sigma * d.xi[i] * d.xi[j] * r.value;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i];
    return m;
}

} // namespace lamperti
