#include "lamperti/properties.hpp"

#include <cmath>

#include "lamperti/exponents.hpp"
#include "lamperti/specfun.hpp"

namespace lamperti {

const char* to_string(Tristate t) {
    switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    default: return "undetermined";
    }
}

const char* to_string(DriftDirection d) {
    switch (d) {
    case DriftDirection::to_plus_infinity: return "to_plus_infinity";
    case DriftDirection::oscillates: return "oscillates";
    default: return "to_minus_infinity";
    }
}

bool is_spectrally_negative(const LampertiCharacteristics& chars) {
    return chars.is_one_dimensional() && chars.c_plus() == 0.0 && chars.c_minus() > 0.0;
}

namespace {

DriftDirection sign_to_drift(double m, double scale) {
    if (std::abs(m) <= 1e-10 * std::max(1.0, scale)) return DriftDirection::oscillates;
    return m > 0.0 ? DriftDirection::to_plus_infinity : DriftDirection::to_minus_infinity;
}

void require_spectrally_negative(const LampertiCharacteristics& chars, const char* what) {
    chars.validate();
    if (!is_spectrally_negative(chars))
        throw DomainError(std::string(what) + ": requires a one-dimensional process with c_plus = 0");
    if (!(chars.alpha > 1.0 && chars.alpha < 2.0))
        throw DomainError(std::string(what) + ": requires alpha in (1,2)");
}

} // namespace

double drift_root_function(double alpha, double c_minus, double rho) {
    // c Gamma(-alpha) (1-rho)_alpha [psi(1-rho+alpha) - psi(1-rho)] after
    // Gamma(3-rho) = (2-rho)(1-rho)Gamma(1-rho) and the digamma recurrence.
    const double a = 1.0 + alpha - rho;
    if (!(a > 0.0)) throw DomainError("drift_root_function: requires rho < alpha + 1");
    const double ratio = std::tgamma(a) / std::tgamma(3.0 - rho);
    const double bracket = (2.0 - rho) * (1.0 - rho) * (digamma(a) - digamma(3.0 - rho)) + 3.0 - 2.0 * rho;
    return c_minus * std::tgamma(-alpha) * ratio * bracket;
}

double rho_zero(double alpha, double c_minus) {
    double lo = 1.0 + 1e-9, hi = 2.0 - 1e-9;
    double glo = drift_root_function(alpha, c_minus, lo);
    const double ghi = drift_root_function(alpha, c_minus, hi);
    if (!(glo * ghi < 0.0)) throw ConvergenceError("rho_zero: no sign change on (1,2)", glo);
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = drift_root_function(alpha, c_minus, mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    const double a = drift_root_function(alpha, c_minus, lo);
    const double b = drift_root_function(alpha, c_minus, hi);
    return std::abs(a) <= std::abs(b) ? lo : hi;
}

DriftReport drift_classification(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    require_spectrally_negative(chars, "drift_classification");
    const double tt = structural_constants(chars, spec).theta_tilde;
    if (std::abs(tt) > 1e-9) throw DomainError("drift_classification: requires theta_tilde = 0");
    const double r0 = rho_zero(chars.alpha, chars.c_minus());
    const double rho = chars.rho();
    const double g = drift_root_function(chars.alpha, chars.c_minus(), rho);
    DriftDirection dir;
    if (rho == r0 || std::abs(g) < 1e-12)
        dir = DriftDirection::oscillates;
    else
        dir = g > 0.0 ? DriftDirection::to_plus_infinity : DriftDirection::to_minus_infinity;
    return {dir, r0, g};
}

LampertiCharacteristics with_zero_theta_tilde(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    chars.validate();
    LampertiCharacteristics out = chars;
    if (chars.alpha < 1.0) {
        out.drift = Vector(chars.dimension(), 0.0);
        return out;
    }
    // theta-tilde = theta - const for alpha >= 1.
    const double tt = structural_constants(chars, spec).theta_tilde;
    out.theta[0] = chars.theta[0] - tt;
    return out;
}

double cramer_root(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    require_spectrally_negative(chars, "cramer_root");
    const SpectrallyNegativeExponent phi(chars, spec);
    if (!(phi.derivative(0.0) < 0.0))
        throw DomainError("cramer_root: process does not drift to -infinity");
    double lo = 0.0, hi = 1.0;
    while (phi(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) throw ConvergenceError("cramer_root: bracket search failed", hi);
    }
    // Phi < 0 just right of 0, so start the bracket where it is negative.
    if (lo == 0.0) {
        double probe = hi;
        while (phi(probe) > 0.0 && probe > 1e-300) probe *= 0.5;
        lo = probe;
    }
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double increase_times_integral(const LampertiCharacteristics& chars, double a, double b,
                               const QuadratureSpec& spec) {
    require_spectrally_negative(chars, "increase_times_integral");
    const SpectrallyNegativeExponent phi(chars, spec);
    auto g = [&](double l) { return phi(l) / (l * l * l); };
    auto r = integrate_log_scale<double>(g, a, b, spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
    return require_converged(r, spec.abs_tol, spec.rel_tol, "increase_times_integral").value;
}

bool has_increase_times(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    require_spectrally_negative(chars, "has_increase_times");
    // Phi(lambda) ~ c Gamma(-alpha) lambda^alpha, so lambda^{-3} Phi is integrable
    // at infinity exactly when alpha < 2; check the finite piece as well.
    const double head = increase_times_integral(chars, 1.0, 10.0, spec);
    return std::isfinite(head) && chars.alpha < 2.0;
}

ClassificationReport classify(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    chars.validate();
    ClassificationReport r;
    const double alpha = chars.alpha;
    r.finite_variation = alpha < 1.0;
    r.p_threshold = alpha;
    r.selfdecomposable = chars.gamma() <= alpha + 0.5;
    r.jurek = true;
    const bool one_d = chars.is_one_dimensional();
    r.tail_class_delta = (one_d && chars.c_plus() > 0.0) ? alpha + 1.0 - chars.beta()
                                                         : exp_moment_threshold(chars);
    if (!one_d) return r;

    const bool no_up_jumps = chars.c_plus() == 0.0;
    if (alpha < 1.0) {
        const double d = effective_drift(chars, spec)[0];
        if (d > 0.0) {
            r.creeps_up = Tristate::yes;
            r.zero_regular_upward = Tristate::yes;
        } else if (d == 0.0) {
            r.creeps_up = no_up_jumps ? Tristate::no : Tristate::undetermined;
            r.zero_regular_upward = no_up_jumps ? Tristate::no : Tristate::yes;
        } else {
            // Bounded variation with negative drift: 0 is irregular upwards.
            r.creeps_up = no_up_jumps ? Tristate::no : Tristate::undetermined;
            r.zero_regular_upward = Tristate::no;
        }
    } else {
        r.creeps_up = alpha > 1.0 ? Tristate::no : Tristate::undetermined;
        r.zero_regular_upward = Tristate::yes;
    }

    const double m = mean_vector(chars, spec)[0];
    r.mean = m;
    r.drift = sign_to_drift(m, chars.sigma_total());

    if (is_spectrally_negative(chars) && alpha > 1.0) {
        r.rho_zero = rho_zero(alpha, chars.c_minus());
        r.has_increase_times = has_increase_times(chars, spec);
        if (*r.drift == DriftDirection::to_minus_infinity) r.cramer_root = cramer_root(chars, spec);
    }
    return r;
}

} // namespace lamperti
