#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "lamperti/errors.hpp"

namespace lamperti {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double split_point = 1.0;
    int max_subdivisions = 4000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw DomainError("QuadratureSpec: tolerances must be positive");
        if (!(split_point > 0.0)) throw DomainError("QuadratureSpec: split_point must be positive");
    }
    QuadratureSpec halved() const {
        QuadratureSpec s = *this;
        s.rel_tol *= 0.5;
        s.abs_tol *= 0.5;
        return s;
    }
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        converged = converged && o.converged;
        return *this;
    }
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// One 15-point Kronrod panel with the QUADPACK error heuristic.
template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv[j] = f(c - dx);
        fv[14 - j] = f(c + dx);
    }
    T kron = fv[7] * kWgk[7];
    T gauss = fv[7] * kWg[3];
    for (int j = 0; j < 7; ++j) {
        kron += (fv[j] + fv[14 - j]) * kWgk[j];
        if (j % 2 == 1) gauss += (fv[j] + fv[14 - j]) * kWg[j / 2];
    }
    const T mean = kron * 0.5;
    double asc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    asc *= std::abs(h);
    double err = std::abs((kron - gauss) * h);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kron * h));
    return {a, b, kron * h, err};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
template <class T, class F>
QuadResult<T> gauss_kronrod(const F& f, double a, double b, double abs_tol, double rel_tol,
                            int max_subdivisions = 4000) {
    if (a == b) return {T{}, 0.0, true};
    std::priority_queue<detail::Segment<T>> heap;
    auto first = detail::gk15<T>(f, a, b);
    T total = first.value;
    double err = first.error;
    heap.push(first);
    int n = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (n >= max_subdivisions) return {total, err, false};
        auto s = heap.top();
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > std::min(s.a, s.b) && mid < std::max(s.a, s.b))) return {total, err, false};
        heap.pop();
        auto l = detail::gk15<T>(f, s.a, mid);
        auto r = detail::gk15<T>(f, mid, s.b);
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
        ++n;
        if (n % 64 == 0) {
            // Re-sum to shed accumulated cancellation error.
            auto copy = heap;
            T t{};
            double e = 0.0;
            while (!copy.empty()) {
                t += copy.top().value;
                e += copy.top().error;
                copy.pop();
            }
            total = t;
            err = e;
        }
    }
    return {total, err, true};
}

// Integral over [0, b] of x^q h(x) with q > -1 and h smooth at 0.
// The substitution x = u^m, m = 1/(q+1), leaves the bounded integrand m h(u^m).
template <class T, class H>
QuadResult<T> integrate_power_singular(const H& h, double q, double b, double abs_tol, double rel_tol,
                                       int max_subdivisions = 4000) {
    if (!(q > -1.0)) throw DomainError("integrate_power_singular: exponent must exceed -1");
    if (q >= 0.0) {
        auto g = [&](double x) { return T(h(x) * std::pow(x, q)); };
        return gauss_kronrod<T>(g, 0.0, b, abs_tol, rel_tol, max_subdivisions);
    }
    if (q + 1.0 < 0.25) {
        // Nearly non-integrable: the substitution below would be too steep, so
        // take h(0) x^q exactly and integrate the O(x^{q+1}) remainder.
        const T h0 = T(h(0.0));
        auto g = [&](double x) { return T((T(h(x)) - h0) * std::pow(x, q)); };
        auto r = gauss_kronrod<T>(g, 0.0, b, abs_tol, rel_tol, max_subdivisions);
        r.value += h0 * (std::pow(b, q + 1.0) / (q + 1.0));
        return r;
    }
    const double m = 1.0 / (q + 1.0);
    auto g = [&](double u) { return T(h(std::pow(u, m)) * m); };
    return gauss_kronrod<T>(g, 0.0, std::pow(b, 1.0 / m), abs_tol, rel_tol, max_subdivisions);
}

// Integral over [a, b], 0 < a < b, of g(r) after r = e^s; suited to wide dynamic range near 0.
template <class T, class G>
QuadResult<T> integrate_log_scale(const G& g, double a, double b, double abs_tol, double rel_tol,
                                  int max_subdivisions = 4000) {
    if (!(a > 0.0) || !(b > a)) throw DomainError("integrate_log_scale: requires 0 < a < b");
    auto k = [&](double s) {
        const double r = std::exp(s);
        return T(g(r) * r);
    };
    return gauss_kronrod<T>(k, std::log(a), std::log(b), abs_tol, rel_tol, max_subdivisions);
}

// Throws unless the result is within a modest factor of the requested tolerance.
template <class T>
const QuadResult<T>& require_converged(const QuadResult<T>& r, double abs_tol, double rel_tol,
                                       const char* what) {
    const double target = std::max(abs_tol, rel_tol * std::abs(r.value));
    if (!std::isfinite(std::abs(r.value)) || (!r.converged && r.error > 100.0 * target))
        throw ConvergenceError(std::string(what) + ": quadrature did not converge", r.error);
    return r;
}

} // namespace lamperti
