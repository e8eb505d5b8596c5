#include "lamperti/limits.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "lamperti/errors.hpp"
#include "lamperti/simulate.hpp"

namespace lamperti {

namespace {

using namespace std::complex_literals;

// Independent seeds for the h values of one experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::size_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

void require_scalar(const LampertiCharacteristics& chars, const char* what) {
    chars.validate();
    if (!chars.is_one_dimensional()) throw DomainError(std::string(what) + ": requires one-dimensional chars");
}

ECFReport compare(double h, const Vector& samples, const Vector& grid, const std::vector<Complex>& reference) {
    ECFReport r;
    r.h = h;
    r.lambda_grid = grid;
    r.empirical = ecf(samples, grid);
    r.reference = reference;
    r.n_samples = samples.size();
    for (std::size_t j = 0; j < grid.size(); ++j)
        r.sup_distance = std::max(r.sup_distance, std::abs(r.empirical[j] - r.reference[j]));
    return r;
}

// int_1^inf e^{is} s^{-p} ds: quadrature to R plus the asymptotic expansion beyond.
Complex oscillatory_tail(double p) {
    constexpr double R = 200.0;
    auto f = [&](double s) { return std::exp(Complex(0.0, s)) * std::pow(s, -p); };
    auto body = gauss_kronrod<Complex>(f, 1.0, R, 1e-14, 1e-13);
    require_converged(body, 1e-14, 1e-13, "stable reference");
    // int_R^inf = i e^{iR} R^{-p} sum_k (-i)^k (p)_k R^{-k}
    Complex series = 0.0, term = 1.0;
    for (int k = 0; k < 8; ++k) {
        series += term;
        term *= Complex(0.0, -1.0) * (p + k) / R;
    }
    return body.value + 1i * std::exp(Complex(0.0, R)) * std::pow(R, -p) * series;
}

} // namespace

std::vector<Complex> ecf(const Vector& samples, const Vector& lambda_grid) {
    if (samples.empty()) throw DomainError("ecf: samples must be nonempty");
    std::vector<Complex> out;
    out.reserve(lambda_grid.size());
    for (double l : lambda_grid) {
        double re = 0.0, im = 0.0;
        for (double x : samples) {
            re += std::cos(l * x);
            im += std::sin(l * x);
        }
        out.emplace_back(re / samples.size(), im / samples.size());
    }
    return out;
}

Vector default_lambda_grid() {
    Vector g;
    for (int j = -50; j <= 50; ++j) g.push_back(0.1 * j);
    return g;
}

StableReference::StableReference(const LampertiCharacteristics& chars) : alpha_(chars.alpha) {
    require_scalar(chars, "StableReference");
    for (const auto& d : chars.directions) weights_.emplace_back(d.xi[0], d.sigma);
    const double a = alpha_;
    const double atol = 1e-14, rtol = 1e-13;
    // Near 0: (1 - e^{is}) s^{-a-1} for a < 1, (1 - e^{is} + is) s^{-a-1} otherwise.
    QuadResult<Complex> near;
    if (a < 1.0) {
        auto h = [](double s) {
            return s < 1e-6 ? Complex(0.5 * s, -1.0 + s * s / 6.0) : (1.0 - std::exp(Complex(0.0, s))) / s;
        };
        near = integrate_power_singular<Complex>(h, -a, 1.0, atol, rtol);
    } else {
        auto h = [](double s) {
            if (s < 1e-3) return Complex(0.5 - s * s / 24.0, s / 6.0 - s * s * s / 120.0);
            return (1.0 - std::exp(Complex(0.0, s)) + Complex(0.0, s)) / (s * s);
        };
        near = integrate_power_singular<Complex>(h, 1.0 - a, 1.0, atol, rtol);
    }
    require_converged(near, atol, rtol, "stable reference");
    Complex far = 1.0 / a - oscillatory_tail(a + 1.0);
    if (a > 1.0) far += 1i / (a - 1.0);
    unit_ = near.value + far;
}

Complex StableReference::operator()(double lambda) const {
    Complex total = 0.0;
    for (const auto& [sign, sigma] : weights_) {
        const double y = sign * lambda;
        if (y == 0.0) continue;
        const double m = std::abs(y);
        Complex v = alpha_ == 1.0 ? m * unit_ + 1i * m * std::log(m) : std::pow(m, alpha_) * unit_;
        total += sigma * (y > 0.0 ? v : std::conj(v));
    }
    return total;
}

std::vector<ECFReport> short_time_test(const LampertiCharacteristics& chars, const Vector& h_list,
                                       const LimitConfig& config) {
    require_scalar(chars, "short_time_test");
    const double eta = eta_centering(chars, Regime::short_time)[0];
    StableReference psi(chars);
    std::vector<Complex> reference;
    for (double l : config.lambda_grid) reference.push_back(std::exp(-psi(l)));
    std::vector<ECFReport> out;
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        const double h = h_list[k];
        if (!(h > 0.0)) throw DomainError("h_list: entries must be positive");
        SeriesConfig sc;
        sc.horizon_T = h;
        sc.time_grid = {h};
        sc.n_terms = config.n_terms;
        sc.n_paths = config.n_paths;
        sc.seed = derive_seed(config.seed, k);
        SeriesSampler sampler(chars, sc);
        const double scale = std::pow(h, -1.0 / chars.alpha);
        Vector y(config.n_paths);
        for (std::size_t p = 0; p < config.n_paths; ++p)
            y[p] = scale * (sampler.path(p).values[0][0] - h * eta);
        out.push_back(compare(h, y, config.lambda_grid, reference));
    }
    return out;
}

std::vector<ECFReport> long_time_test(const LampertiCharacteristics& chars, const Vector& h_list,
                                      const LimitConfig& config) {
    require_scalar(chars, "long_time_test");
    const double eta = eta_centering(chars, Regime::long_time)[0];
    const double variance = covariance_matrix(chars)[0][0];
    std::vector<Complex> reference;
    for (double l : config.lambda_grid) reference.push_back(std::exp(-0.5 * l * l * variance));
    std::vector<ECFReport> out;
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        const double h = h_list[k];
        if (!(h >= 1.0)) throw DomainError("h_list: entries must be at least 1");
        const auto units = static_cast<std::size_t>(std::floor(h));
        const double rest = h - double(units);
        if (double(config.n_paths) * double(units + 1) > 4294967295.0)
            throw DomainError("long_time_test: n_paths * h exceeds the generator's stream range");
        SeriesConfig unit;
        unit.n_terms = config.n_terms;
        unit.seed = derive_seed(config.seed, k);
        SeriesSampler one(chars, unit);
        std::optional<SeriesSampler> partial;
        if (rest > 0.0) {
            SeriesConfig pc = unit;
            pc.horizon_T = rest;
            pc.time_grid = {rest};
            pc.seed = derive_seed(config.seed, k + h_list.size());
            pc.n_terms = std::max<std::size_t>(1, std::size_t(std::ceil(config.n_terms * rest)));
            partial.emplace(chars, pc);
        }
        const double scale = 1.0 / std::sqrt(h);
        Vector y(config.n_paths);
        for (std::size_t p = 0; p < config.n_paths; ++p) {
            double x = 0.0;
            for (std::size_t j = 0; j < units; ++j) x += one.path(p * units + j).values[0][0];
            if (partial) x += partial->path(p).values[0][0];
            y[p] = scale * (x - h * eta);
        }
        out.push_back(compare(h, y, config.lambda_grid, reference));
    }
    return out;
}

SpitzerReport spitzer_estimate(const LampertiCharacteristics& chars, const Vector& t_grid,
                               std::size_t n_paths, std::uint64_t seed, std::size_t n_terms) {
    require_scalar(chars, "spitzer_estimate");
    if (t_grid.empty() || !(t_grid.front() > 0.0)) throw DomainError("t_grid: must be nonempty and positive");
    if (n_paths < 2) throw DomainError("n_paths: must be at least 2");
    SeriesConfig sc;
    sc.horizon_T = t_grid.back();
    sc.time_grid = t_grid;
    sc.n_terms = n_terms;
    sc.n_paths = n_paths;
    sc.seed = seed;
    SeriesSampler sampler(chars, sc);
    const std::size_t G = t_grid.size();
    SpitzerReport r;
    r.times = t_grid;
    r.n_paths = n_paths;
    r.positive_fraction.assign(G, 0.0);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        const auto path = sampler.path(p);
        // Occupation time of [0, inf): the first cell takes the value at t_1,
        // later cells the trapezoid rule.
        double occupation = 0.0, prev = 0.0;
        for (std::size_t j = 0; j < G; ++j) {
            const double ind = path.values[j][0] >= 0.0 ? 1.0 : 0.0;
            r.positive_fraction[j] += ind;
            occupation += j == 0 ? t_grid[0] * ind : 0.5 * (t_grid[j] - t_grid[j - 1]) * (ind + prev);
            prev = ind;
        }
        const double z = occupation / t_grid.back();
        sum += z;
        sum_sq += z * z;
    }
    for (double& f : r.positive_fraction) f /= double(n_paths);
    double integral = 0.0;
    for (std::size_t j = 0; j < G; ++j) {
        integral += j == 0 ? t_grid[0] * r.positive_fraction[0]
                           : 0.5 * (t_grid[j] - t_grid[j - 1]) * (r.positive_fraction[j] + r.positive_fraction[j - 1]);
        r.running_estimate.push_back(integral / t_grid[j]);
    }
    const double n = double(n_paths);
    r.estimate = sum / n;
    r.std_error = std::sqrt(std::max(0.0, (sum_sq / n - r.estimate * r.estimate) / (n - 1.0)));
    return r;
}

} // namespace lamperti
