#include "lamperti/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lamperti/errors.hpp"
#include "lamperti/rng.hpp"

namespace lamperti {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Radial part of a Levy measure without its sigma weight: the tail tau(x) and
// the truncated first moment int_a^b x g(x) dx.
class RadialLaw {
public:
    virtual ~RadialLaw() = default;
    virtual double inverse(double v) const = 0;
    virtual double first_moment(double a, double b) const = 0;
};

class StableRadial final : public RadialLaw {
public:
    explicit StableRadial(double alpha) : alpha_(alpha) {}
    double inverse(double v) const override { return std::pow(alpha_ * v, -1.0 / alpha_); }
    double first_moment(double a, double b) const override {
        if (alpha_ == 1.0) return std::log(b / a);
        return (std::pow(b, 1.0 - alpha_) - std::pow(a, 1.0 - alpha_)) / (1.0 - alpha_);
    }

private:
    double alpha_;
};

class LampertiRadial : public RadialLaw {
public:
    LampertiRadial(double alpha, double f) : alpha_(alpha), f_(f) {}
    double first_moment(double a, double b) const override {
        QuadratureSpec s;
        auto r = radial_integral(alpha_, f_, 1.0, a, b, s);
        require_converged(r, s.abs_tol, s.rel_tol, "series compensation");
        return r.value;
    }

protected:
    double alpha_, f_;
};

// f = 1: tau(x) = (e^x - 1)^{-alpha} / alpha.
class UnitRadial final : public LampertiRadial {
public:
    explicit UnitRadial(double alpha) : LampertiRadial(alpha, 1.0) {}
    double inverse(double v) const override { return std::log1p(std::pow(alpha_ * v, -1.0 / alpha_)); }
};

// General f: cubic Hermite table of ln x against ln tau on [1e-4, 40], with
// asymptotic expansions outside.
class TabulatedRadial final : public LampertiRadial {
public:
    TabulatedRadial(double alpha, double f) : LampertiRadial(alpha, f), delta_(alpha + 1.0 - f) {
        q1_ = f - 0.5 * (alpha + 1.0);
        q2_ = 0.5 * q1_ * q1_ - (alpha + 1.0) / 24.0;
        const double lo = std::log(kSmall), hi = std::log(kLarge);
        const int n = static_cast<int>(std::ceil((hi - lo) / 0.01));
        const double h = (hi - lo) / n;
        std::vector<double> lnx(n + 1), tau(n + 1);
        for (int j = 0; j <= n; ++j) lnx[j] = lo + j * h;
        lnx[n] = hi;
        tau[n] = std::exp(-delta_ * kLarge) / delta_ +
                 (alpha + 1.0) * std::exp(-(delta_ + 1.0) * kLarge) / (delta_ + 1.0);
        auto g = [&](double r) { return lamperti_density(alpha_, f_, r); };
        for (int j = n - 1; j >= 0; --j) {
            auto piece = gauss_kronrod<double>(g, std::exp(lnx[j]), std::exp(lnx[j + 1]), 0.0, 1e-13);
            tau[j] = tau[j + 1] + piece.value;
        }
        tau_small_ = tau[0];
        tau_large_ = tau[n];
        // Stored with ln tau ascending.
        for (int j = n; j >= 0; --j) {
            const double x = std::exp(lnx[j]);
            lt_.push_back(std::log(tau[j]));
            lx_.push_back(lnx[j]);
            slope_.push_back(-tau[j] / (x * g(x)));
        }
    }

    double inverse(double v) const override {
        if (v >= tau_small_) return small_inverse(v);
        if (v <= tau_large_) return -std::log(delta_ * v) / delta_;
        const double l = std::log(v);
        const auto it = std::upper_bound(lt_.begin(), lt_.end(), l);
        const std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - lt_.begin(), 1), lt_.size() - 1) - 1;
        const double w = lt_[i + 1] - lt_[i];
        const double s = (l - lt_[i]) / w;
        const double s2 = s * s, s3 = s2 * s;
        const double y = (2 * s3 - 3 * s2 + 1) * lx_[i] + (s3 - 2 * s2 + s) * w * slope_[i] +
                         (-2 * s3 + 3 * s2) * lx_[i + 1] + (s3 - s2) * w * slope_[i + 1];
        return std::exp(y);
    }

private:
    static constexpr double kSmall = 1e-4;
    static constexpr double kLarge = 40.0;

    // Integral of x^{-alpha-1}(1 + q1 x + q2 x^2) from x to kSmall, plus tau(kSmall).
    double small_tail(double x) const {
        const double a = alpha_;
        double t = tau_small_ + (std::pow(x, -a) - std::pow(kSmall, -a)) / a;
        t += q1_ * (a == 1.0 ? std::log(kSmall / x)
                             : (std::pow(kSmall, 1.0 - a) - std::pow(x, 1.0 - a)) / (1.0 - a));
        t += q2_ * (std::pow(kSmall, 2.0 - a) - std::pow(x, 2.0 - a)) / (2.0 - a);
        return t;
    }

    double small_inverse(double v) const {
        const double a = alpha_;
        double y = -std::log(a * (v - tau_small_) + std::pow(kSmall, -a)) / a;
        for (int it = 0; it < 30; ++it) {
            const double x = std::exp(y);
            const double slope = -std::pow(x, -a) * (1.0 + q1_ * x + q2_ * x * x);
            const double step = (small_tail(x) - v) / slope;
            y -= step;
            if (std::abs(step) < 1e-15) break;
        }
        return std::exp(y);
    }

    double delta_, q1_ = 0.0, q2_ = 0.0;
    double tau_small_ = 0.0, tau_large_ = 0.0;
    std::vector<double> lt_, lx_, slope_;
};

std::unique_ptr<RadialLaw> make_law(double alpha, double f, PathLaw law) {
    if (law == PathLaw::stable) return std::make_unique<StableRadial>(alpha);
    if (f == 1.0) return std::make_unique<UnitRadial>(alpha);
    return std::make_unique<TabulatedRadial>(alpha, f);
}

// h(r) = (K(r) - 1) / r where K is the density kernel; h(0) = f - (alpha+1)/2.
double kernel_excess_over_r(double alpha, double f, double r) {
    if (r == 0.0) return f - 0.5 * (alpha + 1.0);
    return std::expm1(f * r - (alpha + 1.0) * log_expm1_over_r(r)) / r;
}

} // namespace

void SeriesConfig::validate() const {
    if (!(horizon_T > 0.0) || !std::isfinite(horizon_T)) throw DomainError("horizon_T: must be positive");
    if (n_terms < 1) throw DomainError("n_terms: must be at least 1");
    if (n_paths < 1) throw DomainError("n_paths: must be at least 1");
    if (time_grid.empty()) throw DomainError("time_grid: must not be empty");
    for (std::size_t j = 0; j < time_grid.size(); ++j) {
        if (!(time_grid[j] >= 0.0 && time_grid[j] <= horizon_T))
            throw DomainError("time_grid: entries must lie in [0, horizon_T]");
        if (j > 0 && time_grid[j] < time_grid[j - 1]) throw DomainError("time_grid: must be sorted");
    }
    if (!(record_jumps_above > 0.0)) throw DomainError("record_jumps_above: must be positive");
}

double inverse_tail(const LampertiCharacteristics& chars, std::size_t k, double u, const QuadratureSpec& spec) {
    chars.validate();
    if (k >= chars.directions.size()) throw DomainError("direction_index: out of range");
    if (!(u > 0.0)) throw DomainError("inverse_tail: u must be positive");
    const auto& d = chars.directions[k];
    const double a = chars.alpha;
    if (std::isinf(u)) return 0.0;
    if (d.f == 1.0) return std::log1p(std::pow(a * u / d.sigma, -1.0 / a));

    QuadratureSpec s = spec;
    s.rel_tol = std::min(s.rel_tol, 1e-13);
    s.abs_tol = std::min(s.abs_tol, 1e-300);
    auto F = [&](double y) { return tail(chars, k, std::exp(y), s) - u; };
    // Bracket in y = ln x.
    double y = std::log(std::pow(a * u / d.sigma, -1.0 / a));
    double lo = y, hi = y;
    double flo = F(lo), fhi = flo;
    while (flo < 0.0) { lo -= 1.0; flo = F(lo); }
    while (fhi > 0.0) { hi += 1.0; fhi = F(hi); }
    y = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fy = F(y);
        if (fy == 0.0) break;
        (fy > 0.0 ? lo : hi) = y;
        const double x = std::exp(y);
        double next = y + fy / (x * density(chars, k, x));  // d tail / dy = -x g(x)
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - y);
        y = next;
        if (step < 1e-14 || hi - lo < 1e-14) break;
    }
    return std::exp(y);
}

struct SeriesSampler::Impl {
    std::size_t dim;
    double T;
    std::size_t N;
    std::uint64_t seed;
    Vector grid;
    bool horizon_only;
    double record_above;
    PathLaw law;
    double v_scale;
    std::vector<std::unique_ptr<RadialLaw>> radial;
    std::vector<Vector> xi;
    std::vector<double> cumulative_weight;
    Vector compensation;
    Vector linear;  // per unit time
    double truncation = 0.0;
};

SeriesSampler::SeriesSampler(const LampertiCharacteristics& chars, const SeriesConfig& config, PathLaw law)
    : impl_(std::make_unique<Impl>()) {
    chars.validate();
    config.validate();
    auto& m = *impl_;
    m.dim = chars.dimension();
    m.T = config.horizon_T;
    m.N = config.n_terms;
    m.seed = config.seed;
    m.grid = config.time_grid;
    m.horizon_only = m.grid.size() == 1 && m.grid[0] == m.T;
    m.record_above = config.record_jumps_above;
    m.law = law;
    const double total = chars.sigma_total();
    m.v_scale = 1.0 / (m.T * total);
    m.compensation.assign(m.dim, 0.0);
    double acc = 0.0;
    for (const auto& d : chars.directions) {
        m.radial.push_back(make_law(chars.alpha, d.f, law));
        m.xi.push_back(d.xi);
        acc += d.sigma / total;
        m.cumulative_weight.push_back(acc);
        const double xN = m.radial.back()->inverse(double(m.N) * m.v_scale);
        m.truncation = std::max(m.truncation, xN);
        if (xN < 1.0) {
            const double c = m.T * d.sigma * m.radial.back()->first_moment(xN, 1.0);
            for (std::size_t i = 0; i < m.dim; ++i) m.compensation[i] += d.xi[i] * c;
        }
    }
    m.cumulative_weight.back() = 1.0;
    // Linear part -theta t; a configured drift fixes theta through d = -theta - m0.
    // The stable law gets the theta that makes its exponent strictly stable
    // (no compensation for alpha < 1, full compensation for alpha > 1).
    Vector theta(m.dim, 0.0);
    if (law == PathLaw::lamperti) {
        theta = chars.theta;
        if (chars.drift) {
            const Vector m0 = weighted_first_moment(chars, 0.0, 1.0);
            for (std::size_t i = 0; i < m.dim; ++i) theta[i] = -(*chars.drift)[i] - m0[i];
        }
    } else if (chars.alpha != 1.0) {
        const double a = chars.alpha;
        for (const auto& d : chars.directions)
            for (std::size_t i = 0; i < m.dim; ++i) theta[i] -= d.xi[i] * d.sigma / (1.0 - a);
    }
    m.linear.resize(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) m.linear[i] = -theta[i] - m.compensation[i] / m.T;
}

SeriesSampler::~SeriesSampler() = default;
SeriesSampler::SeriesSampler(SeriesSampler&&) noexcept = default;
SeriesSampler& SeriesSampler::operator=(SeriesSampler&&) noexcept = default;

double SeriesSampler::truncation_bound() const { return impl_->truncation; }

SamplePath SeriesSampler::path(std::size_t path_index) const {
    const auto& m = *impl_;
    const auto stream = static_cast<std::uint32_t>(path_index);
    UniformStream arrivals(m.seed, stream, Variable::arrival);
    UniformStream times(m.seed, stream, Variable::time);
    UniformStream directions(m.seed, stream, Variable::direction);
    const std::size_t G = m.grid.size();
    const bool single = m.radial.size() == 1;
    std::vector<Vector> bucket(G, Vector(m.dim, 0.0));
    SamplePath out;
    double gamma = 0.0;
    for (std::size_t i = 0; i < m.N; ++i) {
        gamma -= std::log(arrivals.at(i));
        std::size_t k = 0;
        if (!single) {
            const double u = directions.at(i);
            while (k + 1 < m.cumulative_weight.size() && u > m.cumulative_weight[k]) ++k;
        }
        const double jump = m.radial[k]->inverse(gamma * m.v_scale);
        const bool record = jump > m.record_above;
        std::size_t b = G - 1;
        double when = m.T;
        if (!m.horizon_only || record) {
            when = m.T * times.at(i);
            if (!m.horizon_only) {
                b = std::size_t(std::lower_bound(m.grid.begin(), m.grid.end(), when) - m.grid.begin());
                if (b == G) {
                    if (record) out.jumps.push_back({when, k, jump});
                    continue;
                }
            }
        }
        for (std::size_t c = 0; c < m.dim; ++c) bucket[b][c] += jump * m.xi[k][c];
        if (record) out.jumps.push_back({when, k, jump});
    }
    out.times = m.grid;
    out.values.resize(G, Vector(m.dim, 0.0));
    Vector running(m.dim, 0.0);
    for (std::size_t j = 0; j < G; ++j) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            running[c] += bucket[j][c];
            out.values[j][c] = running[c] + m.linear[c] * m.grid[j];
        }
    }
    std::sort(out.jumps.begin(), out.jumps.end(),
              [](const RecordedJump& a, const RecordedJump& b) { return a.time < b.time; });
    out.seed_used = m.seed;
    out.path_index = path_index;
    out.n_terms_used = m.N;
    out.truncation_bound = m.truncation;
    out.compensation = m.compensation;
    out.law = m.law;
    out.jumps_recorded_above = m.record_above;
    return out;
}

std::vector<SamplePath> sample_path(const LampertiCharacteristics& chars, const SeriesConfig& config) {
    SeriesSampler sampler(chars, config, PathLaw::lamperti);
    std::vector<SamplePath> out;
    out.reserve(config.n_paths);
    for (std::size_t p = 0; p < config.n_paths; ++p) out.push_back(sampler.path(p));
    return out;
}

std::vector<SamplePath> sample_stable_path(const LampertiCharacteristics& chars, const SeriesConfig& config) {
    SeriesSampler sampler(chars, config, PathLaw::stable);
    std::vector<SamplePath> out;
    out.reserve(config.n_paths);
    for (std::size_t p = 0; p < config.n_paths; ++p) out.push_back(sampler.path(p));
    return out;
}

std::vector<Vector> centering_constants(const LampertiCharacteristics& chars, const SeriesConfig& config,
                                        const QuadratureSpec& spec) {
    chars.validate();
    config.validate();
    const double total = chars.sigma_total();
    const double v_scale = 1.0 / (config.horizon_T * total);
    std::vector<Vector> c(config.n_terms, Vector(chars.dimension(), 0.0));
    for (const auto& d : chars.directions) {
        auto law = make_law(chars.alpha, d.f, PathLaw::lamperti);
        double upper = kInf;  // x_{k,i-1}
        for (std::size_t i = 1; i <= config.n_terms; ++i) {
            const double x = law->inverse(double(i) * v_scale);
            const double top = std::min(upper, 1.0);
            if (x < top) {
                auto r = radial_integral(chars.alpha, d.f, 1.0, x, top, spec);
                require_converged(r, spec.abs_tol, spec.rel_tol, "centering_constants");
                const double w = config.horizon_T * d.sigma * r.value;
                for (std::size_t j = 0; j < d.xi.size(); ++j) c[i - 1][j] += d.xi[j] * w;
            }
            upper = x;
        }
    }
    return c;
}

double truncation_error(const LampertiCharacteristics& chars, const SeriesConfig& config) {
    chars.validate();
    config.validate();
    const double v = double(config.n_terms) / (config.horizon_T * chars.sigma_total());
    double worst = 0.0;
    for (const auto& d : chars.directions)
        worst = std::max(worst, make_law(chars.alpha, d.f, PathLaw::lamperti)->inverse(v));
    return worst;
}

double log_density_ratio(double alpha, double f, double r) {
    if (!(r > 0.0)) throw DomainError("log_density_ratio: r must be positive");
    return f * r - (alpha + 1.0) * log_expm1_over_r(r);
}

double tail_difference(const LampertiCharacteristics& chars, double epsilon, const QuadratureSpec& spec) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon: must be positive");
    double out = 0.0;
    for (std::size_t k = 0; k < chars.directions.size(); ++k)
        out += tail(chars, k, epsilon, spec) -
               chars.directions[k].sigma * std::pow(epsilon, -chars.alpha) / chars.alpha;
    return out;
}

DensityProcessSample density_process(const LampertiCharacteristics& chars, const SamplePath& path,
                                     double epsilon, const QuadratureSpec& spec) {
    chars.validate();
    if (!(epsilon > 0.0)) throw DomainError("epsilon: must be positive");
    if (epsilon < path.truncation_bound)
        throw DomainError("epsilon: below the truncation level of the path, jumps would be missing");
    if (epsilon < path.jumps_recorded_above)
        throw DomainError("epsilon: path did not record jumps down to this size");
    const double kappa = tail_difference(chars, epsilon, spec);
    const double sign = path.law == PathLaw::stable ? 1.0 : -1.0;
    DensityProcessSample out;
    out.epsilon = epsilon;
    out.times = path.times;
    out.log_density_values.reserve(path.times.size());
    double sum = 0.0;
    std::size_t next = 0;
    for (double t : path.times) {
        while (next < path.jumps.size() && path.jumps[next].time <= t) {
            const auto& j = path.jumps[next++];
            if (j.size > epsilon)
                sum += log_density_ratio(chars.alpha, chars.directions[j.direction].f, j.size);
        }
        out.log_density_values.push_back(sign * (sum - t * kappa));
    }
    return out;
}

Vector mutual_ac_shift(const LampertiCharacteristics& chars, const QuadratureSpec& spec) {
    chars.validate();
    const double a = chars.alpha;
    Vector out(chars.dimension(), 0.0);
    for (const auto& d : chars.directions) {
        double v;
        if (a < 1.0) {
            auto r = radial_integral(a, d.f, 1.0, 0.0, 1.0, spec);
            require_converged(r, spec.abs_tol, spec.rel_tol, "mutual_ac_shift");
            v = r.value;
        } else {
            auto h = [&](double r) { return kernel_excess_over_r(a, d.f, r); };
            auto r = integrate_power_singular<double>(h, 1.0 - a, 1.0, spec.abs_tol, spec.rel_tol,
                                                      spec.max_subdivisions);
            require_converged(r, spec.abs_tol, spec.rel_tol, "mutual_ac_shift");
            v = r.value;
            if (a > 1.0) v -= 1.0 / (a - 1.0);
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += d.xi[i] * d.sigma * v;
    }
    return out;
}

} // namespace lamperti
