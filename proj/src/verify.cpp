#include "lamperti/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "lamperti/associated.hpp"
#include "lamperti/errors.hpp"
#include "lamperti/exponents.hpp"
#include "lamperti/io.hpp"
#include "lamperti/limits.hpp"
#include "lamperti/properties.hpp"

namespace lamperti {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

LampertiCharacteristics make(double alpha, std::vector<Direction> dirs, double theta,
                             std::optional<double> drift = std::nullopt) {
    LampertiCharacteristics c;
    c.alpha = alpha;
    c.directions = std::move(dirs);
    c.theta = {theta};
    if (drift) c.drift = Vector{*drift};
    return c;
}

double sup_ecf_distance(const std::vector<SamplePath>& paths, const LampertiCharacteristics& chars) {
    Vector x;
    for (const auto& p : paths) x.push_back(p.values.back()[0]);
    const auto grid = default_lambda_grid();
    const auto emp = ecf(x, grid);
    const CharExponent psi(chars);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) worst = std::max(worst, std::abs(emp[j] - std::exp(-psi(grid[j]))));
    return worst;
}

CriterionResult exponent_oracle() {
    const std::vector<LampertiCharacteristics> sets = {
        make(0.5, {{{1.0}, 1.0, 1.0}, {{-1.0}, 1.0, 0.5}}, 0.0, 0.0),
        make(1.0, {{{1.0}, 1.0, 0.5}, {{-1.0}, 1.0, 0.5}}, 0.0),
        make(1.5, {{{1.0}, 1.0, 1.0}, {{-1.0}, 1.0, 1.0}}, 0.0),
        make(0.5, {{{1.0}, 1.0, 0.5}}, 0.3),
        make(1.5, {{{-1.0}, 2.0, 1.2}}, -0.4),
        make(1.0, {{{1.0}, 0.7, 1.6}}, 0.2),
    };
    double worst = 0.0;
    for (const auto& c : sets)
        for (const auto& e : evaluate_exponent(c, {-5, -2, -1, -0.5, 0.5, 1, 2, 5}, true)) worst = std::max(worst, *e.abs_error);
    return {1, "exponent vs Levy-Khintchine quadrature", worst < 1e-6, false,
            fmt("max |Psi - oracle| = %.3g over 6 sets x 8 lambdas (tol 1e-6)", worst)};
}

CriterionResult golden_identity() {
    double worst = 0.0;
    for (double a : {0.3, 0.5, 0.7}) {
        auto c = LampertiCharacteristics::one_dimensional(a, a, 0.0, a / std::tgamma(1.0 - a), 0.0);
        c.drift = Vector{0.0};
        const SubordinatorExponent phi(c);
        for (double l = 1.0; l <= 10.0 + 1e-12; l += 0.25) {
            const double lhs = std::exp(std::lgamma(a * l + 1.0) - std::lgamma(a * (l - 1.0) + 1.0));
            worst = std::max(worst, std::abs(lhs - phi(a * l) - 1.0 / std::tgamma(1.0 - a)));
        }
    }
    return {2, "subordinator gamma-ratio identity", worst < 1e-8, false,
            fmt("max deviation %.3g on alpha in {0.3,0.5,0.7}, lambda in [1,10] (tol 1e-8)", worst)};
}

CriterionResult ou_local_time() {
    double worst = 0.0;
    for (double g : {0.5, 2.0}) {
        const auto c = LampertiCharacteristics::one_dimensional(0.5, 1.0, 0.0, std::sqrt(g / std::numbers::pi), 0.0);
        for (double t : {0.1, 1.0, 3.0}) {
            const double e = std::exp(2.0 * g * t);
            const double display = std::pow(2.0 * g, 1.5) * e / (std::sqrt(2.0 * std::numbers::pi) * std::pow(e - 1.0, 1.5));
            worst = std::max(worst, std::abs(display - 2.0 * g * density(c, 0, 2.0 * g * t)));
        }
    }
    return {3, "OU local-time measure", worst < 1e-10, false, fmt("max pointwise difference %.3g (tol 1e-10)", worst)};
}

CriterionResult tail_asymptotics() {
    double small = 0.0, ratio = 0.0;
    for (auto [a, b] : {std::pair{0.5, 1.0}, {1.5, 0.4}, {1.0, 1.5}}) {
        const auto c = LampertiCharacteristics::one_dimensional(a, b, 0.0, 1.0, 0.0);
        small = std::max(small, std::abs(std::pow(1e-4, a) * tail(c, 0, 1e-4) * a - 1.0));
        const double u = 30.0, tu = tail(c, 0, u);
        for (double x : {0.5, 1.0, 2.0})
            ratio = std::max(ratio, std::abs(tail(c, 0, u - x) / tu / std::exp((a + 1.0 - b) * x) - 1.0));
    }
    return {4, "tail asymptotics", small < 0.01 && ratio < 1e-3, false,
            fmt("x^a tail(x) rel. error %.3g at 1e-4 (tol 1e-2); exponential ratio rel. error %.3g at u=30 (tol 1e-3)",
                small, ratio)};
}

CriterionResult drift_root() {
    const double r0 = rho_zero(1.5, 1.0);
    const double g0 = drift_root_function(1.5, 1.0, r0);
    const double g1 = drift_root_function(1.5, 1.0, 1.0);
    const double g2 = drift_root_function(1.5, 1.0, 2.0);
    auto neg = [](double rho) {
        return with_zero_theta_tilde(LampertiCharacteristics::one_dimensional(1.5, 0.0, rho, 0.0, 1.0));
    };
    const bool root_ok = r0 > 1.0 && r0 < 2.0 && std::abs(g0) < 1e-12;
    const bool signs_ok = g1 < 0.0 && g2 > 0.0;
    const bool flip_ok = drift_classification(neg(r0 - 0.1)).direction == DriftDirection::to_plus_infinity &&
                         drift_classification(neg(r0 + 0.1)).direction == DriftDirection::to_minus_infinity;
    std::string detail = "rho0 = " + format_number(r0) + fmt(", |g(rho0)| = %.3g; g(1) = %.6g, g(2) = %.6g", std::abs(g0), g1, g2) +
                         (flip_ok ? "; classification flips at rho0 +- 0.1" : "; classification does not flip");
    if (!signs_ok)
        detail += "; required g(1) < 0 < g(2) contradicts Gamma(-alpha) > 0 on (1,2) and the drift to +infinity below rho0";
    return {5, "drift root rho0", root_ok && signs_ok && flip_ok, root_ok && flip_ok && !signs_ok, detail};
}

CriterionResult simulation_ecf() {
    SeriesConfig cfg;
    cfg.n_terms = 10000;
    cfg.n_paths = 10000;
    cfg.seed = 2024;
    const auto chars = figure_one_characteristics();
    const double d = sup_ecf_distance(sample_path(chars, cfg), chars);
    return {6, "series samples vs exp(-Psi)", d < 0.05, false,
            fmt("sup |ECF - exp(-Psi)| = %.4f on |lambda| <= 5, 1e4 paths, N = 1e4 (tol 0.05)", d)};
}

CriterionResult short_time() {
    LimitConfig cfg;
    cfg.n_paths = 10000;
    cfg.seed = 7;
    const auto r = short_time_test(figure_one_characteristics(), {1.0, 0.1, 0.01}, cfg);
    const double allowance = 2.0 / std::sqrt(10000.0);
    bool ok = true;
    for (std::size_t k = 1; k < r.size(); ++k) ok = ok && r[k].sup_distance <= r[k - 1].sup_distance + allowance;
    return {7, "short-time stable limit", ok, false,
            fmt("sup distance %.4f, %.4f, %.4f at h = 1, 0.1, 0.01 (allowance 0.02)", r[0].sup_distance,
                r[1].sup_distance, r[2].sup_distance)};
}

CriterionResult long_time() {
    LimitConfig cfg;
    cfg.n_paths = 10000;
    cfg.seed = 11;
    cfg.n_terms = 200;
    const auto r = long_time_test(figure_one_characteristics(), {100.0}, cfg);
    return {8, "long-time Gaussian limit", r[0].sup_distance < 0.05, false,
            fmt("sup distance %.4f at h = 100, 1e4 paths (tol 0.05)", r[0].sup_distance)};
}

CriterionResult spitzer() {
    const double r0 = rho_zero(1.5, 1.0);
    const auto chars = with_zero_theta_tilde(LampertiCharacteristics::one_dimensional(1.5, 0.0, r0, 0.0, 1.0));
    Vector grid;
    for (int j = 1; j <= 1000; ++j) grid.push_back(0.05 * j);
    const auto r = spitzer_estimate(chars, grid, 2000, 5, 20000);
    const bool ok = std::abs(r.estimate - 1.0 / 1.5) < 0.05;
    std::string detail = fmt("estimate %.4f +- %.4f at t = 50 vs 1/alpha = 0.6667 (tol 0.05)", r.estimate, r.std_error);
    if (!ok)
        detail += "; at rho0 the mean vanishes and the variance is finite, so P(X_t >= 0) -> 1/2 by the CLT; "
                  "1/alpha is the stable positivity parameter, not this process's";
    return {9, "Spitzer positivity estimate", ok, !ok && std::abs(r.estimate - 0.5) < 4.0 * r.std_error + 0.02, detail};
}

CriterionResult scale_laplace() {
    double worst = 0.0;
    for (double a : {0.3, 0.5, 0.7}) {
        auto c = LampertiCharacteristics::one_dimensional(a, 1.0, 0.0, 1.0, 0.0);
        c.drift = Vector{0.0};
        const ScaleFunction w(c, ScaleVariant::beta1);
        for (double l : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(scale_laplace_transform(w, l) * w.psi(l) - 1.0));
    }
    return {10, "scale function Laplace identity", worst < 1e-3, false,
            fmt("max |L[W](lambda) psi(lambda) - 1| = %.3g (tol 1e-3)", worst)};
}

CriterionResult binomial_series() {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{0.5, 0.5}, {0.3, 0.9}, {0.7, -0.4}, {1.5, 1.0}}) {
        const auto c = LampertiCharacteristics::one_dimensional(a, b, 0.0, 1.0, 0.0);
        for (double x : {0.1, 1.0, 5.0}) worst = std::max(worst, std::abs(tail_series(c, x) - tail(c, 0, x)));
    }
    return {11, "binomial tail series vs quadrature", worst < 1e-10, false,
            fmt("max |series - quadrature| = %.3g (tol 1e-10)", worst)};
}

CriterionResult density_martingale() {
    const auto chars = figure_one_characteristics();
    SeriesConfig cfg;
    cfg.n_terms = 2000;
    cfg.n_paths = 1000;
    cfg.seed = 21;
    cfg.record_jumps_above = 0.01;
    double stable = 0.0;
    for (const auto& p : sample_stable_path(chars, cfg)) stable += std::exp(density_process(chars, p, 0.01).log_density_values.back());
    stable /= 1000.0;
    cfg.record_jumps_above = 0.02;
    double lamperti = 0.0;
    for (const auto& p : sample_path(chars, cfg)) lamperti += std::exp(density_process(chars, p, 0.02).log_density_values.back());
    lamperti /= 1000.0;
    return {12, "density process mean", std::abs(stable - 1.0) < 0.1, false,
            fmt("mean exp(U_1) = %.4f over 1e3 stable paths (tol 0.1); Lamperti-path mean %.4f (heavy-tailed weights)",
                stable, lamperti)};
}

CriterionResult determinism() {
    const auto chars = figure_one_characteristics();
    const auto cfg = default_simulation_config(42);
    const std::string a = simulation_csv(chars, cfg);
    const std::string b = simulation_csv(chars, cfg);
    return {13, "simulate determinism", a == b && !a.empty(), false,
            "two seed-42 runs, " + std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

} // namespace

LampertiCharacteristics figure_one_characteristics() {
    return LampertiCharacteristics::one_dimensional(0.5, 1.0, 1.0, 1.0, 1.0);
}

SeriesConfig default_simulation_config(std::uint64_t seed) {
    SeriesConfig cfg;
    cfg.seed = seed;
    cfg.n_paths = 10;
    cfg.n_terms = 1000;
    cfg.time_grid.clear();
    for (int j = 0; j <= 100; ++j) cfg.time_grid.push_back(0.01 * j);
    cfg.time_grid.back() = 1.0;
    return cfg;
}

std::string simulation_csv(const LampertiCharacteristics& chars, const SeriesConfig& config) {
    std::ostringstream out;
    write_paths_csv(out, sample_path(chars, config));
    return out.str();
}

CriterionResult run_criterion(int id) {
    using Fn = CriterionResult (*)();
    static constexpr Fn table[kCriterionCount] = {exponent_oracle, golden_identity, ou_local_time, tail_asymptotics,
                                                  drift_root,      simulation_ecf,  short_time,    long_time,
                                                  spitzer,         scale_laplace,   binomial_series, density_martingale,
                                                  determinism};
    if (id < 1 || id > kCriterionCount) throw DomainError("run_criterion: id must be in 1..13");
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = table[id - 1]();
    } catch (const std::exception& e) {
        r = {id, "criterion " + std::to_string(id), false, false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Wall-clock budgets for the timed criteria.
    static constexpr double budget[kCriterionCount] = {10, 0, 0, 1, 0, 60, 0, 0, 300, 0, 0, 0, 0};
    if (budget[id - 1] > 0.0 && r.seconds > budget[id - 1]) {
        r.passed = false;
        r.known_defect = false;
        r.detail += fmt("; over the %.0f s budget", budget[id - 1]);
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %-40s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds);
    std::string line = head + r.detail;
    if (!r.passed && r.known_defect) line += " (known defect in the criterion)";
    return line;
}

} // namespace lamperti
