#include "doctest.h"
#include "lamperti/exponents.hpp"
#include "lamperti/rng.hpp"
#include "lamperti/simulate.hpp"

#include <cmath>
#include <complex>

using namespace lamperti;

namespace {

LampertiCharacteristics figure_one() { return LampertiCharacteristics::one_dimensional(0.5, 1.0, 1.0, 1.0, 1.0); }

// sup over lambda in [-5, 5] of |ECF - exp(-Psi)| at t = 1.
template <class Reference>
double ecf_distance(const std::vector<SamplePath>& paths, const Reference& psi) {
    double worst = 0.0;
    for (int j = -50; j <= 50; ++j) {
        const double lambda = 0.1 * j;
        Complex sum = 0.0;
        for (const auto& p : paths) sum += std::exp(Complex(0.0, lambda * p.values.back()[0]));
        sum /= double(paths.size());
        worst = std::max(worst, std::abs(sum - std::exp(-psi(lambda))));
    }
    return worst;
}

SeriesConfig config(std::size_t n_terms, std::size_t n_paths, std::uint64_t seed = 7) {
    SeriesConfig c;
    c.n_terms = n_terms;
    c.n_paths = n_paths;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using P = Philox4x32;
    CHECK(P::apply({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(P::apply({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) ==
          P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(P::apply({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("uniform streams are open-interval and addressable") {
    UniformStream a(42, 3, Variable::arrival), b(42, 3, Variable::arrival), c(42, 4, Variable::arrival);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = a.at(i);
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        mean += u;
    }
    CHECK(mean / 20000 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(b.at(1234) == a.at(1234));
    CHECK(b.at(7) == a.at(7));
    CHECK(c.at(7) != a.at(7));
    CHECK(UniformStream::to_unit(0, 0) > 0.0);
    CHECK(UniformStream::to_unit(~0u, ~0u) < 1.0);
}

TEST_CASE("inverse tail closed form and round trip") {
    auto unit = LampertiCharacteristics::one_dimensional(0.5, 1.0, 1.0, 1.0, 0.0);
    CHECK(inverse_tail(unit, 0, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(inverse_tail(unit, 0, 1e300) < 1e-200);
    CHECK_THROWS_AS(inverse_tail(unit, 0, 0.0), DomainError);

    const std::vector<LampertiCharacteristics> sets = {
        LampertiCharacteristics::one_dimensional(0.5, 0.5, 1.0, 1.0, 0.0),
        LampertiCharacteristics::one_dimensional(1.5, 2.0, 1.0, 1.0, 0.0),
        LampertiCharacteristics::one_dimensional(1.0, 0.3, 1.0, 1.0, 0.0),
        LampertiCharacteristics::one_dimensional(0.8, 1.0, 1.0, 2.0, 0.0),
    };
    for (const auto& chars : sets) {
        for (double u : {1e-3, 1.0, 10.0, 1e3}) {
            const double x = inverse_tail(chars, 0, u);
            CHECK(tail(chars, 0, x) == doctest::Approx(u).epsilon(1e-10));
        }
    }
}

TEST_CASE("tabulated inverse agrees with the exact inverse") {
    for (double f : {0.5, 2.0, -1.0}) {
        auto chars = LampertiCharacteristics::one_dimensional(1.5, f, 1.0, 1.0, 0.0);
        for (double n : {1e-4, 0.02, 3.0, 1e3, 1e5, 1e8}) {
            // truncation_error evaluates the table at v = N / (T sigma_total).
            const double v = n;
            SeriesConfig c;
            c.n_terms = 1;
            c.horizon_T = 1.0 / v;
            c.time_grid = {c.horizon_T};
            CHECK(truncation_error(chars, c) == doctest::Approx(inverse_tail(chars, 0, v)).epsilon(1e-9));
        }
    }
}

TEST_CASE("truncation proxy") {
    auto unit = LampertiCharacteristics::one_dimensional(0.5, 1.0, 1.0, 1.0, 0.0);
    auto c = config(10000, 1);
    CHECK(truncation_error(unit, c) == doctest::Approx(std::log1p(1.0 / (5000.0 * 5000.0))).epsilon(1e-14));
    CHECK(truncation_error(unit, c) == doctest::Approx(4e-8).epsilon(1e-6));
    c.n_terms = 1000000;
    CHECK(truncation_error(unit, c) < 1e-11);
}

TEST_CASE("centering constants") {
    auto one_sided = LampertiCharacteristics::one_dimensional(0.5, 1.0, 1.0, 1.0, 0.0);
    auto c = centering_constants(one_sided, config(3, 1));
    // Quadrature of ln(1 + (alpha s)^{-1/alpha}) 1{<= 1} over [i-1, i] (mpmath, 40 digits).
    CHECK(c[0][0] == 0.0);
    CHECK(c[1][0] == doctest::Approx(0.3953803799706707111).epsilon(1e-10));
    CHECK(c[2][0] == doctest::Approx(0.5064622186555844744).epsilon(1e-10));

    for (const auto& ci : centering_constants(figure_one(), config(50, 1))) CHECK(std::abs(ci[0]) < 1e-14);

    auto general = LampertiCharacteristics::one_dimensional(1.5, 0.8, 1.2, 1.0, 0.5);
    auto cfg = config(400, 1);
    auto all = centering_constants(general, cfg);
    double sum = 0.0;
    for (const auto& ci : all) sum += ci[0];
    auto path = sample_path(general, cfg).front();
    CHECK(sum == doctest::Approx(path.compensation[0]).epsilon(1e-8));
}

TEST_CASE("path structure and determinism") {
    auto chars = LampertiCharacteristics::one_dimensional(1.5, 0.8, 1.2, 1.0, 0.5, 0.3);
    SeriesConfig cfg = config(500, 3, 99);
    cfg.time_grid = {0.0, 0.25, 0.5, 1.0};
    auto a = sample_path(chars, cfg);
    auto b = sample_path(chars, cfg);
    REQUIRE(a.size() == 3);
    for (std::size_t p = 0; p < a.size(); ++p) {
        CHECK(a[p].values[0][0] == 0.0);
        CHECK(a[p].times.size() == a[p].values.size());
        for (std::size_t j = 0; j < a[p].values.size(); ++j) CHECK(a[p].values[j][0] == b[p].values[j][0]);
        CHECK(a[p].seed_used == 99);
        CHECK(a[p].n_terms_used == 500);
        CHECK(a[p].truncation_bound > 0.0);
    }
    CHECK(a[0].values[3][0] != a[1].values[3][0]);

    // The horizon value does not depend on the grid.
    SeriesConfig only = cfg;
    only.time_grid = {1.0};
    auto h = sample_path(chars, only);
    CHECK(h[1].values[0][0] == doctest::Approx(a[1].values[3][0]).epsilon(1e-12));

    cfg.time_grid = {0.5, 0.2};
    CHECK_THROWS_AS(sample_path(chars, cfg), DomainError);
}

TEST_CASE("one-sided paths increase after removing the linear part") {
    auto chars = LampertiCharacteristics::one_dimensional(0.5, 1.2, 1.0, 1.0, 0.0);
    SeriesConfig cfg = config(2000, 5);
    for (int j = 0; j <= 100; ++j) cfg.time_grid.push_back(0.01 * j);
    cfg.time_grid.erase(cfg.time_grid.begin());
    SeriesSampler sampler(chars, cfg);
    const double slope = sample_path(chars, cfg)[0].compensation[0];
    const double theta = chars.theta[0];
    for (std::size_t p = 0; p < 5; ++p) {
        auto path = sampler.path(p);
        for (std::size_t j = 1; j < path.times.size(); ++j) {
            const double prev = path.values[j - 1][0] + (theta + slope) * path.times[j - 1];
            const double cur = path.values[j][0] + (theta + slope) * path.times[j];
            CHECK(cur >= prev - 1e-12);
        }
    }
}

TEST_CASE("simulated X_1 matches the closed-form characteristic function") {
    struct Case {
        LampertiCharacteristics chars;
        std::size_t n_terms;
    };
    LampertiCharacteristics drifted = LampertiCharacteristics::one_dimensional(0.7, 1.3, 0.6, 0.8, 1.1);
    drifted.drift = Vector{0.4};
    const std::vector<Case> cases = {
        {figure_one(), 1000},
        {LampertiCharacteristics::one_dimensional(1.5, 0.8, 1.2, 1.0, 0.5, 0.3), 2000},
        {LampertiCharacteristics::one_dimensional(1.0, 1.4, 0.5, 0.7, 1.0, -0.2), 2000},
        {drifted, 1000},
    };
    const std::size_t n = 2000;
    for (const auto& c : cases) {
        CharExponent psi(c.chars);
        auto paths = sample_path(c.chars, config(c.n_terms, n, 11));
        CHECK(ecf_distance(paths, psi) < 4.0 / std::sqrt(double(n)) + 0.01);
    }
}

TEST_CASE("ECF distance does not grow with the number of terms") {
    const auto chars = LampertiCharacteristics::one_dimensional(1.5, 0.8, 1.2, 1.0, 0.5);
    CharExponent psi(chars);
    const std::size_t n = 2000;
    const double noise = 4.0 / std::sqrt(double(n));
    double previous = 1e9;
    for (std::size_t terms : {100u, 1000u, 10000u}) {
        const double d = ecf_distance(sample_path(chars, config(terms, n, 5)), psi);
        CHECK(d <= previous + noise);
        previous = d;
    }
}

TEST_CASE("stable sampler matches the stable characteristic function") {
    const auto chars = figure_one();
    // -Gamma(-1/2) = 2 sqrt(pi); Psi(lambda) = 2 * 2 sqrt(pi) cos(pi/4) |lambda|^{1/2}.
    auto psi = [](double l) { return Complex(4.0 * std::sqrt(M_PI) * std::cos(M_PI / 4) * std::sqrt(std::abs(l)), 0.0); };
    auto paths = sample_stable_path(chars, config(2000, 2000, 3));
    CHECK(ecf_distance(paths, psi) < 4.0 / std::sqrt(2000.0) + 0.01);
}

TEST_CASE("density process ingredients") {
    CHECK(std::abs(log_density_ratio(0.5, 1.0, 1e-9)) < 1e-9);
    CHECK(log_density_ratio(1.5, 0.3, 2.0) ==
          doctest::Approx(0.6 + 2.5 * (std::log(2.0) - std::log(std::expm1(2.0)))).epsilon(1e-14));

    // mpmath references (40 digits) of the three cases.
    auto c05 = LampertiCharacteristics::one_dimensional(0.5, 1.0, 0.5, 1.0, 1.0);
    auto c1 = LampertiCharacteristics::one_dimensional(1.0, 0.5, 1.5, 1.0, 2.0);
    auto c15 = LampertiCharacteristics::one_dimensional(1.5, 2.0, 1.0, 1.0, 0.5);
    CHECK(mutual_ac_shift(c05)[0] == doctest::Approx(0.32605777464126474201).epsilon(1e-9));
    CHECK(mutual_ac_shift(c1)[0] == doctest::Approx(-1.4994723909085676807).epsilon(1e-9));
    CHECK(mutual_ac_shift(c15)[0] == doctest::Approx(0.88136662010483275891).epsilon(1e-9));
    CHECK(tail_difference(c05, 0.01) == doctest::Approx(-1.9999583333723957823).epsilon(1e-8));
}

TEST_CASE("density process along paths") {
    const auto chars = figure_one();
    SeriesConfig cfg = config(2000, 1000, 21);
    cfg.time_grid = {0.0, 0.5, 1.0};
    cfg.record_jumps_above = 0.01;
    auto stable = sample_stable_path(chars, cfg);
    double mean = 0.0;
    for (const auto& p : stable) {
        auto u = density_process(chars, p, 0.01);
        CHECK(u.log_density_values[0] == 0.0);
        mean += std::exp(u.log_density_values.back());
    }
    CHECK(mean / 1000.0 == doctest::Approx(1.0).epsilon(0.1));

    auto lamperti_path = sample_path(chars, cfg).front();
    auto u = density_process(chars, lamperti_path, 0.02);
    CHECK(u.epsilon == 0.02);
    CHECK(std::isfinite(u.log_density_values.back()));
    CHECK_THROWS_AS(density_process(chars, lamperti_path, 0.005), DomainError);
    CHECK_THROWS_AS(density_process(chars, lamperti_path, -1.0), DomainError);
}
