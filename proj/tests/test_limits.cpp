#include "doctest.h"
#include "lamperti/errors.hpp"
#include "lamperti/limits.hpp"
#include "lamperti/properties.hpp"
#include "lamperti/simulate.hpp"

#include <cmath>
#include <random>

using namespace lamperti;

namespace {

LampertiCharacteristics figure_one() { return LampertiCharacteristics::one_dimensional(0.5, 1.0, 1.0, 1.0, 1.0); }

} // namespace

TEST_CASE("empirical characteristic function") {
    const Vector grid = default_lambda_grid();
    CHECK(grid.size() == 101);
    auto constant = ecf(Vector(7, 1.3), grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        CHECK(std::abs(constant[j] - std::exp(Complex(0.0, 1.3 * grid[j]))) < 1e-14);
        CHECK(std::abs(constant[j]) <= 1.0 + 1e-15);
    }
    CHECK(ecf({0.4, -2.0, 7.0}, {0.0})[0] == Complex(1.0, 0.0));

    std::mt19937_64 gen(5);
    std::normal_distribution<double> normal;
    Vector xs(100000);
    for (double& x : xs) x = normal(gen);
    CHECK(std::abs(ecf(xs, {1.0})[0] - std::exp(-0.5)) < 3.0 / std::sqrt(1e5));
    CHECK_THROWS_AS(ecf({}, {1.0}), DomainError);
}

TEST_CASE("stable reference exponent") {
    for (double a : {0.3, 0.5, 0.9, 1.2, 1.5, 1.9}) {
        auto chars = LampertiCharacteristics::one_dimensional(a, 0.5, 0.5, 1.0, 0.0);
        const Complex closed = -std::tgamma(-a) * std::exp(Complex(0.0, -M_PI * a / 2.0));
        CHECK(std::abs(StableReference(chars).unit_integral() - closed) < 1e-9);
    }
    auto one = LampertiCharacteristics::one_dimensional(1.0, 0.5, 0.5, 1.0, 0.0);
    CHECK(std::abs(StableReference(one).unit_integral() - Complex(M_PI / 2.0, 0.5772156649015328606 - 1.0)) < 1e-9);

    // Two-sided and scaled: psi(lambda) = sum sigma_k int (1 - e^{i lambda s_k r}) r^{-3/2} dr.
    auto chars = LampertiCharacteristics::one_dimensional(0.5, 1.0, 1.0, 2.0, 0.5);
    StableReference psi(chars);
    const Complex unit = psi.unit_integral();
    CHECK(std::abs(psi(4.0) - (2.0 * 2.0 * unit + 0.5 * 2.0 * std::conj(unit))) < 1e-12);
    CHECK(psi(0.0) == Complex(0.0, 0.0));
}

TEST_CASE("stable sampler calibrates the harness") {
    for (auto chars : {figure_one(), LampertiCharacteristics::one_dimensional(1.5, 1.0, 1.0, 1.0, 0.5),
                       LampertiCharacteristics::one_dimensional(0.7, 1.0, 1.0, 0.6, 1.0)}) {
        StableReference psi(chars);
        SeriesConfig cfg;
        cfg.n_terms = 4000;
        cfg.n_paths = 4000;
        cfg.seed = 17;
        const auto paths = sample_stable_path(chars, cfg);
        Vector x;
        for (const auto& p : paths) x.push_back(p.values.back()[0]);
        const Vector grid = default_lambda_grid();
        const auto e = ecf(x, grid);
        double sup = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) sup = std::max(sup, std::abs(e[j] - std::exp(-psi(grid[j]))));
        CHECK(sup < 3.0 / std::sqrt(4000.0));
    }
}

TEST_CASE("short-time limit") {
    LimitConfig cfg;
    cfg.n_paths = 2000;
    cfg.seed = 3;
    const auto reports = short_time_test(figure_one(), {1.0, 0.1, 0.01}, cfg);
    REQUIRE(reports.size() == 3);
    const double noise = 2.0 / std::sqrt(2000.0);
    for (std::size_t k = 1; k < reports.size(); ++k) CHECK(reports[k].sup_distance <= reports[k - 1].sup_distance + noise);
    for (const auto& r : reports) {
        CHECK(r.n_samples == 2000);
        for (const auto& e : r.empirical) {
            CHECK(std::abs(e) <= 1.0 + 1e-12);
            CHECK(std::abs(e.imag()) < 3.0 / std::sqrt(2000.0));
        }
    }
    CHECK(reports.back().sup_distance < 4.0 / std::sqrt(2000.0) + 0.01);

    // alpha = 1 uses zero centring; the symmetric case has a proper limit.
    const auto one = short_time_test(LampertiCharacteristics::one_dimensional(1.0, 1.0, 1.0, 1.0, 1.0), {0.01}, cfg);
    CHECK(one[0].sup_distance < 4.0 / std::sqrt(2000.0) + 0.01);
}

TEST_CASE("long-time limit wiring") {
    LimitConfig cfg;
    cfg.n_paths = 1000;
    cfg.n_terms = 200;
    cfg.lambda_grid = {0.0, 0.05, 0.1, 0.2};
    const auto chars = figure_one();
    const auto r = long_time_test(chars, {2.5}, cfg);
    CHECK(r[0].empirical[0] == Complex(1.0, 0.0));
    CHECK(r[0].reference[0] == Complex(1.0, 0.0));
    const double sigma2 = covariance_matrix(chars)[0][0];
    CHECK(r[0].reference[2].real() == doctest::Approx(std::exp(-0.5 * 0.01 * sigma2)).epsilon(1e-14));
    CHECK(r[0].sup_distance < 4.0 / std::sqrt(1000.0) + 0.01);
    CHECK_THROWS_AS(long_time_test(chars, {0.5}, cfg), DomainError);
}

TEST_CASE("Spitzer estimate") {
    // Symmetric: P(X_s >= 0) is 1/2 for every s.
    const auto sym = LampertiCharacteristics::one_dimensional(1.5, 1.0, 1.0, 1.0, 1.0);
    Vector grid;
    for (int j = 1; j <= 100; ++j) grid.push_back(0.05 * j);
    const auto a = spitzer_estimate(sym, grid, 500, 1, 4000);
    const auto b = spitzer_estimate(sym, grid, 1000, 2, 4000);
    for (const auto* r : {&a, &b}) {
        CHECK(r->estimate >= 0.0);
        CHECK(r->estimate <= 1.0);
        CHECK(std::abs(r->estimate - 0.5) < 4.0 * r->std_error);
        CHECK(r->running_estimate.back() == doctest::Approx(r->estimate).epsilon(1e-12));
    }
    CHECK(b.std_error / a.std_error == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}
