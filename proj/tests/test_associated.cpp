#include "doctest.h"
#include "lamperti/associated.hpp"
#include "lamperti/errors.hpp"
#include "lamperti/exponents.hpp"

#include <cmath>

using namespace lamperti;

namespace {

LampertiCharacteristics subordinator(double alpha, double beta, double c_plus) {
    auto c = LampertiCharacteristics::one_dimensional(alpha, beta, 0.0, c_plus, 0.0);
    c.drift = Vector{0.0};
    return c;
}

} // namespace

TEST_CASE("OU driver density") {
    const auto chars = LampertiCharacteristics::one_dimensional(0.5, 0.9, 0.9, 1.0, 1.0);
    // minus the derivative of r e^{rf}(e^r-1)^{-(alpha+1)}, mpmath
    CHECK(ou_driver_density(chars, 0.1, 1.0) == doctest::Approx(15.599203872974460318).epsilon(1e-11));
    CHECK(ou_driver_density(chars, -1.0, 1.0) == doctest::Approx(0.51647879656351155050).epsilon(1e-11));
    CHECK(ou_driver_density(chars, 5.0, 1.0) == doctest::Approx(0.10314792371205698890).epsilon(1e-11));
    CHECK(ou_driver_density(chars, 1e-4, 1.0) == doctest::Approx(499992.50076877203062).epsilon(1e-11));
    for (double x : {-5.0, -1.0, -0.1, 0.1, 1.0, 5.0}) CHECK(ou_driver_density(chars, x, 1.0) >= 0.0);
    CHECK(ou_driver_density(chars, 0.7, 2.0) == doctest::Approx(2.0 * ou_driver_density(chars, 0.7, 1.0)));
    // x^{alpha+1} times the density tends to c sigma alpha.
    CHECK(std::pow(1e-7, 1.5) * ou_driver_density(chars, 1e-7, 1.0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(ou_driver_density(LampertiCharacteristics::one_dimensional(0.5, 1.2, 0.0, 1.0, 0.0), 1.0, 1.0),
                    DomainError);
    CHECK(ou_driver_density(LampertiCharacteristics::one_dimensional(0.5, 0.9, 0.0, 1.0, 0.0), -1.0, 1.0) == 0.0);
}

TEST_CASE("parent process") {
    const auto chars = subordinator(0.5, 0.5, 0.5 / std::tgamma(0.5));
    CHECK(parent_laplace(chars, 0.0) == 0.0);
    CHECK(parent_laplace(chars, 1.0) == doctest::Approx(0.56418958354775628695).epsilon(1e-10));
    CHECK(parent_laplace(chars, 3.0) / 3.0 == doctest::Approx(laplace_subordinator(chars, 3.0)));
    CHECK_THROWS_AS(parent_laplace(LampertiCharacteristics::one_dimensional(0.5, 0.5, 0.0, 1.0, 0.0), 1.0),
                    DomainError);

    for (auto [a, b, c] : {std::tuple{0.5, 0.5, 1.0}, std::tuple{0.3, 0.9, 2.0}, std::tuple{0.8, 0.0, 0.7}}) {
        const auto s = subordinator(a, b, c);
        const auto parts = parent_components(s);
        for (int j = 1; j <= 20; ++j) {
            const double x = -0.25 * j;
            double sum = 0.0;
            for (const auto* p : {&parts.first, &parts.second})
                for (std::size_t k = 0; k < p->directions.size(); ++k) sum += density(*p, k, -x);
            CHECK(parent_levy_density(s, x) == doctest::Approx(sum).epsilon(1e-12));
        }
        if (b == 0.0) CHECK(parts.second.directions.empty());
    }
    CHECK_THROWS_AS(parent_levy_density(subordinator(0.5, 0.5, 1.0), 0.5), DomainError);

    // Log-slope on [-20, -10] is alpha + 2 - (beta + 1).
    const auto s = subordinator(0.5, 0.5, 1.0);
    const double slope = (std::log(parent_levy_density(s, -20.0)) - std::log(parent_levy_density(s, -10.0))) / -10.0;
    CHECK(slope == doctest::Approx(0.5 + 2.0 - 1.5).epsilon(1e-4));
}

TEST_CASE("binomial tail series") {
    struct Row { double a, b, x, ref; };
    const Row rows[] = {
        {0.5, 0.5, 0.1, 4.4833114824987545477}, {0.5, 0.5, 1, 0.51553310999424249231},
        {0.5, 0.5, 5, 0.0067721892694289888107}, {0.3, 0.9, 0.1, 5.5710479474868290081},
        {0.3, 0.9, 1, 1.9847015508155692220}, {0.3, 0.9, 5, 0.33918880309989002818},
        {0.7, -0.4, 0.1, 4.1806258361746057024}, {0.7, -0.4, 1, 0.097588843363949499499},
        {0.7, -0.4, 5, 1.3215046683586246386e-5},
    };
    for (const auto& r : rows) {
        const auto chars = LampertiCharacteristics::one_dimensional(r.a, r.b, 0.0, 1.0, 0.0);
        CHECK(tail_series(chars, r.x, 1e-14) == doctest::Approx(r.ref).epsilon(1e-12));
        CHECK(std::abs(tail_series(chars, r.x, 1e-14) - tail(chars, 0, r.x)) < 1e-10);
    }
    const auto chars = LampertiCharacteristics::one_dimensional(0.5, 0.5, 0.0, 2.0, 0.0);
    CHECK(tail_series(chars, 40.0) / (2.0 * std::exp(-40.0) / 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(tail_series(chars, 1e-7), ConvergenceError);
}

TEST_CASE("killed exponents") {
    const auto k = killed_exponents(subordinator(0.5, 0.5, 1.0));
    CHECK(k.killing_rate == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(k.raw_K == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(k.phi_killed(0.0) == doctest::Approx(k.killing_rate));
    CHECK(k.psi_yp(0.0) == 0.0);
    const double slope = (std::log(k.psi_yp(1e4)) - std::log(k.psi_yp(1e3))) / std::log(10.0);
    CHECK(slope == doctest::Approx(1.5).epsilon(0.01));
    CHECK(k.psi_yp_star(2.0) > 0.0);
    CHECK_THROWS_AS(killed_exponents(subordinator(0.5, 1.0, 1.0)), DomainError);
}

TEST_CASE("scale functions") {
    const auto b1 = subordinator(0.5, 1.0, 1.0);
    const auto half = subordinator(0.5, 0.5, 1.0);
    for (auto v : {ScaleVariant::beta1, ScaleVariant::killed, ScaleVariant::wstar}) {
        const auto& chars = v == ScaleVariant::beta1 ? b1 : half;
        auto t = scale_function(chars, v, {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
        CHECK(t.w_values[0] == 0.0);
        for (std::size_t j = 1; j < t.w_values.size(); ++j) CHECK(t.w_values[j] > t.w_values[j - 1]);
        CHECK(parse_scale_variant(to_string(v)) == v);
    }
    ScaleFunction wb(b1, ScaleVariant::beta1), wk(half, ScaleVariant::killed), ws(half, ScaleVariant::wstar);
    CHECK(wb(0.25) == doctest::Approx(0.16249046321101490791).epsilon(1e-10));
    CHECK(wb(1.0) == doctest::Approx(0.34537848206022204171).epsilon(1e-10));
    CHECK(wb(4.0) == doctest::Approx(0.85578774645890954806).epsilon(1e-10));
    CHECK(ws(0.25) == doctest::Approx(0.15586085608842735890).epsilon(1e-10));
    CHECK(ws(1.0) == doctest::Approx(0.29256073547388642666).epsilon(1e-10));
    CHECK(ws(4.0) == doctest::Approx(0.45678884370006775265).epsilon(1e-10));
    CHECK(wk(0.5) == doctest::Approx(2.9476183624838749517).epsilon(1e-10));
    CHECK(wk(1.0) == doctest::Approx(4.3401540077935510669).epsilon(1e-10));
    CHECK(wk(3.0) == doctest::Approx(8.7218455400959851149).epsilon(1e-10));

    CHECK_THROWS_AS(ScaleFunction(half, ScaleVariant::beta1), DomainError);
    CHECK_THROWS_AS(ScaleFunction(b1, ScaleVariant::wstar), DomainError);
    CHECK_THROWS_AS(scale_function(b1, ScaleVariant::beta1, {0.0, 1.0, 0.5}), DomainError);
}

TEST_CASE("scale function Laplace identity") {
    for (double a : {0.3, 0.5, 0.7}) {
        ScaleFunction w(subordinator(a, 1.0, 1.3), ScaleVariant::beta1);
        for (double l : {0.5, 1.0, 2.0, 5.0}) CHECK(scale_laplace_transform(w, l) * w.psi(l) == doctest::Approx(1.0).epsilon(1e-3));
    }
    ScaleFunction ws(subordinator(0.6, 0.2, 0.8), ScaleVariant::wstar);
    for (double l : {0.5, 1.0, 2.0, 5.0}) CHECK(scale_laplace_transform(ws, l) * ws.psi(l) == doctest::Approx(1.0).epsilon(1e-3));
    // beta1 psi is the parent exponent lambda Phi_L.
    const auto b1 = subordinator(0.5, 1.0, 1.3);
    CHECK(ScaleFunction(b1, ScaleVariant::beta1).psi(2.0) == doctest::Approx(parent_laplace(b1, 2.0)).epsilon(1e-12));
}
