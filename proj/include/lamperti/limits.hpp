#pragma once

#include <cstdint>
#include <vector>

#include "lamperti/measure.hpp"
#include "lamperti/specfun.hpp"

namespace lamperti {

struct ECFReport {
    double h = 0.0;
    Vector lambda_grid;
    std::vector<Complex> empirical;
    std::vector<Complex> reference;
    double sup_distance = 0.0;
    std::size_t n_samples = 0;
};

// (1/n) sum_j exp(i lambda x_j) at each lambda.
std::vector<Complex> ecf(const Vector& samples, const Vector& lambda_grid);

// -5, -4.9, ..., 5
Vector default_lambda_grid();

// Exponent of the alpha-stable law with the same sigma as chars, computed by
// quadrature of r^{-(alpha+1)}: no compensation for alpha < 1, 1{r<1} for
// alpha = 1, full compensation for alpha > 1.
class StableReference {
public:
    explicit StableReference(const LampertiCharacteristics& chars);
    Complex operator()(double lambda) const;
    Complex unit_integral() const { return unit_; }  // the y = 1 radial integral

private:
    double alpha_;
    std::vector<std::pair<double, double>> weights_;  // (sign, sigma) per direction
    Complex unit_;
};

struct LimitConfig {
    std::size_t n_paths = 10000;
    std::uint64_t seed = 0;
    std::size_t n_terms = 2000;  // per series (per unit time for the long-time test)
    Vector lambda_grid = default_lambda_grid();
};

// h^{-1/alpha}(X_h - h eta) against the stable reference, one report per h.
std::vector<ECFReport> short_time_test(const LampertiCharacteristics& chars, const Vector& h_list,
                                       const LimitConfig& config);

// h^{-1/2}(X_h - h eta) against exp(-lambda^2 Sigma / 2); X_h summed from unit-time increments.
std::vector<ECFReport> long_time_test(const LampertiCharacteristics& chars, const Vector& h_list,
                                      const LimitConfig& config);

struct SpitzerReport {
    double estimate = 0.0;   // (1/t) int_0^t P(X_s >= 0) ds at the last grid time
    double std_error = 0.0;  // across paths
    Vector times;
    Vector positive_fraction;  // P(X_s >= 0) per grid time
    Vector running_estimate;   // (1/t) int_0^t per grid time
    std::size_t n_paths = 0;
};

SpitzerReport spitzer_estimate(const LampertiCharacteristics& chars, const Vector& t_grid,
                               std::size_t n_paths, std::uint64_t seed, std::size_t n_terms = 20000);

} // namespace lamperti
