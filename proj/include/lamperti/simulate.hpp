#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "lamperti/measure.hpp"

namespace lamperti {

struct SeriesConfig {
    double horizon_T = 1.0;
    std::size_t n_terms = 1000;
    std::uint64_t seed = 0;
    std::size_t n_paths = 1;
    Vector time_grid{1.0};
    // Jumps larger than this are kept in SamplePath::jumps (needed by density_process).
    double record_jumps_above = std::numeric_limits<double>::infinity();

    void validate() const;
};

// Which Levy measure generated a path: the Lamperti measure nu, or the stable
// measure Pi(dr, dxi) = sigma(dxi) r^{-(alpha+1)} dr with the same sigma.
enum class PathLaw { lamperti, stable };

struct RecordedJump {
    double time = 0.0;
    std::size_t direction = 0;
    double size = 0.0;
};

struct SamplePath {
    Vector times;
    std::vector<Vector> values;
    std::uint64_t seed_used = 0;
    std::size_t path_index = 0;
    std::size_t n_terms_used = 0;
    double truncation_bound = 0.0;
    Vector compensation;  // sum of c_i over the retained terms
    PathLaw law = PathLaw::lamperti;
    double jumps_recorded_above = std::numeric_limits<double>::infinity();
    std::vector<RecordedJump> jumps;  // sorted by time
};

// Inverse of x -> tail(chars, k, x). Closed form when f_k = 1, otherwise
// bracketing plus safeguarded Newton on the quadrature tail.
double inverse_tail(const LampertiCharacteristics& chars, std::size_t direction_index, double u,
                    const QuadratureSpec& spec = {});

// c_1..c_N; the jump of term i is inverse_tail_k(Gamma_i sigma_k / (T sigma_total)) xi_k.
std::vector<Vector> centering_constants(const LampertiCharacteristics& chars, const SeriesConfig& config,
                                        const QuadratureSpec& spec = {});

// Size of the N-th jump at Gamma_N = N, maximised over directions.
double truncation_error(const LampertiCharacteristics& chars, const SeriesConfig& config);

// Reusable sampler: tabulates the inverse tails once, then draws any path index.
class SeriesSampler {
public:
    SeriesSampler(const LampertiCharacteristics& chars, const SeriesConfig& config,
                  PathLaw law = PathLaw::lamperti);
    ~SeriesSampler();
    SeriesSampler(SeriesSampler&&) noexcept;
    SeriesSampler& operator=(SeriesSampler&&) noexcept;

    SamplePath path(std::size_t path_index) const;

    double truncation_bound() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<SamplePath> sample_path(const LampertiCharacteristics& chars, const SeriesConfig& config);

// Paths of the alpha-stable process with the same sigma and exponent
// sum_k sigma_k int (1 - e^{i y r s_k} [+ i y r s_k]) r^{-(alpha+1)} dr, the bracket
// present for alpha > 1 (for alpha = 1 it is restricted to r < 1).
std::vector<SamplePath> sample_stable_path(const LampertiCharacteristics& chars, const SeriesConfig& config);

struct DensityProcessSample {
    Vector times;
    Vector log_density_values;
    double epsilon = 0.0;
};

// phi(r) = r f + (alpha+1)(ln r - ln(e^r - 1)) = log of d nu / d Pi at radius r.
double log_density_ratio(double alpha, double f, double r);

// (nu - Pi)({|z| > epsilon}).
double tail_difference(const LampertiCharacteristics& chars, double epsilon, const QuadratureSpec& spec = {});

// epsilon-truncated log density process along a path. On a stable path it is
// sum phi(dX) - t (nu - Pi)(|z|>eps) = log dP/dQ; on a Lamperti path the sign
// flips and it is log dQ/dP. Either way exp(U) has mean one under the law
// that generated the path.
DensityProcessSample density_process(const LampertiCharacteristics& chars, const SamplePath& path,
                                     double epsilon, const QuadratureSpec& spec = {});

// a - b for which P and Q are mutually absolutely continuous.
Vector mutual_ac_shift(const LampertiCharacteristics& chars, const QuadratureSpec& spec = {});

} // namespace lamperti
