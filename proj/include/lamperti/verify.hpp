#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lamperti/measure.hpp"
#include "lamperti/simulate.hpp"

namespace lamperti {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    // Failure traced to an inconsistency in the reference statement; see detail.
    bool known_defect = false;
    std::string detail;
    double seconds = 0.0;
};

// The Figure 1 process: alpha = 1/2, f = 1, sigma(1) = sigma(-1) = 1.
LampertiCharacteristics figure_one_characteristics();

// Path set written by `simulate` when no config is given.
SeriesConfig default_simulation_config(std::uint64_t seed);

std::string simulation_csv(const LampertiCharacteristics& chars, const SeriesConfig& config);

CriterionResult run_criterion(int id);
inline constexpr int kCriterionCount = 13;

// Runs every criterion in order; the callback sees each result as it completes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

} // namespace lamperti
