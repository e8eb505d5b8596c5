#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lamperti/limits.hpp"
#include "lamperti/measure.hpp"
#include "lamperti/properties.hpp"
#include "lamperti/simulate.hpp"

namespace lamperti {

// Malformed or invalid configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// {"alpha", "directions": [{"xi", "sigma", "f"}], "theta", "drift": [..] | null}; validated.
LampertiCharacteristics parse_characteristics(const std::string& json_text);
LampertiCharacteristics load_characteristics(const std::string& path);
std::string characteristics_to_json(const LampertiCharacteristics& chars);

// Optional run parameters that may sit beside the characteristics in a config file.
struct RunParameters {
    std::optional<Vector> lambda_grid, time_grid, x_grid;
    std::optional<std::size_t> n_terms, n_paths;
    std::optional<double> horizon, tol;
    std::optional<std::uint64_t> seed;
};
RunParameters parse_run_parameters(const std::string& json_text);

std::string read_text_file(const std::string& path);

// Shortest round-trip form with at most 17 significant digits, '.' decimal separator.
std::string format_number(double v);

// Long format "path_id,t,x1[,x2...]".
void write_paths_csv(std::ostream& out, const std::vector<SamplePath>& paths);
std::vector<SamplePath> read_paths_csv(std::istream& in);
// Single path, header "t,x1[,x2...]".
void write_path_csv(std::ostream& out, const SamplePath& path);

std::string classification_to_json(const ClassificationReport& report);
std::string ecf_reports_to_json(const std::vector<ECFReport>& reports);
std::string spitzer_to_json(const SpitzerReport& report);

} // namespace lamperti
