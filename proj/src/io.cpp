#include "lamperti/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "lamperti/errors.hpp"

namespace lamperti {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field + ": expected a number");
    return j.get<double>();
}

Vector numbers(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field + ": expected an array of numbers");
    Vector out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

json vector_json(const Vector& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json complex_json(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back({z.real(), z.imag()});
    return a;
}

} // namespace

LampertiCharacteristics parse_characteristics(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    for (const char* key : {"alpha", "directions", "theta"})
        if (!j.contains(key)) throw ConfigError(std::string(key) + ": missing");
    LampertiCharacteristics c;
    c.alpha = number(j["alpha"], "alpha");
    if (!j["directions"].is_array()) throw ConfigError("directions: expected an array");
    for (std::size_t k = 0; k < j["directions"].size(); ++k) {
        const auto& d = j["directions"][k];
        const std::string at = "directions[" + std::to_string(k) + "]";
        if (!d.is_object()) throw ConfigError(at + ": expected an object");
        for (const char* key : {"xi", "sigma", "f"})
            if (!d.contains(key)) throw ConfigError(at + "." + key + ": missing");
        c.directions.push_back({numbers(d["xi"], at + ".xi"), number(d["sigma"], at + ".sigma"),
                                number(d["f"], at + ".f")});
    }
    c.theta = numbers(j["theta"], "theta");
    if (j.contains("drift") && !j["drift"].is_null()) c.drift = numbers(j["drift"], "drift");
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LampertiCharacteristics load_characteristics(const std::string& path) {
    return parse_characteristics(read_text_file(path));
}

RunParameters parse_run_parameters(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    auto count = [&](const char* key) -> std::optional<std::size_t> {
        if (!j.contains(key)) return std::nullopt;
        if (!j[key].is_number_unsigned() || j[key].get<std::size_t>() == 0)
            throw ConfigError(std::string(key) + ": expected a positive integer");
        return j[key].get<std::size_t>();
    };
    RunParameters p;
    if (j.contains("lambda_grid")) p.lambda_grid = numbers(j["lambda_grid"], "lambda_grid");
    if (j.contains("time_grid")) p.time_grid = numbers(j["time_grid"], "time_grid");
    if (j.contains("x_grid")) p.x_grid = numbers(j["x_grid"], "x_grid");
    p.n_terms = count("n_terms");
    p.n_paths = count("n_paths");
    if (j.contains("horizon")) p.horizon = number(j["horizon"], "horizon");
    if (j.contains("tol")) p.tol = number(j["tol"], "tol");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
        p.seed = j["seed"].get<std::uint64_t>();
    }
    return p;
}

std::string characteristics_to_json(const LampertiCharacteristics& c) {
    json j;
    j["alpha"] = c.alpha;
    j["directions"] = json::array();
    for (const auto& d : c.directions) j["directions"].push_back({{"xi", vector_json(d.xi)}, {"sigma", d.sigma}, {"f", d.f}});
    j["theta"] = vector_json(c.theta);
    j["drift"] = c.drift ? vector_json(*c.drift) : json(nullptr);
    return j.dump(2);
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_paths_csv(std::ostream& out, const std::vector<SamplePath>& paths) {
    const std::size_t dim = paths.empty() || paths[0].values.empty() ? 1 : paths[0].values[0].size();
    out << "path_id,t";
    for (std::size_t i = 0; i < dim; ++i) out << ",x" << i + 1;
    out << '\n';
    for (const auto& p : paths) {
        for (std::size_t j = 0; j < p.times.size(); ++j) {
            out << p.path_index << ',' << format_number(p.times[j]);
            for (double x : p.values[j]) out << ',' << format_number(x);
            out << '\n';
        }
    }
}

void write_path_csv(std::ostream& out, const SamplePath& p) {
    const std::size_t dim = p.values.empty() ? 1 : p.values[0].size();
    out << 't';
    for (std::size_t i = 0; i < dim; ++i) out << ",x" << i + 1;
    out << '\n';
    for (std::size_t j = 0; j < p.times.size(); ++j) {
        out << format_number(p.times[j]);
        for (double x : p.values[j]) out << ',' << format_number(x);
        out << '\n';
    }
}

std::vector<SamplePath> read_paths_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("path_id,t", 0) != 0) throw ConfigError("csv: missing path_id,t header");
    std::vector<SamplePath> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() < 3) throw ConfigError("csv: short row");
        const std::size_t id = std::stoull(cells[0]);
        if (out.empty() || out.back().path_index != id) {
            out.emplace_back();
            out.back().path_index = id;
        }
        Vector v;
        for (std::size_t i = 2; i < cells.size(); ++i) v.push_back(std::strtod(cells[i].c_str(), nullptr));
        out.back().times.push_back(std::strtod(cells[1].c_str(), nullptr));
        out.back().values.push_back(std::move(v));
    }
    return out;
}

std::string classification_to_json(const ClassificationReport& r) {
    json j;
    j["variation"] = r.finite_variation ? "finite" : "infinite";
    j["p_variation_threshold"] = r.p_threshold;
    j["creeps_up"] = to_string(r.creeps_up);
    j["zero_regular_upward"] = to_string(r.zero_regular_upward);
    j["selfdecomposable"] = r.selfdecomposable;
    j["jurek"] = r.jurek;
    j["tail_class_delta"] = r.tail_class_delta;
    j["drift"] = r.drift ? json(to_string(*r.drift)) : json(nullptr);
    j["mean"] = r.mean ? json(*r.mean) : json(nullptr);
    j["rho_zero"] = r.rho_zero ? json(*r.rho_zero) : json(nullptr);
    j["cramer_root"] = r.cramer_root ? json(*r.cramer_root) : json(nullptr);
    j["has_increase_times"] = r.has_increase_times ? json(*r.has_increase_times) : json(nullptr);
    return j.dump(2);
}

std::string ecf_reports_to_json(const std::vector<ECFReport>& reports) {
    json a = json::array();
    for (const auto& r : reports)
        a.push_back({{"h", r.h},
                     {"n_samples", r.n_samples},
                     {"sup_distance", r.sup_distance},
                     {"lambda_grid", vector_json(r.lambda_grid)},
                     {"empirical", complex_json(r.empirical)},
                     {"reference", complex_json(r.reference)}});
    return a.dump(2);
}

std::string spitzer_to_json(const SpitzerReport& r) {
    json j{{"estimate", r.estimate},
           {"std_error", r.std_error},
           {"n_paths", r.n_paths},
           {"times", vector_json(r.times)},
           {"positive_fraction", vector_json(r.positive_fraction)},
           {"running_estimate", vector_json(r.running_estimate)}};
    return j.dump(2);
}

} // namespace lamperti
