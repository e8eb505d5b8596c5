// Command-line front end. Exit codes: 0 ok, 1 verification failure,
// 2 configuration error, 3 numerical non-convergence.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lamperti/associated.hpp"
#include "lamperti/errors.hpp"
#include "lamperti/exponents.hpp"
#include "lamperti/io.hpp"
#include "lamperti/limits.hpp"
#include "lamperti/properties.hpp"
#include "lamperti/simulate.hpp"
#include "lamperti/verify.hpp"

using namespace lamperti;

namespace {

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<double> tol;
};

struct Context {
    LampertiCharacteristics chars;
    RunParameters params;
    QuadratureSpec spec;
    std::uint64_t seed = 0;
};

Context load(const Globals& g) {
    Context c;
    if (g.config.empty()) {
        c.chars = figure_one_characteristics();
    } else {
        const std::string text = read_text_file(g.config);
        c.chars = parse_characteristics(text);
        c.params = parse_run_parameters(text);
    }
    const auto tol = g.tol ? g.tol : c.params.tol;
    if (tol) {
        if (!(*tol > 0.0)) throw ConfigError("tol: must be positive");
        c.spec.rel_tol = *tol;
        c.spec.abs_tol = *tol * 1e-2;
    }
    c.seed = g.seed.value_or(c.params.seed.value_or(0));
    return c;
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw ConfigError("out: cannot write " + g.out);
    f << text;
}

Vector range(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("grid: need step > 0 and hi >= lo");
    Vector v;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t j = 0; j <= n; ++j) v.push_back(lo + step * static_cast<double>(j));
    return v;
}

std::string figure_name(int k) { return "figure" + std::to_string(k) + ".csv"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lamperti stable processes: exponents, classification, simulation, limits"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config, "JSON characteristics (and optional run parameters)");
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--out", g.out, "output file (directory for figures and per-path output)");
    app.add_option("--tol", g.tol, "quadrature relative tolerance");

    auto* exponent = app.add_subcommand("exponent", "table of Psi (or the Laplace exponent Phi)");
    bool with_oracle = false;
    std::string kind = "psi";
    double lam_lo = -5, lam_hi = 5, lam_step = 0.5;
    exponent->add_flag("--oracle", with_oracle, "add the quadrature oracle and its error");
    exponent->add_option("--kind", kind, "psi | phi")->check(CLI::IsMember({"psi", "phi"}));
    exponent->add_option("--from", lam_lo);
    exponent->add_option("--to", lam_hi);
    exponent->add_option("--step", lam_step);

    auto* classify_cmd = app.add_subcommand("classify", "path and fluctuation properties as JSON");

    auto* simulate = app.add_subcommand("simulate", "series-representation paths as CSV");
    std::size_t sim_paths = 10, sim_terms = 1000;
    double sim_horizon = 1.0, sim_step = 0.01;
    bool per_path = false, stable_law = false;
    simulate->add_option("--paths", sim_paths);
    simulate->add_option("--terms", sim_terms);
    simulate->add_option("--horizon", sim_horizon);
    simulate->add_option("--step", sim_step, "time grid spacing");
    simulate->add_flag("--per-path", per_path, "one file per path in the --out directory");
    simulate->add_flag("--stable", stable_law, "sample the dominating stable law instead");

    auto* density_cmd = app.add_subcommand("density", "FFT density table of X_t");
    double dens_t = 1.0, cutoff = 40.0;
    std::size_t grid_size = 4096;
    density_cmd->add_option("--t", dens_t);
    density_cmd->add_option("--grid-size", grid_size, "power of two");
    density_cmd->add_option("--cutoff", cutoff, "frequency cutoff");

    auto* scale = app.add_subcommand("scale-function", "scale function table");
    std::string variant = "beta1";
    double x_max = 5.0, x_step = 0.05;
    scale->add_option("--variant", variant, "beta1 | killed | wstar");
    scale->add_option("--x-max", x_max);
    scale->add_option("--x-step", x_step);

    auto* limits = app.add_subcommand("limits", "short-time, long-time and Spitzer reports as JSON");
    std::string mode = "short";
    std::vector<double> h_list;
    std::size_t lim_paths = 10000, lim_terms = 2000;
    double t_max = 50.0, dt = 0.05;
    limits->add_option("--mode", mode)->check(CLI::IsMember({"short", "long", "spitzer"}));
    limits->add_option("--scales", h_list, "time scales (short: 1 0.1 0.01, long: 100)");
    limits->add_option("--paths", lim_paths);
    limits->add_option("--terms", lim_terms, "series terms (per unit time for long)");
    limits->add_option("--t-max", t_max);
    limits->add_option("--dt", dt);

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    std::vector<int> criteria;
    verify->add_option("--criteria", criteria, "subset of criterion ids");

    auto* figures = app.add_subcommand("figures", "path datasets for Figures 1-6");
    std::size_t fig_paths = 3, fig_terms = 20000;
    figures->add_option("--paths", fig_paths);
    figures->add_option("--terms", fig_terms);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            if (criteria.empty())
                for (int id = 1; id <= kCriterionCount; ++id) criteria.push_back(id);
            std::ostringstream text;
            bool all = true;
            for (int id : criteria) {
                if (id < 1 || id > kCriterionCount) throw ConfigError("criteria: ids must be in 1..13");
                const auto r = run_criterion(id);
                const auto line = format_result_line(r);
                std::cout << line << std::endl;
                text << line << '\n';
                all = all && r.passed;
            }
            if (!g.out.empty()) emit(g, text.str());
            return all ? 0 : 1;
        }

        const Context ctx = load(g);
        const auto& chars = ctx.chars;

        if (exponent->parsed()) {
            const Vector grid = ctx.params.lambda_grid.value_or(range(lam_lo, lam_hi, lam_step));
            std::ostringstream out;
            if (kind == "phi") {
                out << "lambda,phi\n";
                const bool sub = chars.alpha < 1.0;
                for (double l : grid) {
                    const double v = sub ? laplace_subordinator(chars, l, ctx.spec)
                                         : laplace_spectrally_negative(chars, l, ctx.spec);
                    out << format_number(l) << ',' << format_number(v) << '\n';
                }
            } else {
                out << "lambda,re,im" << (with_oracle ? ",oracle_re,oracle_im,abs_error" : "") << '\n';
                for (const auto& e : evaluate_exponent(chars, grid, with_oracle, ctx.spec)) {
                    out << format_number(e.lambda) << ',' << format_number(e.closed_form.real()) << ','
                        << format_number(e.closed_form.imag());
                    if (e.oracle)
                        out << ',' << format_number(e.oracle->real()) << ',' << format_number(e.oracle->imag()) << ','
                            << format_number(*e.abs_error);
                    out << '\n';
                }
            }
            emit(g, out.str());
        } else if (classify_cmd->parsed()) {
            emit(g, classification_to_json(classify(chars, ctx.spec)) + "\n");
        } else if (simulate->parsed()) {
            SeriesConfig cfg = default_simulation_config(ctx.seed);
            cfg.n_paths = ctx.params.n_paths.value_or(sim_paths);
            cfg.n_terms = ctx.params.n_terms.value_or(sim_terms);
            cfg.horizon_T = ctx.params.horizon.value_or(sim_horizon);
            cfg.time_grid = ctx.params.time_grid.value_or(range(0.0, cfg.horizon_T, sim_step));
            if (cfg.time_grid.back() < cfg.horizon_T) cfg.time_grid.push_back(cfg.horizon_T);
            const auto paths = stable_law ? sample_stable_path(chars, cfg) : sample_path(chars, cfg);
            if (per_path) {
                if (g.out.empty()) throw ConfigError("out: --per-path needs an output directory");
                std::filesystem::create_directories(g.out);
                for (const auto& p : paths) {
                    std::ofstream f(std::filesystem::path(g.out) / ("path_" + std::to_string(p.path_index) + ".csv"),
                                    std::ios::binary);
                    write_path_csv(f, p);
                }
            } else {
                std::ostringstream out;
                write_paths_csv(out, paths);
                emit(g, out.str());
            }
        } else if (density_cmd->parsed()) {
            const auto tab = density_via_fft(chars, dens_t, grid_size, cutoff, ctx.spec);
            if (tab.resolution_warning)
                std::cerr << "warning: |exp(-t Psi)| at the cutoff is " << tab.cf_at_cutoff << "\n";
            std::ostringstream out;
            out << "x,pdf\n";
            for (std::size_t j = 0; j < tab.x.size(); ++j) out << format_number(tab.x[j]) << ',' << format_number(tab.pdf[j]) << '\n';
            emit(g, out.str());
        } else if (scale->parsed()) {
            ScaleVariant v;
            try {
                v = parse_scale_variant(variant);
            } catch (const DomainError& e) {
                throw ConfigError(e.what());
            }
            const Vector grid = ctx.params.x_grid.value_or(range(x_step, x_max, x_step));
            const auto tab = scale_function(chars, v, grid);
            std::ostringstream out;
            out << "x,W\n";
            for (std::size_t j = 0; j < grid.size(); ++j) out << format_number(grid[j]) << ',' << format_number(tab.w_values[j]) << '\n';
            emit(g, out.str());
        } else if (limits->parsed()) {
            LimitConfig cfg;
            cfg.n_paths = ctx.params.n_paths.value_or(lim_paths);
            cfg.n_terms = ctx.params.n_terms.value_or(mode == "long" ? 200 : lim_terms);
            cfg.seed = ctx.seed;
            if (ctx.params.lambda_grid) cfg.lambda_grid = *ctx.params.lambda_grid;
            if (mode == "spitzer") {
                const auto grid = range(dt, ctx.params.horizon.value_or(t_max), dt);
                emit(g, spitzer_to_json(spitzer_estimate(chars, grid, cfg.n_paths, cfg.seed,
                                                         ctx.params.n_terms.value_or(20000))) + "\n");
            } else if (mode == "long") {
                if (h_list.empty()) h_list = {100.0};
                emit(g, ecf_reports_to_json(long_time_test(chars, h_list, cfg)) + "\n");
            } else {
                if (h_list.empty()) h_list = {1.0, 0.1, 0.01};
                emit(g, ecf_reports_to_json(short_time_test(chars, h_list, cfg)) + "\n");
            }
        } else if (figures->parsed()) {
            struct Figure { double alpha, c_plus, c_minus; };
            const Figure figs[6] = {{0.5, 1, 1}, {1.5, 1, 1}, {1.0, 1, 1}, {0.5, 1, 0}, {1.5, 0, 1}, {1.9, 1, 1}};
            const std::filesystem::path dir = g.out.empty() ? "figures" : g.out;
            std::filesystem::create_directories(dir);
            for (int k = 0; k < 6; ++k) {
                auto c = LampertiCharacteristics::one_dimensional(figs[k].alpha, 1.0, 1.0, figs[k].c_plus, figs[k].c_minus);
                if (c.alpha < 1.0) c.drift = Vector{0.0};
                SeriesConfig cfg;
                cfg.seed = ctx.seed;
                cfg.n_paths = fig_paths;
                cfg.n_terms = fig_terms;
                cfg.time_grid = range(0.0, 1.0, 0.001);
                cfg.time_grid.back() = 1.0;
                std::ofstream f(dir / figure_name(k + 1), std::ios::binary);
                write_paths_csv(f, sample_path(c, cfg));
                std::printf("%s alpha=%g f=1 sigma(1)=%g sigma(-1)=%g\n", (dir / figure_name(k + 1)).c_str(), figs[k].alpha,
                            figs[k].c_plus, figs[k].c_minus);
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return 3;
    }
    return 0;
}
