// Command-line front end: transform / check-nd / solve / decay / certify /
// compare / counterexample. Exit codes: 0 ok, 2 invalid input, 3 numerical
// failure, 4 decay requested while non-degeneracy is violated (run completes,
// witnesses recorded).

#include "hjdecay/experiments.hpp"
#include "hjdecay/svg.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace hjd;

namespace {

int guarded(const std::function<int()>& body)
{
    try {
        return body();
    } catch (const invalid_input& e) {
        std::cerr << "error (invalid input): " << e.what() << "\n";
        return 2;
    } catch (const numerical_failure& e) {
        std::cerr << "error (numerical): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

Vec parse_vec(const std::string& csv)
{
    Vec v;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            v.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) v.push_back(std::stod(cur));
    return v;
}

std::vector<std::string> parse_formats(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hjdecay - convex Hamilton-Jacobi solver with almost-periodic data"};
    app.require_subcommand(1);

    // ---- transform ---------------------------------------------------------
    auto* transform = app.add_subcommand(
        "transform", "Legendre conjugate of a hamiltonian spec or sampled function");
    std::string tf_spec, tf_sample, tf_out = ".", tf_p;
    std::size_t tf_grid = 1025;
    double tf_halfwidth = 4.0;
    transform->add_option("--spec", tf_spec, "hamiltonian JSON file");
    transform->add_option("--sample", tf_sample, "sampled-function header JSON");
    transform->add_option("--p", tf_p, "evaluate the symbolic conjugate at p (comma-separated)");
    transform->add_option("--grid", tf_grid, "output nodes per axis");
    transform->add_option("--halfwidth", tf_halfwidth, "sampling box half-width for specs");
    transform->add_option("--out", tf_out, "output directory");

    // ---- check-nd ----------------------------------------------------------
    auto* checknd = app.add_subcommand("check-nd", "non-degeneracy check along module directions");
    std::string nd_spec, nd_u0, nd_out;
    std::size_t nd_K = 10, nd_lattice = 0;
    double nd_delta = 0.25;
    checknd->add_option("--spec", nd_spec, "hamiltonian JSON file")->required();
    checknd->add_option("--u0", nd_u0, "trig polynomial JSON (module from its spectrum)");
    checknd->add_option("--lattice", nd_lattice, "use the standard lattice Z^m instead");
    checknd->add_option("--K", nd_K, "enumeration bound |k|_inf <= K");
    checknd->add_option("--delta", nd_delta, "segment half-length");
    checknd->add_option("--out", nd_out, "write the report JSON here (default stdout)");

    // ---- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Hopf-Lax solve at one time");
    std::string sv_spec, sv_u0, sv_out = ".", sv_method = "hopflax";
    double sv_t = 1.0;
    std::size_t sv_grid = 1024;
    bool sv_concave = false;
    solve->add_option("--spec", sv_spec, "hamiltonian JSON")->required();
    solve->add_option("--u0", sv_u0, "initial data JSON")->required();
    solve->add_option("--t", sv_t, "time");
    solve->add_option("--grid", sv_grid, "torus nodes per axis");
    solve->add_option("--method", sv_method, "hopflax | lf");
    solve->add_flag("--concave", sv_concave, "spec holds the convex reflection -H(-.)");
    solve->add_option("--out", sv_out, "output directory");

    // ---- decay / certify / compare ------------------------------------------
    auto* decay = app.add_subcommand("decay", "decay experiment from a config");
    auto* certify = app.add_subcommand("certify", "decay certificate from a config");
    auto* compare = app.add_subcommand("compare", "Hopf-Lax vs Lax-Friedrichs refinement study");
    std::string cfg_path, cfg_out, cfg_format = "csv,json";
    std::size_t opt_grid = 0;
    std::string opt_tlist, opt_eps, opt_K;
    std::uint64_t opt_seed = 0;
    for (auto* cmd : {decay, certify, compare}) {
        cmd->add_option("--config", cfg_path, "experiment config (.toml or .json)")->required();
        cmd->add_option("--out", cfg_out, "output directory (overrides config)");
        cmd->add_option("--format", cfg_format, "comma list of csv|json|svg");
        cmd->add_option("--grid", opt_grid, "override torus resolution");
        cmd->add_option("--t-list", opt_tlist, "override times (comma-separated)");
        cmd->add_option("--epsilon", opt_eps, "override certificate epsilon");
        cmd->add_option("--K", opt_K, "override the non-degeneracy bound");
        cmd->add_option("--seed", opt_seed, "override the probe seed");
    }

    // ---- counterexample ------------------------------------------------------
    auto* cex = app.add_subcommand("counterexample",
                                   "closed-form non-decaying wave for a degenerate direction");
    std::string cx_spec, cx_xi, cx_out = ".";
    double cx_delta = 0.25, cx_alpha = 0.0;
    bool cx_alpha_given = false;
    std::size_t cx_grid = 1024;
    std::string cx_tlist = "1,10,100";
    cex->add_option("--spec", cx_spec, "hamiltonian JSON")->required();
    cex->add_option("--xi", cx_xi, "direction (comma-separated)")->required();
    cex->add_option("--delta", cx_delta, "linearity segment half-length");
    cex->add_option("--alpha", cx_alpha, "expected slope (default: measured chord)")
        ->each([&](const std::string&) { cx_alpha_given = true; });
    cex->add_option("--grid", cx_grid, "field resolution");
    cex->add_option("--t-list", cx_tlist, "times for the emitted fields");
    cex->add_option("--out", cx_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    auto apply_overrides = [&](ExperimentConfig& cfg) {
        if (!cfg_out.empty()) cfg.out_dir = cfg_out;
        if (opt_grid) cfg.grid = opt_grid;
        if (!opt_tlist.empty()) cfg.times = parse_vec(opt_tlist);
        if (!opt_eps.empty()) cfg.epsilon = std::stod(opt_eps);
        if (!opt_K.empty()) cfg.nd_bound = std::stoul(opt_K);
        if (opt_seed) cfg.seed = opt_seed;
    };

    if (*transform)
        return guarded([&]() {
            if (!tf_p.empty()) {
                const Hamiltonian H = hamiltonian_from_json(read_json_file(tf_spec));
                const ConjugateValue cv = conjugate_symbolic(H, parse_vec(tf_p));
                std::cout << (cv.finite ? format_double(cv.value) : std::string("inf")) << "\n";
                return 0;
            }
            SampledConvex input;
            if (!tf_sample.empty()) {
                input = read_sampled(tf_sample);
            } else if (!tf_spec.empty()) {
                const Hamiltonian H = hamiltonian_from_json(read_json_file(tf_spec));
                GridN g;
                for (std::size_t d = 0; d < H.dim(); ++d)
                    g.axes.push_back({-tf_halfwidth, tf_halfwidth, tf_grid | 1});
                input = SampledConvex::from_function(g, [&](const Vec& v) { return H(v); });
            } else {
                throw invalid_input("transform needs --spec or --sample");
            }
            const GridN pgrid = suggest_conjugate_grid(input, tf_grid | 1);
            const LegendreResult res = legendre_nd(input, pgrid);
            std::filesystem::create_directories(tf_out);
            write_sampled(res.conjugate, std::filesystem::path(tf_out) / "conjugate.json");
            std::string flags = "flat_index,boundary_attained\n";
            for (std::size_t i = 0; i < res.boundary_attained.size(); ++i)
                flags += std::to_string(i) + "," + std::to_string(res.boundary_attained[i]) + "\n";
            write_text_file(std::filesystem::path(tf_out) / "conjugate_boundary.csv", flags);
            std::cout << "wrote conjugate.json / conjugate.csv / conjugate_boundary.csv in "
                      << tf_out << "\n";
            return 0;
        });

    if (*checknd)
        return guarded([&]() {
            const Hamiltonian H = hamiltonian_from_json(read_json_file(nd_spec));
            FrequencyModule M0 = nd_lattice
                                     ? FrequencyModule::integer_lattice(nd_lattice)
                                     : [&]() {
                                           const auto u0 =
                                               trigpoly_from_json(read_json_file(nd_u0));
                                           std::vector<FrequencyVector> sp;
                                           for (const auto& [f, a] : u0.terms())
                                               if (!f.is_zero()) sp.push_back(f);
                                           return module_basis(sp);
                                       }();
            const NDReport report = check_nd(H, M0, nd_K, nd_delta);
            const Json j = nd_report_to_json(report);
            if (nd_out.empty())
                std::cout << j.dump(2) << "\n";
            else
                write_json_file(nd_out, j);
            return 0;
        });

    if (*solve)
        return guarded([&]() {
            const Hamiltonian H = hamiltonian_from_json(read_json_file(sv_spec));
            const TrigPolynomial u0 = trigpoly_from_json(read_json_file(sv_u0));
            std::vector<FrequencyVector> sp;
            for (const auto& [f, a] : u0.terms())
                if (!f.is_zero()) sp.push_back(f);
            const FrequencyModule M0 = module_basis(sp);
            SolutionField field;
            if (sv_concave) {
                if (sv_method == "lf")
                    throw invalid_input("solve --concave supports the hopflax method");
                field = solve_concave(u0, H, sv_t, std::vector<std::size_t>(M0.rank(), sv_grid));
            } else if (sv_method == "hopflax") {
                const LiftedProblem prep = prepare_lifted(u0, H, M0);
                field = lifted_solve_field(prep, sv_t,
                                           std::vector<std::size_t>(M0.rank(), sv_grid));
            } else if (sv_method == "lf") {
                const LiftedProblem prep = prepare_lifted(u0, H, M0);
                const std::vector<std::size_t> res(M0.rank(), sv_grid);
                const auto samples = sample_torus(
                    [&](const Vec& y) { return prep.lift.torus_poly.eval(y); }, res);
                field = lax_friedrichs_evolve(samples, res, prep.torus_hamiltonian, sv_t);
            } else {
                throw invalid_input("solve: method must be hopflax or lf");
            }
            std::filesystem::create_directories(sv_out);
            write_field_csv(field, std::filesystem::path(sv_out) / "field.csv");
            Json tol;
            tol["y_step"] = 1.0 / double(sv_grid);
            write_json_file(std::filesystem::path(sv_out) / "field.json",
                            field_sidecar_json(field, tol));
            std::cout << "min " << format_double(field.min_value()) << " max "
                      << format_double(field.max_value()) << "\n";
            return 0;
        });

    if (*decay)
        return guarded([&]() {
            ExperimentConfig cfg = load_config(cfg_path);
            apply_overrides(cfg);
            const DecayRunResult result = run_decay(cfg);
            for (const auto& fmt : parse_formats(cfg_format))
                for (const auto& path : emit_decay(result, cfg, fmt))
                    std::cout << "wrote " << path.string() << "\n";
            if (!result.error.empty()) {
                std::cerr << "error (numerical, partial results written): " << result.error
                          << "\n";
                return 3;
            }
            if (result.nd_checked && !result.nd.satisfied_up_to_bound) {
                std::cerr << "warning: non-degeneracy violated ("
                          << result.nd.witnesses.size()
                          << " witness direction(s)); decay is not expected\n";
                return 4;
            }
            return 0;
        });

    if (*certify)
        return guarded([&]() {
            ExperimentConfig cfg = load_config(cfg_path);
            apply_overrides(cfg);
            validate_config(cfg);
            std::vector<FrequencyVector> sp;
            for (const auto& [f, a] : cfg.initial_data.terms())
                if (!f.is_zero()) sp.push_back(f);
            const FrequencyModule M0 = module_basis(sp);
            const LiftedProblem prep = prepare_lifted(cfg.initial_data, cfg.hamiltonian, M0);
            CertificateOptions copts;
            copts.epsilon = cfg.epsilon;
            copts.t_table = cfg.times;
            copts.nd_bound = cfg.nd_bound;
            copts.nd_delta = cfg.nd_delta;
            const CertificateResult res =
                decay_certificate(prep.torus_hamiltonian, prep.lift.torus_poly, copts);
            std::filesystem::create_directories(cfg.out_dir);
            const auto path =
                std::filesystem::path(cfg.out_dir) / (cfg.name + "_certificate.json");
            write_json_file(path, certificate_result_to_json(res));
            std::cout << "wrote " << path.string() << "\n";
            if (!res.ok()) {
                std::cerr << "certificate: " << res.message << "\n";
                return 3;
            }
            return 0;
        });

    if (*compare)
        return guarded([&]() {
            ExperimentConfig cfg = load_config(cfg_path);
            apply_overrides(cfg);
            const CompareResult result = run_compare(cfg);
            for (const auto& fmt : parse_formats(cfg_format))
                for (const auto& path : emit_compare(result, cfg, fmt))
                    std::cout << "wrote " << path.string() << "\n";
            return 0;
        });

    if (*cex)
        return guarded([&]() {
            const Hamiltonian H = hamiltonian_from_json(read_json_file(cx_spec));
            const Vec xi = parse_vec(cx_xi);
            const LinearityResult lin = is_linear_near_zero(H, xi, cx_delta);
            if (!lin.linear)
                throw invalid_input("H is not linear along xi on [-delta, delta]; "
                                    "no counterexample there");
            const double alpha = cx_alpha_given ? cx_alpha : lin.alpha;
            const TravelingWave wave = counterexample_solution(H, xi, alpha, cx_delta);
            std::filesystem::create_directories(cx_out);

            Json j;
            j["xi"] = xi;
            j["alpha"] = alpha;
            j["delta"] = cx_delta;
            j["amplitude"] = wave.amplitude();
            write_json_file(std::filesystem::path(cx_out) / "counterexample.json", j);

            // closed-form fields along the first coordinate direction
            for (double t : parse_vec(cx_tlist)) {
                SolutionField f;
                f.t = t;
                f.provenance = Provenance::closed_form;
                f.periodic = true;
                f.torus_res = {cx_grid};
                f.values.resize(cx_grid);
                for (std::size_t i = 0; i < cx_grid; ++i) {
                    Vec x(xi.size(), 0.0);
                    x[0] = double(i) / double(cx_grid);
                    f.values[i] = wave.value(t, x);
                }
                write_field_csv(f, std::filesystem::path(cx_out) /
                                       ("wave_t" + format_double(t) + ".csv"));
            }
            std::cout << "amplitude " << format_double(wave.amplitude())
                      << " persists for all t\n";
            return 0;
        });

    return 0;
}
