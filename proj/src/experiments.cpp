#include "hjdecay/experiments.hpp"

#include "hjdecay/svg.hpp"
#include "hjdecay/toml_lite.hpp"

#include <algorithm>

namespace hjd {
namespace {

bool is_constant(const TrigPolynomial& u)
{
    for (const auto& [f, a] : u.terms())
        if (!f.is_zero()) return false;
    return true;
}

std::vector<FrequencyVector> nonzero_spectrum(const TrigPolynomial& u)
{
    std::vector<FrequencyVector> sp;
    for (const auto& [f, a] : u.terms())
        if (!f.is_zero()) sp.push_back(f);
    return sp;
}

ExperimentConfig config_from_table(const TomlTable& t, const std::filesystem::path& base)
{
    ExperimentConfig cfg;
    auto get = [&](const std::string& key) -> const TomlValue* {
        auto it = t.find(key);
        return it == t.end() ? nullptr : &it->second;
    };
    if (auto* v = get("experiment.name")) cfg.name = v->as_string();
    if (auto* v = get("experiment.hamiltonian"))
        cfg.hamiltonian = hamiltonian_from_json(read_json_file(base / v->as_string()));
    if (auto* v = get("experiment.initial_data"))
        cfg.initial_data = trigpoly_from_json(read_json_file(base / v->as_string()));
    if (auto* v = get("experiment.times")) {
        cfg.times.clear();
        for (const auto& x : v->arr) cfg.times.push_back(x.as_number());
    }
    if (auto* v = get("experiment.grid")) cfg.grid = std::size_t(v->as_number());
    if (auto* v = get("experiment.compare_grids")) {
        cfg.compare_grids.clear();
        for (const auto& x : v->arr) cfg.compare_grids.push_back(std::size_t(x.as_number()));
    }
    if (auto* v = get("experiment.compare_time")) cfg.compare_time = v->as_number();
    if (auto* v = get("experiment.epsilon")) cfg.epsilon = v->as_number();
    if (auto* v = get("experiment.nd_bound")) cfg.nd_bound = std::size_t(v->as_number());
    if (auto* v = get("experiment.nd_delta")) cfg.nd_delta = v->as_number();
    if (auto* v = get("experiment.torus_min_res"))
        cfg.torus_min_res = std::size_t(v->as_number());
    if (auto* v = get("experiment.certificate")) cfg.want_certificate = v->as_bool();
    if (auto* v = get("experiment.concave")) cfg.concave = v->as_bool();
    if (auto* v = get("experiment.seed")) cfg.seed = std::uint64_t(v->as_number());
    if (auto* v = get("experiment.out_dir")) cfg.out_dir = v->as_string();
    for (const auto& [key, val] : t)
        if (key.rfind("thresholds.", 0) == 0)
            cfg.thresholds[key.substr(11)] = val.as_number();
    return cfg;
}

ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base)
{
    ExperimentConfig cfg;
    const Json& e = j.contains("experiment") ? j.at("experiment") : j;
    if (e.contains("name")) cfg.name = e.at("name").get<std::string>();
    if (e.contains("hamiltonian")) {
        const Json& h = e.at("hamiltonian");
        cfg.hamiltonian = h.is_string()
                              ? hamiltonian_from_json(read_json_file(base / h.get<std::string>()))
                              : hamiltonian_from_json(h);
    }
    if (e.contains("initial_data")) {
        const Json& u = e.at("initial_data");
        cfg.initial_data = u.is_string()
                               ? trigpoly_from_json(read_json_file(base / u.get<std::string>()))
                               : trigpoly_from_json(u);
    }
    if (e.contains("times")) cfg.times = e.at("times").get<std::vector<double>>();
    if (e.contains("grid")) cfg.grid = e.at("grid").get<std::size_t>();
    if (e.contains("compare_grids"))
        cfg.compare_grids = e.at("compare_grids").get<std::vector<std::size_t>>();
    if (e.contains("compare_time")) cfg.compare_time = e.at("compare_time").get<double>();
    if (e.contains("epsilon")) cfg.epsilon = e.at("epsilon").get<double>();
    if (e.contains("nd_bound")) cfg.nd_bound = e.at("nd_bound").get<std::size_t>();
    if (e.contains("nd_delta")) cfg.nd_delta = e.at("nd_delta").get<double>();
    if (e.contains("torus_min_res"))
        cfg.torus_min_res = e.at("torus_min_res").get<std::size_t>();
    if (e.contains("certificate")) cfg.want_certificate = e.at("certificate").get<bool>();
    if (e.contains("concave")) cfg.concave = e.at("concave").get<bool>();
    if (e.contains("seed")) cfg.seed = e.at("seed").get<std::uint64_t>();
    if (e.contains("out_dir")) cfg.out_dir = e.at("out_dir").get<std::string>();
    if (j.contains("thresholds"))
        for (const auto& [k, v] : j.at("thresholds").items())
            cfg.thresholds[k] = v.get<double>();
    return cfg;
}

} // namespace

ExperimentConfig load_config(const std::filesystem::path& path)
{
    const auto base = path.parent_path();
    if (path.extension() == ".json")
        return config_from_json(read_json_file(path), base);
    if (path.extension() == ".toml")
        return config_from_table(parse_toml(read_text_file(path)), base);
    throw invalid_input("config must be .toml or .json: " + path.string());
}

void validate_config(const ExperimentConfig& cfg)
{
    std::vector<std::string> problems;
    if (cfg.times.empty()) problems.push_back("times is empty");
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        if (!(cfg.times[i] > 0.0)) problems.push_back("times must be positive");
        if (i > 0 && !(cfg.times[i] > cfg.times[i - 1]))
            problems.push_back("times must be strictly increasing");
        if (!problems.empty()) break;
    }
    if (cfg.grid < 16) problems.push_back("grid must be >= 16");
    if (!(cfg.epsilon > 0.0)) problems.push_back("epsilon must be positive");
    if (cfg.nd_bound < 1) problems.push_back("nd_bound must be >= 1");
    if (!(cfg.nd_delta > 0.0)) problems.push_back("nd_delta must be positive");
    if (cfg.hamiltonian.dim() != cfg.initial_data.dim())
        problems.push_back("hamiltonian and initial data dimensions differ");
    if (!cfg.hamiltonian.is_normalized())
        problems.push_back("hamiltonian must satisfy H(0) = 0 (within 1e-12)");
    if (cfg.compare_grids.size() < 2 ||
        !std::is_sorted(cfg.compare_grids.begin(), cfg.compare_grids.end()))
        problems.push_back("compare_grids must be >= 2 ascending resolutions");
    for (auto g : cfg.compare_grids)
        if (g < 16) problems.push_back("compare grids must be >= 16");
    if (!(cfg.compare_time > 0.0)) problems.push_back("compare_time must be positive");

    if (!problems.empty()) {
        std::string msg = "invalid config";
        if (!cfg.name.empty()) msg += " \"" + cfg.name + "\"";
        msg += ":";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw invalid_input(msg);
    }
}

DecayRunResult run_decay(const ExperimentConfig& cfg)
{
    validate_config(cfg);
    DecayRunResult result;

    // Constants are themselves solutions; no solve needed.
    if (is_constant(cfg.initial_data)) {
        result.c = cfg.initial_data.mean_value();
        for (double t : cfg.times)
            result.rows.push_back({t, 0.0, 0.0, false, "constant"});
        return result;
    }

    const bool concave = cfg.concave;
    const TrigPolynomial data = concave ? cfg.initial_data.negated() : cfg.initial_data;
    const FrequencyModule M0 = module_basis(nonzero_spectrum(data));
    const LiftedProblem prep = prepare_lifted(data, cfg.hamiltonian, M0);
    const std::size_t m = M0.rank();

    result.nd = check_nd(cfg.hamiltonian, M0, cfg.nd_bound, cfg.nd_delta);
    result.nd_checked = true;

    std::size_t min_res = cfg.torus_min_res;
    if (min_res == 0) min_res = m == 1 ? 8192 : (m == 2 ? 1024 : 96);
    const double c_inner = torus_min(prep.lift.torus_poly, min_res);
    result.c = concave ? -c_inner : c_inner;

    if (cfg.want_certificate) {
        CertificateOptions copts;
        copts.epsilon = cfg.epsilon;
        copts.t_table = cfg.times;
        copts.nd_bound = cfg.nd_bound;
        copts.nd_delta = cfg.nd_delta;
        copts.torus_min_res = min_res;
        result.certificate = decay_certificate(prep.torus_hamiltonian,
                                               prep.lift.torus_poly, copts);
    }

    const std::vector<std::size_t> res(m, cfg.grid);
    for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
        const double t = cfg.times[ti];
        DecayCurveRow row;
        row.t = t;
        try {
            const SolutionField field = lifted_solve_field(prep, t, res);
            double dev = 0.0;
            for (double v : field.values) dev = std::max(dev, std::abs(v - c_inner));
            row.sup_deviation = dev;
            row.method = concave ? "lifted_hopf_lax_concave" : "lifted_hopf_lax";
        } catch (const numerical_failure& e) {
            // flush what we have, marking where the run broke off
            row.sup_deviation = std::numeric_limits<double>::quiet_NaN();
            row.method = std::string("error: ") + e.what();
            result.error = e.what();
            result.rows.push_back(row);
            break;
        }
        if (result.certificate && result.certificate->ok()) {
            row.bound_minus_c =
                result.certificate->certificate.bound_table[ti] - result.certificate->certificate.c;
            row.has_bound = true;
        }
        result.rows.push_back(row);
    }
    return result;
}

CompareResult run_compare(const ExperimentConfig& cfg,
                          const std::optional<TravelingWave>& closed)
{
    validate_config(cfg);
    if (cfg.initial_data.dim() != 1)
        throw invalid_input("run_compare: refinement study is 1D");
    const FrequencyModule M0 = module_basis(nonzero_spectrum(cfg.initial_data));
    const LiftedProblem prep = prepare_lifted(cfg.initial_data, cfg.hamiltonian, M0);
    if (M0.rank() != 1)
        throw invalid_input("run_compare: initial data must be periodic (rank-1 module)");

    CompareResult result;
    result.grids = cfg.compare_grids;
    const double t = cfg.compare_time;

    HopfLaxOptions ref_opts;
    ref_opts.y_step = 1.0 / 8192.0; // reference accuracy independent of the LF grid

    std::vector<std::vector<double>> lf_fields, hl_fields;
    for (std::size_t g : cfg.compare_grids) {
        const std::vector<std::size_t> res = {g};
        const auto u0_samples = sample_torus(
            [&](const Vec& y) { return prep.lift.torus_poly.eval(y); }, res);
        const SolutionField lf =
            lax_friedrichs_evolve(u0_samples, res, prep.torus_hamiltonian, t);
        const SolutionField hl =
            torus_hopf_lax_field(prep.lift.torus_poly, prep.oracle, t, res, ref_opts);
        double err = 0.0;
        for (std::size_t i = 0; i < lf.values.size(); ++i)
            err = std::max(err, std::abs(lf.values[i] - hl.values[i]));
        result.errors.push_back(err);
        lf_fields.push_back(lf.values);
        hl_fields.push_back(hl.values);
    }
    for (std::size_t i = 0; i + 1 < result.errors.size(); ++i)
        result.observed_orders.push_back(
            std::log2(result.errors[i] / std::max(result.errors[i + 1], 1e-300)));

    // shared-sample table on the coarsest grid
    const std::size_t g0 = cfg.compare_grids.front();
    const std::size_t stride = std::max<std::size_t>(1, g0 / 16);
    for (std::size_t i = 0; i < g0; i += stride) {
        CompareRow row;
        row.t = t;
        row.x = double(i) / double(g0);
        row.hopf_lax = hl_fields.front()[i];
        row.lax_friedrichs = lf_fields.front()[i];
        if (closed) {
            row.closed_form = closed->value(t, {row.x});
            row.has_closed = true;
        }
        result.rows.push_back(row);
        double dev = std::abs(row.hopf_lax - row.lax_friedrichs);
        if (row.has_closed) {
            dev = std::max(dev, std::abs(row.hopf_lax - row.closed_form));
            dev = std::max(dev, std::abs(row.lax_friedrichs - row.closed_form));
        }
        result.max_pairwise_deviation = std::max(result.max_pairwise_deviation, dev);
    }
    return result;
}

std::vector<std::filesystem::path> emit_decay(const DecayRunResult& result,
                                              const ExperimentConfig& cfg,
                                              const std::string& format)
{
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;

    if (format == "csv") {
        std::string csv = "t,sup_deviation,certified_bound_minus_c,method\n";
        for (const auto& row : result.rows) {
            csv += format_double(row.t) + "," + format_double(row.sup_deviation) + ",";
            csv += row.has_bound ? format_double(row.bound_minus_c) : "";
            csv += "," + row.method + "\n";
        }
        const auto path = dir / (cfg.name + "_decay.csv");
        write_text_file(path, csv);
        written.push_back(path);
    } else if (format == "json") {
        Json j;
        j["name"] = cfg.name;
        j["c"] = result.c;
        Json rows = Json::array();
        for (const auto& row : result.rows) {
            Json r;
            r["t"] = row.t;
            r["sup_deviation"] = row.sup_deviation;
            if (row.has_bound) r["certified_bound_minus_c"] = row.bound_minus_c;
            r["method"] = row.method;
            rows.push_back(r);
        }
        j["curve"] = rows;
        if (result.nd_checked) j["nd_report"] = nd_report_to_json(result.nd);
        if (result.certificate)
            j["certificate"] = certificate_result_to_json(*result.certificate);
        Json th;
        for (const auto& [k, v] : cfg.thresholds) th[k] = v;
        j["thresholds"] = th;
        const auto path = dir / (cfg.name + "_decay.json");
        write_json_file(path, j);
        written.push_back(path);
    } else if (format == "svg") {
        SvgSeries dev{"sup deviation", "#1f6fb2", {}};
        SvgSeries bound{"certified bound - c", "#b2341f", {}};
        for (const auto& row : result.rows) {
            dev.points.emplace_back(row.t, row.sup_deviation);
            if (row.has_bound) bound.points.emplace_back(row.t, row.bound_minus_c);
        }
        std::vector<SvgSeries> series = {dev};
        if (!bound.points.empty()) series.push_back(bound);
        const auto path = dir / (cfg.name + "_decay.svg");
        write_text_file(path, render_line_plot_svg(cfg.name + ": decay toward the infimum",
                                                   "t", "deviation (log)", series, true));
        written.push_back(path);
    } else {
        throw invalid_input("emit: format must be csv, json or svg");
    }
    return written;
}

std::vector<std::filesystem::path> emit_compare(const CompareResult& result,
                                                const ExperimentConfig& cfg,
                                                const std::string& format)
{
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;

    if (format == "csv") {
        std::string csv = "t,x,hopf_lax,lax_friedrichs,closed_form\n";
        for (const auto& row : result.rows) {
            csv += format_double(row.t) + "," + format_double(row.x) + "," +
                   format_double(row.hopf_lax) + "," + format_double(row.lax_friedrichs) + ",";
            if (row.has_closed) csv += format_double(row.closed_form);
            csv += "\n";
        }
        const auto path = dir / (cfg.name + "_compare.csv");
        write_text_file(path, csv);
        written.push_back(path);
    } else if (format == "json") {
        Json j;
        j["name"] = cfg.name;
        j["grids"] = result.grids;
        j["errors"] = result.errors;
        j["observed_orders"] = result.observed_orders;
        j["max_pairwise_deviation"] = result.max_pairwise_deviation;
        const auto path = dir / (cfg.name + "_compare.json");
        write_json_file(path, j);
        written.push_back(path);
    } else if (format == "svg") {
        SvgSeries err{"max |LF - HL|", "#1f6fb2", {}};
        for (std::size_t i = 0; i < result.grids.size(); ++i)
            err.points.emplace_back(std::log10(double(result.grids[i])), result.errors[i]);
        const auto path = dir / (cfg.name + "_compare.svg");
        write_text_file(path,
                        render_line_plot_svg(cfg.name + ": refinement study", "log10 grid",
                                             "error (log)", {err}, true));
        written.push_back(path);
    } else {
        throw invalid_input("emit: format must be csv, json or svg");
    }
    return written;
}

} // namespace hjd
