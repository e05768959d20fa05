// Python face of the toolkit. Structured domain objects cross the boundary in
// the same JSON wire formats the CLI uses; bulk numerics cross as plain
// buffers.

#include "hjdecay/experiments.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hjd;

namespace {

Json parse(const std::string& s) { return Json::parse(s); }

std::vector<FrequencyVector> nonzero_spectrum(const TrigPolynomial& u)
{
    std::vector<FrequencyVector> sp;
    for (const auto& [f, a] : u.terms())
        if (!f.is_zero()) sp.push_back(f);
    return sp;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Convex Hamilton-Jacobi solver: Hopf-Lax-Oleinik formula, exact "
              "almost-periodic data, non-degeneracy checks and decay certificates.";

    py::register_exception<invalid_input>(m, "InvalidInput");
    py::register_exception<numerical_failure>(m, "NumericalFailure");

    py::class_<Hamiltonian>(m, "Hamiltonian")
        .def_static("from_json",
                    [](const std::string& s) { return hamiltonian_from_json(parse(s)); })
        .def("to_json", [](const Hamiltonian& h) { return hamiltonian_to_json(h).dump(); })
        .def("__call__", [](const Hamiltonian& h, const Vec& v) { return h(v); })
        .def_property_readonly("dim", &Hamiltonian::dim)
        .def_property_readonly("kind", &Hamiltonian::kind_name)
        .def("is_normalized", &Hamiltonian::is_normalized);

    m.def("quadratic", [](const std::vector<Vec>& rows) {
        Mat Q(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < Q.rows; ++i)
            for (std::size_t j = 0; j < Q.cols; ++j) Q(i, j) = rows[i][j];
        return Hamiltonian::quadratic(std::move(Q));
    });
    m.def("abs_linear", [](const Vec& d) { return Hamiltonian::abs_linear(d); });
    m.def("max_affine", [](const std::vector<std::pair<Vec, double>>& pieces) {
        std::vector<AffinePiece> ps;
        for (const auto& [slope, offset] : pieces) ps.push_back({slope, offset});
        return Hamiltonian::max_affine(std::move(ps));
    });
    m.def("hamiltonian_sum",
          [](const std::vector<Hamiltonian>& terms) { return Hamiltonian::sum(terms); });
    m.def("coercify", &coercify, py::arg("hamiltonian"), py::arg("L"));

    m.def("conjugate_symbolic", [](const Hamiltonian& h, const Vec& p) -> py::object {
        const ConjugateValue cv = conjugate_symbolic(h, p);
        if (!cv.finite) return py::none();
        return py::float_(cv.value);
    });
    m.def("subdifferential_at", [](const Hamiltonian& h, const Vec& v0) {
        const SubdifferentialResult r = subdifferential_at(h, v0);
        return py::make_tuple(r.polytope.vertices(), r.approximate);
    });
    m.def("support_function", [](const std::vector<Vec>& vertices, const Vec& q) {
        return Polytope::from_points(vertices).support(q);
    });
    m.def("polar_membership", [](const std::vector<Vec>& vertices, double eps, const Vec& p) {
        return polar_membership(PolarSetQuery(Polytope::from_points(vertices), eps), p);
    });
    m.def("minimal_norm_point", [](const std::vector<Vec>& vertices) {
        return Polytope::from_points(vertices).minimal_norm_point();
    });

    m.def("legendre",
          [](const std::vector<std::pair<double, double>>& v_bounds,
             const std::vector<std::size_t>& v_counts, const std::vector<double>& values,
             const std::vector<std::pair<double, double>>& p_bounds,
             const std::vector<std::size_t>& p_counts) {
              SampledConvex f;
              for (std::size_t d = 0; d < v_bounds.size(); ++d)
                  f.grid.axes.push_back(
                      {v_bounds[d].first, v_bounds[d].second, v_counts[d]});
              f.values = values;
              GridN pg;
              for (std::size_t d = 0; d < p_bounds.size(); ++d)
                  pg.axes.push_back({p_bounds[d].first, p_bounds[d].second, p_counts[d]});
              const LegendreResult r = legendre_nd(f, pg);
              py::dict out;
              out["values"] = r.conjugate.values;
              out["boundary_attained"] = r.boundary_attained;
              return out;
          },
          "Discrete Legendre-Fenchel conjugate on a tensor p-grid");

    py::class_<TrigPolynomial>(m, "TrigPolynomial")
        .def_static("from_json",
                    [](const std::string& s) { return trigpoly_from_json(parse(s)); })
        .def("to_json", [](const TrigPolynomial& u) { return trigpoly_to_json(u).dump(); })
        .def("__call__", [](const TrigPolynomial& u, const Vec& x) { return u.eval(x); })
        .def_property_readonly("dim", &TrigPolynomial::dim)
        .def("mean_value", &TrigPolynomial::mean_value)
        .def("sup_norm_bound", &TrigPolynomial::sup_norm_bound)
        .def("lipschitz_bound", &TrigPolynomial::lipschitz_bound)
        .def("term_count", &TrigPolynomial::term_count);

    m.def("bohr_coefficient", [](const TrigPolynomial& u, const std::string& freq_json,
                                 double R) {
        const Json j = parse(freq_json);
        std::vector<Rational> coeffs;
        for (const auto& pair : j)
            coeffs.emplace_back(pair.at(0).get<std::int64_t>(),
                                pair.at(1).get<std::int64_t>());
        const FrequencyVector lam(u.generator_basis(), u.dim(), std::move(coeffs));
        const auto v = bohr_coefficient_numeric(u, lam, R);
        return py::make_tuple(v.real(), v.imag());
    });

    m.def("module_info", [](const TrigPolynomial& u) {
        const FrequencyModule M0 = module_basis(nonzero_spectrum(u));
        py::dict out;
        out["rank"] = M0.rank();
        std::vector<std::string> basis;
        for (const auto& b : M0.basis) basis.push_back(b.str());
        out["basis"] = basis;
        out["generator_coords"] = M0.generator_coords;
        return out;
    });

    m.def("lift_info", [](const TrigPolynomial& u) {
        const FrequencyModule M0 = module_basis(nonzero_spectrum(u));
        const LiftMap lift = build_lift(u, M0);
        py::dict out;
        std::vector<Vec> rows;
        for (std::size_t j = 0; j < lift.lambda.rows; ++j) {
            Vec row(lift.lambda.cols);
            for (std::size_t i = 0; i < lift.lambda.cols; ++i) row[i] = lift.lambda(j, i);
            rows.push_back(row);
        }
        out["lambda"] = rows;
        out["torus_poly"] = trigpoly_to_json(lift.torus_poly).dump();
        return out;
    });

    m.def("check_nd", [](const Hamiltonian& h, const TrigPolynomial& u, std::size_t K,
                         double delta) {
        const FrequencyModule M0 = module_basis(nonzero_spectrum(u));
        return nd_report_to_json(check_nd(h, M0, K, delta)).dump();
    });
    m.def("check_nd_lattice", [](const Hamiltonian& h, std::size_t m, std::size_t K,
                                 double delta) {
        return nd_report_to_json(check_nd(h, FrequencyModule::integer_lattice(m), K, delta))
            .dump();
    });
    m.def("is_linear_near_zero", [](const Hamiltonian& h, const Vec& xi, double delta) {
        const LinearityResult r = is_linear_near_zero(h, xi, delta);
        return py::make_tuple(r.linear, r.alpha);
    });

    m.def("solve_decay",
          [](const Hamiltonian& h, const TrigPolynomial& u0, double t, std::size_t grid) {
              const FrequencyModule M0 = module_basis(nonzero_spectrum(u0));
              const LiftedProblem prep = prepare_lifted(u0, h, M0);
              const SolutionField f = lifted_solve_field(
                  prep, t, std::vector<std::size_t>(M0.rank(), grid));
              py::dict out;
              out["values"] = f.values;
              out["torus_res"] = f.torus_res;
              out["min"] = f.min_value();
              out["max"] = f.max_value();
              return out;
          },
          py::arg("hamiltonian"), py::arg("u0"), py::arg("t"), py::arg("grid") = 512);

    m.def("lifted_probe", [](const Hamiltonian& h, const TrigPolynomial& u0, double t,
                             const std::vector<Vec>& probes) {
        const FrequencyModule M0 = module_basis(nonzero_spectrum(u0));
        return lifted_solve(u0, h, M0, t, probes);
    });

    m.def("lax_friedrichs",
          [](const Hamiltonian& h, const TrigPolynomial& u0, double t, std::size_t grid) {
              const std::vector<std::size_t> res(u0.dim(), grid);
              const auto samples =
                  sample_torus([&](const Vec& y) { return u0.eval(y); }, res);
              return lax_friedrichs_evolve(samples, res, h, t).values;
          });

    m.def("decay_certificate",
          [](const Hamiltonian& torus_h, const TrigPolynomial& v0, double epsilon,
             const std::vector<double>& t_table) {
              CertificateOptions opts;
              opts.epsilon = epsilon;
              if (!t_table.empty()) opts.t_table = t_table;
              return certificate_result_to_json(decay_certificate(torus_h, v0, opts)).dump();
          },
          py::arg("torus_hamiltonian"), py::arg("v0"), py::arg("epsilon") = 0.1,
          py::arg("t_table") = std::vector<double>{});

    m.def("run_decay_config", [](const std::string& path) {
        const ExperimentConfig cfg = load_config(path);
        const DecayRunResult r = run_decay(cfg);
        py::dict out;
        out["c"] = r.c;
        std::vector<std::pair<double, double>> curve;
        for (const auto& row : r.rows) curve.emplace_back(row.t, row.sup_deviation);
        out["curve"] = curve;
        if (r.nd_checked) out["nd_satisfied"] = r.nd.satisfied_up_to_bound;
        return out;
    });
}
