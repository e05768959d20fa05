#include "hjdecay/solver.hpp"

#include <algorithm>

namespace hjd {
namespace {

Vec frac(const Vec& x)
{
    Vec f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = x[i] - std::floor(x[i]);
    return f;
}

} // namespace

LiftedProblem prepare_lifted(const TrigPolynomial& u0, const Hamiltonian& H,
                             const FrequencyModule& M0)
{
    if (H.dim() != u0.dim())
        throw invalid_input("prepare_lifted: hamiltonian/data dimension mismatch");
    LiftMap lift = build_lift(u0, M0);
    Hamiltonian torus_h = lifted_hamiltonian(H, lift.lambda);
    ConjugateOracle oracle = make_conjugate_oracle(torus_h);
    return {std::move(lift), std::move(torus_h), std::move(oracle)};
}

Vec lifted_solve(const LiftedProblem& prep, double t, const std::vector<Vec>& x_probes,
                 const HopfLaxOptions& opts)
{
    Vec out;
    out.reserve(x_probes.size());
    for (const auto& x : x_probes) {
        const Vec y = frac(prep.lift.lambda.apply(x));
        out.push_back(torus_hopf_lax_point(prep.lift.torus_poly, prep.oracle, t, y, opts));
    }
    return out;
}

Vec lifted_solve(const TrigPolynomial& u0, const Hamiltonian& H, const FrequencyModule& M0,
                 double t, const std::vector<Vec>& x_probes, const HopfLaxOptions& opts)
{
    return lifted_solve(prepare_lifted(u0, H, M0), t, x_probes, opts);
}

SolutionField lifted_solve_field(const LiftedProblem& prep, double t,
                                 const std::vector<std::size_t>& torus_res,
                                 const HopfLaxOptions& opts)
{
    SolutionField f = torus_hopf_lax_field(prep.lift.torus_poly, prep.oracle, t, torus_res, opts);
    f.provenance = Provenance::lifted;
    return f;
}

SolutionField solve_concave(const TrigPolynomial& u0_periodic, const Hamiltonian& reflected,
                            double t, const std::vector<std::size_t>& torus_res,
                            const HopfLaxOptions& opts)
{
    const TrigPolynomial w0 = u0_periodic.negated();
    const ConjugateOracle oracle = make_conjugate_oracle(reflected);
    SolutionField w = torus_hopf_lax_field(w0, oracle, t, torus_res, opts);
    for (double& v : w.values) v = -v;
    return w;
}

double torus_min(const TrigPolynomial& v0, std::size_t res_per_axis)
{
    double best = kInf;
    std::size_t total = 1;
    for (std::size_t d = 0; d < v0.dim(); ++d) total *= res_per_axis;
    for (std::size_t flat = 0; flat < total; ++flat) {
        Vec y(v0.dim());
        std::size_t rem = flat;
        for (std::size_t d = v0.dim(); d-- > 0;) {
            y[d] = double(rem % res_per_axis) / double(res_per_axis);
            rem /= res_per_axis;
        }
        best = std::min(best, v0.eval(y));
    }
    return best;
}

double torus_max(const TrigPolynomial& v0, std::size_t res_per_axis)
{
    return -torus_min(v0.negated(), res_per_axis);
}

} // namespace hjd
