#pragma once

#include "hjdecay/freq_module.hpp"
#include "hjdecay/hopflax.hpp"

namespace hjd {

/// Lift of a quasi-periodic problem to the torus: u(t,x) = v(t, Lambda x)
/// where v solves the periodic problem with hamiltonian H(Lambda^T .).
struct LiftedProblem {
    LiftMap lift;
    Hamiltonian torus_hamiltonian;
    ConjugateOracle oracle;
};

LiftedProblem prepare_lifted(const TrigPolynomial& u0, const Hamiltonian& H,
                             const FrequencyModule& M0);

/// Values v(t, Lambda x mod 1) at the probes.
Vec lifted_solve(const LiftedProblem& prep, double t, const std::vector<Vec>& x_probes,
                 const HopfLaxOptions& opts = {});

/// One-call form matching the operation contract.
Vec lifted_solve(const TrigPolynomial& u0, const Hamiltonian& H, const FrequencyModule& M0,
                 double t, const std::vector<Vec>& x_probes, const HopfLaxOptions& opts = {});

SolutionField lifted_solve_field(const LiftedProblem& prep, double t,
                                 const std::vector<std::size_t>& torus_res,
                                 const HopfLaxOptions& opts = {});

/// Concave-hamiltonian solve through the sign flip: the caller supplies the
/// convex reflection G(w) = -H(-w); the solution is -w where w solves the
/// convex problem with initial data -u0. The long-time limit becomes sup u0.
SolutionField solve_concave(const TrigPolynomial& u0_periodic, const Hamiltonian& reflected,
                            double t, const std::vector<std::size_t>& torus_res,
                            const HopfLaxOptions& opts = {});

/// min (exact) of a torus trig polynomial over a fine grid.
double torus_min(const TrigPolynomial& v0, std::size_t res_per_axis);
double torus_max(const TrigPolynomial& v0, std::size_t res_per_axis);

} // namespace hjd
