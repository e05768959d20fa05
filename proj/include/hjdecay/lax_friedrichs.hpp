#pragma once

#include "hjdecay/hamiltonian.hpp"
#include "hjdecay/solution_field.hpp"

namespace hjd {

struct LaxFriedrichsOptions {
    double cfl = 0.9;           // must lie in (0, 1]
    double viscosity_pad = 1.25; // safety factor on the slope box
};

/// Explicit monotone Lax-Friedrichs evolution on a periodic grid (1D / 2D),
/// numerical viscosity from the hamiltonian's slope bound over the observed
/// gradient range. Independent of the Hopf-Lax path; first-order accurate.
SolutionField lax_friedrichs_evolve(const std::vector<double>& u0_samples,
                                    const std::vector<std::size_t>& res,
                                    const Hamiltonian& H, double t_final,
                                    const LaxFriedrichsOptions& opts = {});

/// Samples a periodic function on the torus nodes j/res (row-major).
std::vector<double> sample_torus(const std::function<double(const Vec&)>& f,
                                 const std::vector<std::size_t>& res);

} // namespace hjd
