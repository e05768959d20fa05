#pragma once

#include "hjdecay/conjugate.hpp"
#include "hjdecay/solution_field.hpp"
#include "hjdecay/trigpoly.hpp"

namespace hjd {

struct HopfLaxOptions {
    double y_step = 0.0;    // minimization resolution in y units; 0 -> context default
    double radius = 0.0;    // initial search radius in y units; 0 -> automatic
    int max_doublings = 6;
    double osc_bound = 0.0; // oscillation bound of u0, seeds the automatic radius
};

struct HopfLaxPointResult {
    double value = 0.0;
    Vec argmin_y;
    bool boundary = false; // minimizer landed on the search edge (pre-doubling)
};

/// min over a y-grid of u0(y) + t H*((x-y)/t), searched along
/// x - t (anchor + span(dirs)) so that only the conjugate's effective domain
/// is visited. The search radius is validated a posteriori: a minimizer on the
/// boundary shell doubles the radius (up to max_doublings) unless the domain
/// itself is compact and fully covered. Ties resolve to the lexicographically
/// smallest y.
HopfLaxPointResult hopf_lax_point(const std::function<double(const Vec&)>& u0,
                                  const ConjugateOracle& hstar, double t, const Vec& x,
                                  const HopfLaxOptions& opts = {});

SolutionField hopf_lax_field(const std::function<double(const Vec&)>& u0,
                             const ConjugateOracle& hstar, double t, const GridN& xgrid,
                             const HopfLaxOptions& opts = {});

/// Fast path for periodic data on the torus: the candidate displacement set is
/// shared by all grid points and the trigonometric initial data is advanced
/// along the scan by per-term phase rotors.
SolutionField torus_hopf_lax_field(const TrigPolynomial& v0, const ConjugateOracle& hstar,
                                   double t, const std::vector<std::size_t>& res,
                                   const HopfLaxOptions& opts = {});

double torus_hopf_lax_point(const TrigPolynomial& v0, const ConjugateOracle& hstar,
                            double t, const Vec& y, const HopfLaxOptions& opts = {});

} // namespace hjd
