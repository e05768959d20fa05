#pragma once

#include "hjdecay/hamiltonian.hpp"
#include "hjdecay/legendre.hpp"

#include <functional>

namespace hjd {

/// Evaluable view of H* for the Hopf-Lax minimization. Besides point
/// evaluation (+inf outside the effective domain) it carries a search
/// parametrization: dom H* lives in anchor + span(dirs), so the minimization
/// never wastes effort on directions where H* is identically +inf (degenerate
/// lifted quadratics, abs-linear segments, max-affine slope hulls).
struct ConjugateOracle {
    std::size_t dim = 0;
    std::function<double(const Vec&)> eval;
    Vec anchor;              // p0: minimal-norm element of dH(0); H*(anchor) ~ 0
    std::vector<Vec> dirs;   // unit vectors
    bool bounded = false;    // dom compact: |c|_inf <= coef_radius covers it
    double coef_radius = 0.0;

    Vec point(const std::vector<double>& coef) const
    {
        Vec p = anchor;
        for (std::size_t k = 0; k < dirs.size(); ++k)
            for (std::size_t i = 0; i < dim; ++i) p[i] += coef[k] * dirs[k][i];
        return p;
    }
};

struct OracleBuildOptions {
    /// Half-width of the sampling box for the numeric (sum / sampled) route;
    /// 0 picks a default from the spec's own scale.
    double sample_halfwidth = 0.0;
    std::size_t sample_count = 1025; // odd: keeps the origin on the grid
};

/// Closed forms for quadratic / abs-linear / max-affine; discrete Legendre
/// transform behind an interpolator for sums and sampled carriers.
ConjugateOracle make_conjugate_oracle(const Hamiltonian& H, OracleBuildOptions opts = {});

/// Exact conjugate table for a 1D max-affine H: the lower convex hull of the
/// points (slope_i, -offset_i), +inf outside the slope range.
struct PiecewiseLinear1D {
    std::vector<double> xs; // ascending
    std::vector<double> ys;

    double eval(double x) const; // +inf outside [xs.front(), xs.back()]
};
PiecewiseLinear1D max_affine_conjugate_1d(const std::vector<AffinePiece>& pieces);

} // namespace hjd
