#pragma once

#include "hjdecay/sampled.hpp"

namespace hjd {

/// Discrete Legendre-Fenchel conjugate restricted to a p-grid.
/// `boundary_attained[k]` is set when the defining sup at output node k was
/// attained at an edge of the input's effective domain — the conjugate may be
/// under-resolved there.
struct LegendreResult {
    SampledConvex conjugate;
    std::vector<std::uint8_t> boundary_attained;
};

/// Linear-time monotone-argmax conjugation of a 1D convex sample.
/// Rejects non-convex input (invalid_input with the offending index).
LegendreResult legendre_1d(const SampledConvex& f, const Axis& p_axis);

/// Factorized n-dimensional conjugate (n <= 3): 1D sweeps along each axis with
/// a sign flip between stages, since sup_v [p.v - f] peels one coordinate at a
/// time as  sup_{v1}[p1 v1 - (-sup_{v2}[p2 v2 - f])].
LegendreResult legendre_nd(const SampledConvex& f, const GridN& p_grid);

/// p-grid covering the discrete slope range of f along each axis, padded 10%.
GridN suggest_conjugate_grid(const SampledConvex& f, std::size_t count_per_axis = 0);

} // namespace hjd
