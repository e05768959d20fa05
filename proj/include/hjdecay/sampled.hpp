#pragma once

#include "hjdecay/grid.hpp"

#include <functional>

namespace hjd {

/// Convex function sampled on a uniform tensor grid. `mask` marks the
/// effective domain (1 = finite value, 0 = +infinity); masked-out entries
/// carry no meaningful value.
struct SampledConvex {
    GridN grid;
    std::vector<double> values;
    std::vector<std::uint8_t> mask; // empty means all-finite

    std::size_t dim() const { return grid.dim(); }
    std::size_t size() const { return grid.size(); }
    bool finite_at(std::size_t flat) const { return mask.empty() || mask[flat] != 0; }

    static SampledConvex from_function(GridN g, const std::function<double(const Vec&)>& f);

    /// Enforces the type invariants: grid sanity, contiguous effective domain
    /// along every axis-parallel line, and discrete convexity (second
    /// differences >= -1e-9 * value scale). Throws with the offending flat
    /// index and axis on violation.
    void validate() const;

    /// Multilinear interpolation. Throws invalid_input outside the grid box or
    /// when the surrounding cell touches the masked-out region.
    double interpolate(const Vec& v) const;

    /// Range of one-sided discrete slopes along `axis` over the effective domain.
    std::pair<double, double> slope_range(std::size_t axis) const;

    double value_scale() const;
};

} // namespace hjd
