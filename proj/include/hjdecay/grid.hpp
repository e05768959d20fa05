#pragma once

#include "hjdecay/common.hpp"

namespace hjd {

/// Uniform 1D axis with `count` nodes including both endpoints.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 2;

    double spacing() const { return (hi - lo) / double(count - 1); }
    double point(std::size_t i) const { return lo + double(i) * spacing(); }

    void validate() const
    {
        if (count < 3) throw invalid_input("axis needs count >= 3");
        if (!(hi > lo)) throw invalid_input("axis needs hi > lo");
    }
};

/// Tensor-product grid over up to three axes, flattened row-major
/// (last axis fastest).
struct GridN {
    std::vector<Axis> axes;

    std::size_t dim() const { return axes.size(); }

    std::size_t size() const
    {
        std::size_t s = 1;
        for (const auto& ax : axes) s *= ax.count;
        return s;
    }

    std::vector<std::size_t> unflatten(std::size_t flat) const
    {
        std::vector<std::size_t> idx(dim());
        for (std::size_t d = dim(); d-- > 0;) {
            idx[d] = flat % axes[d].count;
            flat /= axes[d].count;
        }
        return idx;
    }

    std::size_t flatten(const std::vector<std::size_t>& idx) const
    {
        std::size_t flat = 0;
        for (std::size_t d = 0; d < dim(); ++d) flat = flat * axes[d].count + idx[d];
        return flat;
    }

    Vec point(const std::vector<std::size_t>& idx) const
    {
        Vec x(dim());
        for (std::size_t d = 0; d < dim(); ++d) x[d] = axes[d].point(idx[d]);
        return x;
    }

    Vec point_flat(std::size_t flat) const { return point(unflatten(flat)); }

    void validate() const
    {
        if (axes.empty() || axes.size() > 3)
            throw invalid_input("grid supports 1 <= dim <= 3");
        for (const auto& ax : axes) ax.validate();
    }
};

} // namespace hjd
