#pragma once

#include "hjdecay/grid.hpp"

namespace hjd {

enum class Provenance { hopf_lax, finite_difference, lifted, closed_form };

const char* provenance_name(Provenance p);

/// Spatial slice of a solution at one time, over either a sampling cube
/// (quasi-periodic case) or the fundamental cell of the torus (periodic case,
/// nodes j/res with the right endpoint identified).
struct SolutionField {
    double t = 0.0;
    Provenance provenance = Provenance::hopf_lax;
    bool periodic = false;
    GridN grid;                         // used when !periodic
    std::vector<std::size_t> torus_res; // used when periodic
    std::vector<double> values;

    std::size_t dim() const { return periodic ? torus_res.size() : grid.dim(); }

    std::size_t count() const
    {
        if (!periodic) return grid.size();
        std::size_t c = 1;
        for (auto r : torus_res) c *= r;
        return c;
    }

    Vec point(std::size_t flat) const
    {
        if (!periodic) return grid.point_flat(flat);
        Vec x(torus_res.size());
        for (std::size_t d = torus_res.size(); d-- > 0;) {
            x[d] = double(flat % torus_res[d]) / double(torus_res[d]);
            flat /= torus_res[d];
        }
        return x;
    }

    double min_value() const;
    double max_value() const;
};

} // namespace hjd
