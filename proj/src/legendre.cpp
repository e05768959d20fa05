#include "hjdecay/legendre.hpp"

#include <algorithm>

namespace hjd {
namespace {

// One conjugation sweep along a line.  Inputs are the node coordinates,
// strided values/excluded/flags of the line; outputs are written densely for
// each ascending p in p_points.
//
// The conjugate only sees the lower convex envelope of the data, so the line
// is first reduced to its lower hull (intermediate stages of the factorized
// transform are discrete partial minimizations and need not stay convex);
// on the hull the argmax is concave-in-index and one monotone pointer
// suffices.
struct LineSweep {
    const double* v_points;
    const double* vals;
    const std::uint8_t* excluded; // may be null
    const std::uint8_t* inflags;  // may be null
    std::size_t stride = 1;
    std::size_t len = 0;

    void run(const std::vector<double>& p_points, double* out, std::uint8_t* out_excluded,
             std::uint8_t* out_flags) const
    {
        std::vector<std::size_t> hull;
        hull.reserve(len);
        for (std::size_t i = 0; i < len; ++i) {
            if (excluded && excluded[i * stride]) continue;
            const double x3 = v_points[i], y3 = vals[i * stride];
            while (hull.size() >= 2) {
                const std::size_t i1 = hull[hull.size() - 2], i2 = hull.back();
                const double x1 = v_points[i1], y1 = vals[i1 * stride];
                const double x2 = v_points[i2], y2 = vals[i2 * stride];
                if ((y2 - y1) * (x3 - x1) >= (y3 - y1) * (x2 - x1))
                    hull.pop_back(); // middle point on or above the chord
                else
                    break;
            }
            hull.push_back(i);
        }
        if (hull.empty()) {
            for (std::size_t k = 0; k < p_points.size(); ++k) {
                out[k] = 0.0;
                out_excluded[k] = 1;
                out_flags[k] = 0;
            }
            return;
        }
        std::size_t j = 0;
        for (std::size_t k = 0; k < p_points.size(); ++k) {
            const double p = p_points[k];
            while (j + 1 < hull.size()) {
                const double cur = p * v_points[hull[j]] - vals[hull[j] * stride];
                const double nxt = p * v_points[hull[j + 1]] - vals[hull[j + 1] * stride];
                if (nxt >= cur)
                    ++j;
                else
                    break;
            }
            const std::size_t i = hull[j];
            out[k] = p * v_points[i] - vals[i * stride];
            out_excluded[k] = 0;
            const bool edge = (j == 0 || j + 1 == hull.size());
            out_flags[k] = (edge || (inflags && inflags[i * stride])) ? 1 : 0;
        }
    }
};

std::vector<double> axis_points(const Axis& ax)
{
    std::vector<double> pts(ax.count);
    for (std::size_t i = 0; i < ax.count; ++i) pts[i] = ax.point(i);
    return pts;
}

} // namespace

LegendreResult legendre_nd(const SampledConvex& f, const GridN& p_grid)
{
    f.validate();
    p_grid.validate();
    if (p_grid.dim() != f.dim())
        throw invalid_input("legendre: p-grid dimension mismatch");
    const std::size_t n = f.dim();

    // Working buffer shape: axes < d already conjugated (p axes), axes >= d
    // still original (v axes).
    std::vector<std::size_t> shape(n);
    for (std::size_t d = 0; d < n; ++d) shape[d] = f.grid.axes[d].count;

    std::vector<double> vals = f.values;
    std::vector<std::uint8_t> excl(f.size(), 0);
    if (!f.mask.empty())
        for (std::size_t i = 0; i < f.size(); ++i) excl[i] = f.mask[i] ? 0 : 1;
    std::vector<std::uint8_t> flags(f.size(), 0);

    for (std::size_t d = 0; d < n; ++d) {
        const auto vpts = axis_points(f.grid.axes[d]);
        const auto ppts = axis_points(p_grid.axes[d]);

        std::vector<std::size_t> out_shape = shape;
        out_shape[d] = ppts.size();
        std::size_t out_total = 1, in_total = 1;
        for (std::size_t k = 0; k < n; ++k) {
            out_total *= out_shape[k];
            in_total *= shape[k];
        }
        std::vector<double> nvals(out_total);
        std::vector<std::uint8_t> nexcl(out_total), nflags(out_total);

        std::size_t stride = 1;
        for (std::size_t k = n; k-- > d + 1;) stride *= shape[k];
        std::size_t out_stride = 1;
        for (std::size_t k = n; k-- > d + 1;) out_stride *= out_shape[k];

        const std::size_t line_block = stride * shape[d];
        const std::size_t out_block = out_stride * out_shape[d];
        std::vector<double> line_out(ppts.size());
        std::vector<std::uint8_t> line_excl(ppts.size()), line_flags(ppts.size());
        for (std::size_t base = 0, obase = 0; base < in_total;
             base += line_block, obase += out_block) {
            for (std::size_t off = 0; off < stride; ++off) {
                LineSweep sweep{vpts.data(),
                                vals.data() + base + off,
                                excl.data() + base + off,
                                flags.data() + base + off,
                                stride,
                                shape[d]};
                sweep.run(ppts, line_out.data(), line_excl.data(), line_flags.data());
                for (std::size_t k = 0; k < ppts.size(); ++k) {
                    nvals[obase + off + k * out_stride] = line_out[k];
                    nexcl[obase + off + k * out_stride] = line_excl[k];
                    nflags[obase + off + k * out_stride] = line_flags[k];
                }
            }
        }
        shape = out_shape;
        vals = std::move(nvals);
        excl = std::move(nexcl);
        flags = std::move(nflags);
        if (d + 1 < n)
            for (double& x : vals) x = -x;
    }

    LegendreResult res;
    res.conjugate.grid = p_grid;
    res.conjugate.values = std::move(vals);
    bool any_excluded = false;
    for (auto e : excl) any_excluded |= e != 0;
    if (any_excluded) {
        res.conjugate.mask.resize(excl.size());
        for (std::size_t i = 0; i < excl.size(); ++i)
            res.conjugate.mask[i] = excl[i] ? 0 : 1;
    }
    res.boundary_attained = std::move(flags);
    return res;
}

LegendreResult legendre_1d(const SampledConvex& f, const Axis& p_axis)
{
    if (f.dim() != 1) throw invalid_input("legendre_1d: input must be 1D");
    GridN pg;
    pg.axes = {p_axis};
    return legendre_nd(f, pg);
}

GridN suggest_conjugate_grid(const SampledConvex& f, std::size_t count_per_axis)
{
    GridN pg;
    for (std::size_t d = 0; d < f.dim(); ++d) {
        auto [lo, hi] = f.slope_range(d);
        double pad = 0.1 * std::max(hi - lo, 1e-6);
        Axis ax;
        ax.lo = lo - pad;
        ax.hi = hi + pad;
        ax.count = count_per_axis ? count_per_axis : f.grid.axes[d].count;
        pg.axes.push_back(ax);
    }
    return pg;
}

} // namespace hjd
