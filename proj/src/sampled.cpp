#include "hjdecay/sampled.hpp"

#include <algorithm>

namespace hjd {
namespace {

// Visit every axis-parallel line of the grid along `axis`; cb receives the
// flat index of the line's first node and the stride between nodes.
template <typename F>
void for_each_line(const GridN& g, std::size_t axis, F&& cb)
{
    std::size_t stride = 1;
    for (std::size_t d = g.dim(); d-- > axis + 1;) stride *= g.axes[d].count;
    const std::size_t line_len = g.axes[axis].count;
    const std::size_t total = g.size();
    const std::size_t block = stride * line_len;
    for (std::size_t base = 0; base < total; base += block)
        for (std::size_t off = 0; off < stride; ++off) cb(base + off, stride, line_len);
}

} // namespace

SampledConvex SampledConvex::from_function(GridN g,
                                           const std::function<double(const Vec&)>& f)
{
    g.validate();
    SampledConvex s;
    s.grid = std::move(g);
    s.values.resize(s.grid.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
        s.values[i] = f(s.grid.point_flat(i));
    return s;
}

double SampledConvex::value_scale() const
{
    double m = 1.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (finite_at(i)) m = std::max(m, std::abs(values[i]));
    return m;
}

void SampledConvex::validate() const
{
    grid.validate();
    if (values.size() != grid.size())
        throw invalid_input("sampled: value count does not match grid");
    if (!mask.empty() && mask.size() != grid.size())
        throw invalid_input("sampled: mask count does not match grid");

    bool any_finite = false;
    for (std::size_t i = 0; i < values.size(); ++i) any_finite |= finite_at(i);
    if (!any_finite) throw invalid_input("sampled: empty effective domain");

    const double tol = 1e-9 * value_scale();
    for (std::size_t axis = 0; axis < dim(); ++axis) {
        const double h = grid.axes[axis].spacing();
        for_each_line(grid, axis, [&](std::size_t base, std::size_t stride, std::size_t len) {
            // effective domain must be one contiguous run on each line
            std::size_t first = len, last = len;
            for (std::size_t i = 0; i < len; ++i) {
                if (finite_at(base + i * stride)) {
                    if (first == len) first = i;
                    last = i;
                }
            }
            for (std::size_t i = first; i != len && i <= last; ++i)
                if (!finite_at(base + i * stride))
                    throw invalid_input("sampled: non-contiguous domain at flat index " +
                                        std::to_string(base + i * stride));
            if (first == len) return;
            for (std::size_t i = first + 1; i + 1 <= last; ++i) {
                const double second = values[base + (i + 1) * stride] -
                                      2.0 * values[base + i * stride] +
                                      values[base + (i - 1) * stride];
                (void)h;
                if (second < -tol)
                    throw invalid_input("sampled: convexity violated at flat index " +
                                        std::to_string(base + i * stride) + " axis " +
                                        std::to_string(axis));
            }
        });
    }
}

double SampledConvex::interpolate(const Vec& v) const
{
    if (v.size() != dim()) throw invalid_input("interpolate: dimension mismatch");
    std::vector<std::size_t> cell(dim());
    Vec frac(dim());
    for (std::size_t d = 0; d < dim(); ++d) {
        const Axis& ax = grid.axes[d];
        const double pos = (v[d] - ax.lo) / ax.spacing();
        if (pos < -1e-9 || pos > double(ax.count - 1) + 1e-9)
            throw invalid_input("interpolate: point outside grid bounds");
        double c = std::floor(pos);
        c = std::clamp(c, 0.0, double(ax.count - 2));
        cell[d] = std::size_t(c);
        frac[d] = pos - c;
    }
    double acc = 0.0;
    const std::size_t corners = std::size_t(1) << dim();
    for (std::size_t bits = 0; bits < corners; ++bits) {
        double w = 1.0;
        std::vector<std::size_t> idx(dim());
        for (std::size_t d = 0; d < dim(); ++d) {
            const bool hi = (bits >> d) & 1;
            idx[d] = cell[d] + (hi ? 1 : 0);
            w *= hi ? frac[d] : 1.0 - frac[d];
        }
        const std::size_t flat = grid.flatten(idx);
        if (!finite_at(flat)) {
            if (w > 1e-12)
                throw invalid_input("interpolate: point touches masked-out region");
            continue;
        }
        acc += w * values[flat];
    }
    return acc;
}

std::pair<double, double> SampledConvex::slope_range(std::size_t axis) const
{
    double lo = kInf, hi = -kInf;
    const double h = grid.axes[axis].spacing();
    for_each_line(grid, axis, [&](std::size_t base, std::size_t stride, std::size_t len) {
        for (std::size_t i = 0; i + 1 < len; ++i) {
            const std::size_t a = base + i * stride, b = base + (i + 1) * stride;
            if (finite_at(a) && finite_at(b)) {
                const double s = (values[b] - values[a]) / h;
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
        }
    });
    if (!(lo <= hi)) { lo = -1.0; hi = 1.0; } // single-point domain
    return {lo, hi};
}

} // namespace hjd
