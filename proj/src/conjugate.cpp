#include "hjdecay/conjugate.hpp"

#include <algorithm>

namespace hjd {
namespace {

Vec min_norm_subgradient_at_zero(const Hamiltonian& H)
{
    return subdifferential_at(H, Vec(H.dim(), 0.0)).polytope.minimal_norm_point();
}

// Orthonormal basis of span{a_i - anchor} by modified Gram-Schmidt.
std::vector<Vec> affine_hull_dirs(const std::vector<Vec>& points, const Vec& anchor)
{
    std::vector<Vec> dirs;
    double scale = 1.0;
    for (const auto& p : points) scale = std::max(scale, norm_inf(p - anchor));
    for (const auto& p : points) {
        Vec d = p - anchor;
        for (const auto& e : dirs) {
            const double proj = dot(d, e);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] -= proj * e[i];
        }
        const double len = norm2(d);
        if (len > 1e-10 * scale) dirs.push_back((1.0 / len) * d);
    }
    return dirs;
}

ConjugateOracle numeric_oracle(const Hamiltonian& H, const OracleBuildOptions& opts)
{
    const std::size_t n = H.dim();
    double L = opts.sample_halfwidth;
    if (L <= 0.0) L = 4.0;
    GridN vgrid;
    std::size_t count = opts.sample_count | 1; // odd
    if (n >= 2) count = std::min<std::size_t>(count, 513);
    if (n >= 3) count = std::min<std::size_t>(count, 129);
    for (std::size_t d = 0; d < n; ++d) vgrid.axes.push_back({-L, L, count});

    SampledConvex sample =
        SampledConvex::from_function(vgrid, [&](const Vec& v) { return H(v); });
    GridN pgrid = suggest_conjugate_grid(sample, count);
    // keep the origin on the p-grid: argmin structure of H* stays exact for
    // normalized hamiltonians whose subdifferential at 0 contains 0
    for (auto& ax : pgrid.axes) {
        const double h = (ax.hi - ax.lo) / double(ax.count - 1);
        const double shift = std::remainder(ax.lo, h);
        ax.lo -= shift;
        ax.hi -= shift;
    }
    auto transformed = legendre_nd(sample, pgrid);
    auto table = std::make_shared<SampledConvex>(std::move(transformed.conjugate));

    ConjugateOracle o;
    o.dim = n;
    o.eval = [table](const Vec& p) -> double {
        try {
            return table->interpolate(p);
        } catch (const invalid_input&) {
            return kInf;
        }
    };
    // anchor at the tabulated argmin of H*
    std::size_t best = 0;
    for (std::size_t i = 1; i < table->values.size(); ++i)
        if (table->finite_at(i) && table->values[i] < table->values[best]) best = i;
    o.anchor = table->grid.point_flat(best);
    for (std::size_t d = 0; d < n; ++d) {
        Vec e(n, 0.0);
        e[d] = 1.0;
        o.dirs.push_back(e);
    }
    o.bounded = true;
    double radius = 0.0;
    for (std::size_t d = 0; d < n; ++d)
        radius = std::max(radius, std::max(o.anchor[d] - pgrid.axes[d].lo,
                                           pgrid.axes[d].hi - o.anchor[d]));
    o.coef_radius = radius;
    return o;
}

} // namespace

double PiecewiseLinear1D::eval(double x) const
{
    if (xs.empty()) return kInf;
    const double span = std::max(1.0, std::abs(xs.front()) + std::abs(xs.back()));
    if (x < xs.front() - 1e-12 * span || x > xs.back() + 1e-12 * span) return kInf;
    if (xs.size() == 1) return ys.front();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = std::min<std::size_t>(xs.size() - 1,
                                           std::max<std::size_t>(1, it - xs.begin()));
    const std::size_t lo = hi - 1;
    const double w = std::clamp((x - xs[lo]) / (xs[hi] - xs[lo]), 0.0, 1.0);
    return (1.0 - w) * ys[lo] + w * ys[hi];
}

PiecewiseLinear1D max_affine_conjugate_1d(const std::vector<AffinePiece>& pieces)
{
    std::vector<std::pair<double, double>> pts;
    for (const auto& pc : pieces) pts.emplace_back(pc.slope[0], -pc.offset);
    std::sort(pts.begin(), pts.end());
    // duplicate slopes: only the lowest -offset survives (dominant piece)
    std::vector<std::pair<double, double>> uniq;
    for (const auto& p : pts) {
        if (!uniq.empty() && p.first == uniq.back().first)
            uniq.back().second = std::min(uniq.back().second, p.second);
        else
            uniq.push_back(p);
    }
    // lower convex hull (Andrew scan)
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : uniq) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            if ((b.second - a.second) * (p.first - a.first) >=
                (p.second - a.second) * (b.first - a.first))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    PiecewiseLinear1D out;
    for (const auto& p : hull) {
        out.xs.push_back(p.first);
        out.ys.push_back(p.second);
    }
    return out;
}

ConjugateOracle make_conjugate_oracle(const Hamiltonian& H, OracleBuildOptions opts)
{
    const std::size_t n = H.dim();

    if (H.is_quadratic()) {
        const auto dec = psd_decompose(H.as_quadratic().Q);
        ConjugateOracle o;
        o.dim = n;
        o.anchor = Vec(n, 0.0);
        o.dirs = dec.range_basis;
        if (o.dirs.empty()) o.dirs.push_back(Vec(n, 0.0)); // H == 0: dom = {0}
        o.bounded = false;
        const auto pinv = dec.pinv;
        const auto kernel = dec.kernel_basis;
        o.eval = [pinv, kernel](const Vec& p) -> double {
            double ortho = 0.0;
            for (const auto& k : kernel) ortho += dot(p, k) * dot(p, k);
            if (std::sqrt(ortho) > 1e-9 * std::max(1.0, norm2(p))) return kInf;
            return 0.5 * dot(p, pinv.apply(p));
        };
        if (dec.range_basis.empty()) {
            o.bounded = true;
            o.coef_radius = 0.0;
        }
        return o;
    }

    if (H.is_abs_linear()) {
        const Vec d = H.as_abs_linear().direction;
        const double len = norm2(d);
        ConjugateOracle o;
        o.dim = n;
        o.anchor = Vec(n, 0.0);
        if (len == 0.0) {
            o.dirs.push_back(Vec(n, 0.0));
            o.bounded = true;
            o.coef_radius = 0.0;
            o.eval = [](const Vec& p) { return norm2(p) <= 1e-12 ? 0.0 : kInf; };
            return o;
        }
        o.dirs.push_back((1.0 / len) * d);
        o.bounded = true;
        o.coef_radius = len;
        o.eval = [d, len](const Vec& p) -> double {
            const double s = dot(p, d) / (len * len);
            double ortho = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double r = p[i] - s * d[i];
                ortho += r * r;
            }
            if (std::sqrt(ortho) > 1e-9 * std::max(1.0, norm2(p)) ||
                std::abs(s) > 1.0 + 1e-12)
                return kInf;
            return 0.0;
        };
        return o;
    }

    if (H.is_max_affine()) {
        const auto& pieces = H.as_max_affine().pieces;
        ConjugateOracle o;
        o.dim = n;
        o.anchor = min_norm_subgradient_at_zero(H);
        std::vector<Vec> slopes;
        for (const auto& pc : pieces) slopes.push_back(pc.slope);
        o.dirs = affine_hull_dirs(slopes, o.anchor);
        if (o.dirs.empty()) o.dirs.push_back(Vec(n, 0.0)); // single-slope H
        o.bounded = true;
        double radius = 0.0;
        for (const auto& s : slopes) radius = std::max(radius, norm2(s - o.anchor));
        o.coef_radius = radius;
        if (n == 1) {
            auto table = std::make_shared<PiecewiseLinear1D>(max_affine_conjugate_1d(pieces));
            o.eval = [table](const Vec& p) { return table->eval(p[0]); };
        } else {
            const Hamiltonian copy = H;
            o.eval = [copy](const Vec& p) -> double {
                const ConjugateValue cv = conjugate_symbolic(copy, p);
                return cv.finite ? cv.value : kInf;
            };
        }
        return o;
    }

    // Sum / Sampled: discrete transform. When a sum is being conjugated because
    // the base hamiltonian was coercified, the caller passes the hinge extent
    // as sample_halfwidth.
    if (H.is_sampled()) {
        const SampledConvex& table = H.as_sampled().table;
        double L = 0.0;
        for (const auto& ax : table.grid.axes)
            L = std::max(L, std::max(std::abs(ax.lo), std::abs(ax.hi)));
        if (opts.sample_halfwidth <= 0.0) opts.sample_halfwidth = L;
    }
    return numeric_oracle(H, opts);
}

} // namespace hjd
