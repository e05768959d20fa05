#include "hjdecay/hamiltonian.hpp"

#include <algorithm>

namespace hjd {

Hamiltonian Hamiltonian::quadratic(Mat Q)
{
    if (Q.rows != Q.cols || Q.rows == 0) throw invalid_input("quadratic: Q must be square");
    const auto eig = sym_eigen(Q);
    const double scale = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    if (eig.values.front() < -1e-9 * std::max(1.0, scale))
        throw invalid_input("quadratic: Q must be positive semidefinite");
    Hamiltonian h;
    h.dim_ = Q.rows;
    h.node_ = std::make_shared<Node>(Quadratic{std::move(Q)});
    return h;
}

Hamiltonian Hamiltonian::max_affine(std::vector<AffinePiece> pieces)
{
    if (pieces.empty()) throw invalid_input("max_affine: needs at least one piece");
    const std::size_t n = pieces.front().slope.size();
    for (const auto& pc : pieces)
        if (pc.slope.size() != n) throw invalid_input("max_affine: mixed slope dimensions");
    Hamiltonian h;
    h.dim_ = n;
    h.node_ = std::make_shared<Node>(MaxAffine{std::move(pieces)});
    return h;
}

Hamiltonian Hamiltonian::abs_linear(Vec direction)
{
    if (direction.empty()) throw invalid_input("abs_linear: empty direction");
    Hamiltonian h;
    h.dim_ = direction.size();
    h.node_ = std::make_shared<Node>(AbsLinear{std::move(direction)});
    return h;
}

Hamiltonian Hamiltonian::sum(std::vector<Hamiltonian> terms)
{
    if (terms.empty()) throw invalid_input("sum: needs at least one term");
    const std::size_t n = terms.front().dim();
    for (const auto& t : terms)
        if (t.dim() != n) throw invalid_input("sum: mixed dimensions");
    Hamiltonian h;
    h.dim_ = n;
    h.node_ = std::make_shared<Node>(Sum{std::move(terms)});
    return h;
}

Hamiltonian Hamiltonian::sampled(SampledConvex table)
{
    table.validate();
    if (!table.mask.empty())
        throw invalid_input("sampled hamiltonian must be finite everywhere on its grid");
    Hamiltonian h;
    h.dim_ = table.dim();
    h.node_ = std::make_shared<Node>(Sampled{std::move(table)});
    return h;
}

double Hamiltonian::operator()(const Vec& v) const
{
    if (v.size() != dim_) throw invalid_input("hamiltonian eval: dimension mismatch");
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Quadratic>) {
                double s = 0.0;
                for (std::size_t i = 0; i < dim_; ++i)
                    for (std::size_t j = 0; j < dim_; ++j) s += v[i] * node.Q(i, j) * v[j];
                return 0.5 * s;
            } else if constexpr (std::is_same_v<T, MaxAffine>) {
                double best = -kInf;
                for (const auto& pc : node.pieces)
                    best = std::max(best, dot(pc.slope, v) + pc.offset);
                return best;
            } else if constexpr (std::is_same_v<T, AbsLinear>) {
                return std::abs(dot(node.direction, v));
            } else if constexpr (std::is_same_v<T, Sum>) {
                double s = 0.0;
                for (const auto& t : node.terms) s += t(v);
                return s;
            } else {
                return node.table.interpolate(v);
            }
        },
        *node_);
}

bool Hamiltonian::is_normalized() const
{
    return std::abs((*this)(Vec(dim_, 0.0))) <= 1e-12;
}

Vec Hamiltonian::slope_bound_box(const Vec& lo, const Vec& hi) const
{
    Vec bound(dim_, 0.0);
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Quadratic>) {
                // |(Qv)_d| is maximized over the box at a corner, coordinatewise
                for (std::size_t d = 0; d < dim_; ++d) {
                    double m = 0.0;
                    for (std::size_t j = 0; j < dim_; ++j)
                        m += std::abs(node.Q(d, j)) * std::max(std::abs(lo[j]), std::abs(hi[j]));
                    bound[d] = m;
                }
            } else if constexpr (std::is_same_v<T, MaxAffine>) {
                for (const auto& pc : node.pieces)
                    for (std::size_t d = 0; d < dim_; ++d)
                        bound[d] = std::max(bound[d], std::abs(pc.slope[d]));
            } else if constexpr (std::is_same_v<T, AbsLinear>) {
                for (std::size_t d = 0; d < dim_; ++d) bound[d] = std::abs(node.direction[d]);
            } else if constexpr (std::is_same_v<T, Sum>) {
                for (const auto& t : node.terms) {
                    const Vec b = t.slope_bound_box(lo, hi);
                    for (std::size_t d = 0; d < dim_; ++d) bound[d] += b[d];
                }
            } else {
                for (std::size_t d = 0; d < dim_; ++d) {
                    auto [slo, shi] = node.table.slope_range(d);
                    bound[d] = std::max(std::abs(slo), std::abs(shi));
                }
            }
        },
        *node_);
    return bound;
}

bool Hamiltonian::is_coercive() const
{
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Quadratic>) {
                const auto eig = sym_eigen(node.Q);
                return eig.values.front() > 1e-10 * std::max(1.0, eig.values.back());
            } else if constexpr (std::is_same_v<T, Sum>) {
                for (const auto& t : node.terms)
                    if (t.is_coercive()) return true;
                return false;
            } else {
                return false; // piecewise linear growth is never superlinear
            }
        },
        *node_);
}

std::string Hamiltonian::kind_name() const
{
    if (is_quadratic()) return "quadratic";
    if (is_max_affine()) return "max_affine";
    if (is_abs_linear()) return "abs_linear";
    if (is_sum()) return "sum";
    return "sampled";
}

ConjugateValue conjugate_symbolic(const Hamiltonian& H, const Vec& p)
{
    if (p.size() != H.dim()) throw invalid_input("conjugate_symbolic: dimension mismatch");
    if (H.is_quadratic()) {
        const Mat& Q = H.as_quadratic().Q;
        const auto eig = sym_eigen(Q);
        if (eig.values.front() <= 1e-12 * std::max(1.0, eig.values.back()))
            throw invalid_input("conjugate_symbolic: quadratic must be positive definite");
        const Vec x = solve_linear(Q, p);
        return {true, 0.5 * dot(p, x)};
    }
    if (H.is_abs_linear()) {
        const Vec& d = H.as_abs_linear().direction;
        const double dd = dot(d, d);
        if (dd == 0.0) return {std::abs(norm2(p)) <= 1e-12, 0.0};
        const double s = dot(p, d) / dd;
        double ortho = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double r = p[i] - s * d[i];
            ortho += r * r;
        }
        const double scale = std::max(1.0, norm2(p));
        if (std::sqrt(ortho) > 1e-9 * scale || std::abs(s) > 1.0 + 1e-12)
            return {false, 0.0};
        return {true, 0.0};
    }
    if (H.is_max_affine()) {
        // H*(p) = -(max interpolated offset) over convex representations of p
        // by the slopes: a small LP.
        const auto& pieces = H.as_max_affine().pieces;
        const std::size_t n = H.dim(), m = pieces.size();
        LpProblem lp;
        lp.A = Mat(n + 1, m);
        lp.b.assign(n + 1, 0.0);
        lp.c.assign(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < n; ++i) lp.A(i, j) = pieces[j].slope[i];
            lp.A(n, j) = 1.0;
            lp.c[j] = -pieces[j].offset; // maximize sum theta*offset
        }
        for (std::size_t i = 0; i < n; ++i) lp.b[i] = p[i];
        lp.b[n] = 1.0;
        const LpResult res = solve_lp(lp);
        if (!res.feasible()) return {false, 0.0};
        return {true, res.objective};
    }
    throw invalid_input("conjugate_symbolic: supported for quadratic, abs_linear, max_affine");
}

SubdifferentialResult subdifferential_at(const Hamiltonian& H, const Vec& v0)
{
    if (v0.size() != H.dim()) throw invalid_input("subdifferential_at: dimension mismatch");
    const std::size_t n = H.dim();

    if (H.is_quadratic()) {
        const Mat& Q = H.as_quadratic().Q;
        Vec g(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g[i] += Q(i, j) * v0[j];
        return {Polytope::from_points({g}), false};
    }
    if (H.is_max_affine()) {
        const auto& pieces = H.as_max_affine().pieces;
        double best = -kInf;
        for (const auto& pc : pieces) best = std::max(best, dot(pc.slope, v0) + pc.offset);
        std::vector<Vec> active;
        for (const auto& pc : pieces)
            if (dot(pc.slope, v0) + pc.offset >= best - 1e-12) active.push_back(pc.slope);
        return {Polytope::from_points(std::move(active)), false};
    }
    if (H.is_abs_linear()) {
        const Vec& d = H.as_abs_linear().direction;
        const double s = dot(d, v0);
        const double tol = 1e-12 * std::max(1.0, norm2(d) * norm2(v0));
        if (s > tol) return {Polytope::from_points({d}), false};
        if (s < -tol) return {Polytope::from_points({-1.0 * d}), false};
        return {Polytope::from_points({d, -1.0 * d}), false};
    }
    if (H.is_sum()) {
        const auto& terms = H.as_sum().terms;
        SubdifferentialResult acc = subdifferential_at(terms.front(), v0);
        for (std::size_t i = 1; i < terms.size(); ++i) {
            const auto next = subdifferential_at(terms[i], v0);
            acc.polytope = minkowski_sum(acc.polytope, next.polytope);
            acc.approximate |= next.approximate;
        }
        return acc;
    }

    // Sampled: per-axis one-sided slope interval at the nearest node, combined
    // as a box; an estimate only.
    const SampledConvex& t = H.as_sampled().table;
    std::vector<std::size_t> idx(n);
    for (std::size_t d = 0; d < n; ++d) {
        const Axis& ax = t.grid.axes[d];
        const double pos = std::clamp((v0[d] - ax.lo) / ax.spacing(), 0.0, double(ax.count - 1));
        idx[d] = std::size_t(std::lround(pos));
    }
    std::vector<std::pair<double, double>> intervals(n);
    for (std::size_t d = 0; d < n; ++d) {
        const Axis& ax = t.grid.axes[d];
        const double h = ax.spacing();
        auto neighbor = [&](std::size_t node) {
            auto j = idx;
            j[d] = node;
            return t.values[t.grid.flatten(j)];
        };
        const std::size_t i = idx[d];
        const double here = neighbor(i);
        const double left = i > 0 ? (here - neighbor(i - 1)) / h : -kInf;
        const double right = i + 1 < ax.count ? (neighbor(i + 1) - here) / h : kInf;
        const double lo = std::isfinite(left) ? left : right;
        const double hi = std::isfinite(right) ? right : left;
        intervals[d] = {lo, hi};
    }
    std::vector<Vec> corners;
    for (std::size_t bits = 0; bits < (std::size_t(1) << n); ++bits) {
        Vec c(n);
        for (std::size_t d = 0; d < n; ++d)
            c[d] = ((bits >> d) & 1) ? intervals[d].second : intervals[d].first;
        corners.push_back(c);
    }
    return {Polytope::from_points(std::move(corners)), true};
}

Hamiltonian coercify(const Hamiltonian& H, double L)
{
    if (!(L > 0.0)) throw invalid_input("coercify: L must be positive");
    const std::size_t n = H.dim();

    // characteristic outer slope of H, per axis, floored at 1
    double slope_est = 1.0;
    for (std::size_t d = 0; d < n; ++d)
        for (double sgn : {1.0, -1.0}) {
            Vec a(n, 0.0), b(n, 0.0);
            a[d] = sgn * L;
            b[d] = sgn * 1.5 * L;
            slope_est = std::max(slope_est, (H(b) - H(a)) / (0.5 * L));
        }

    std::vector<AffinePiece> pieces;
    pieces.push_back({Vec(n, 0.0), 0.0}); // keeps the hinge at zero inside the box
    for (std::size_t d = 0; d < n; ++d)
        for (double sgn : {1.0, -1.0})
            for (int j = 0; j < 4; ++j) {
                const double s = slope_est * double(1 << (j + 1));
                const double breakpoint = L * (1.0 + 0.25 * double(j));
                Vec slope(n, 0.0);
                slope[d] = sgn * s;
                pieces.push_back({slope, -s * breakpoint});
            }
    return Hamiltonian::sum({H, Hamiltonian::max_affine(std::move(pieces))});
}

std::vector<DirectionalLimitEntry>
directional_limit_check(const std::function<double(const Vec&)>& hstar, const Vec& p0,
                        const Vec& q, const std::vector<double>& t_list)
{
    const double at_p0 = hstar(p0);
    if (!(std::abs(at_p0) <= 1e-9))
        throw invalid_input("directional_limit_check: Hstar(p0) must vanish");
    std::vector<DirectionalLimitEntry> out;
    for (double t : t_list) {
        if (!(t > 0.0)) throw invalid_input("directional_limit_check: t must be positive");
        Vec p = p0;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += q[i] / t;
        const double hv = hstar(p);
        DirectionalLimitEntry e;
        e.t = t;
        if (std::isfinite(hv)) {
            e.value = t * hv;
        } else {
            e.in_domain = false;
            e.value = kInf;
        }
        out.push_back(e);
    }
    return out;
}

} // namespace hjd
