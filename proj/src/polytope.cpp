#include "hjdecay/polytope.hpp"

#include <algorithm>

namespace hjd {
namespace {

// Feasibility of x in conv(points \ {skip}), via phase-1 simplex.
bool in_hull(const std::vector<Vec>& points, const Vec& x, std::size_t skip)
{
    const std::size_t n = x.size();
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < points.size(); ++j)
        if (j != skip) cols.push_back(j);
    if (cols.empty()) return false;

    LpProblem p;
    p.A = Mat(n + 1, cols.size());
    p.b.assign(n + 1, 0.0);
    p.c.assign(cols.size(), 0.0);
    for (std::size_t jj = 0; jj < cols.size(); ++jj) {
        for (std::size_t i = 0; i < n; ++i) p.A(i, jj) = points[cols[jj]][i];
        p.A(n, jj) = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) p.b[i] = x[i];
    p.b[n] = 1.0;
    return solve_lp(p).feasible();
}

} // namespace

Polytope Polytope::from_points(std::vector<Vec> points)
{
    if (points.empty()) throw invalid_input("polytope needs at least one point");
    const std::size_t n = points.front().size();
    for (const auto& v : points)
        if (v.size() != n) throw invalid_input("polytope points with mixed dimensions");

    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    // Drop near-duplicates left by floating arithmetic upstream.
    double scale = 1.0;
    for (const auto& v : points) scale = std::max(scale, norm_inf(v));
    const double dup_tol = 1e-12 * scale;
    std::vector<Vec> distinct;
    for (const auto& v : points) {
        bool dup = false;
        for (const auto& w : distinct) {
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(v[i] - w[i]));
            if (d <= dup_tol) { dup = true; break; }
        }
        if (!dup) distinct.push_back(v);
    }

    // Prune points inside the hull of the others.
    std::vector<Vec> extreme;
    for (std::size_t j = 0; j < distinct.size(); ++j) {
        // rebuild candidate list = extreme-so-far + untested remainder
        std::vector<Vec> pool = extreme;
        for (std::size_t k = j + 1; k < distinct.size(); ++k) pool.push_back(distinct[k]);
        pool.push_back(distinct[j]);
        if (pool.size() == 1 || !in_hull(pool, distinct[j], pool.size() - 1))
            extreme.push_back(distinct[j]);
    }

    Polytope p;
    p.dim_ = n;
    p.vertices_ = std::move(extreme);
    return p;
}

Polytope Polytope::from_vertices_unchecked(std::vector<Vec> vertices)
{
    if (vertices.empty()) throw invalid_input("polytope needs at least one point");
    Polytope p;
    p.dim_ = vertices.front().size();
    p.vertices_ = std::move(vertices);
    return p;
}

double Polytope::support(const Vec& q) const
{
    if (q.size() != dim_) throw invalid_input("support: dimension mismatch");
    double best = -kInf;
    for (const auto& v : vertices_) best = std::max(best, dot(q, v));
    return best;
}

bool Polytope::contains(const Vec& x) const
{
    if (x.size() != dim_) throw invalid_input("contains: dimension mismatch");
    return in_hull(vertices_, x, vertices_.size());
}

Vec Polytope::minimal_norm_point() const
{
    const std::size_t n = dim_;
    const std::size_t V = vertices_.size();
    if (V > 64)
        throw invalid_input("minimal_norm_point: vertex count beyond desk scale");

    Vec best;
    double best_norm = kInf;
    auto consider = [&](const Vec& x) {
        const double nx = dot(x, x);
        if (nx < best_norm - 1e-18 ||
            (std::abs(nx - best_norm) <= 1e-18 && (best.empty() || lex_less(x, best)))) {
            best_norm = nx;
            best = x;
        }
    };

    // Caratheodory: the projection of the origin lives on a face spanned by
    // at most n+1 affinely independent vertices; enumerate candidate subsets.
    std::vector<std::size_t> idx;
    auto recurse = [&](auto&& self, std::size_t start, std::size_t want) -> void {
        if (idx.size() == want) {
            const Vec& v0 = vertices_[idx[0]];
            const std::size_t k = want - 1;
            if (k == 0) { consider(v0); return; }
            Mat W(n, k);
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t i = 0; i < n; ++i)
                    W(i, j) = vertices_[idx[j + 1]][i] - v0[i];
            Mat G(k, k);
            Vec rhs(k, 0.0);
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = 0; b < k; ++b)
                    for (std::size_t i = 0; i < n; ++i) G(a, b) += W(i, a) * W(i, b);
                for (std::size_t i = 0; i < n; ++i) rhs[a] -= W(i, a) * v0[i];
            }
            Vec mu;
            try {
                mu = solve_linear(G, rhs);
            } catch (const invalid_input&) {
                return; // affinely dependent subset
            }
            double mu_sum = 0.0;
            for (double m : mu) {
                if (m < -1e-12) return;
                mu_sum += m;
            }
            if (mu_sum > 1.0 + 1e-12) return;
            Vec x = v0;
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t i = 0; i < n; ++i) x[i] += mu[j] * W(i, j);
            consider(x);
            return;
        }
        for (std::size_t j = start; j < V; ++j) {
            idx.push_back(j);
            self(self, j + 1, want);
            idx.pop_back();
        }
    };
    for (std::size_t size = 1; size <= std::min(V, n + 1); ++size)
        recurse(recurse, 0, size);
    return best;
}

double Polytope::distance(const Vec& x) const
{
    return norm2(translated(Vec(dim_, 0.0) - x).minimal_norm_point());
}

Polytope Polytope::translated(const Vec& shift) const
{
    Polytope p;
    p.dim_ = dim_;
    p.vertices_ = vertices_;
    for (auto& v : p.vertices_)
        for (std::size_t i = 0; i < dim_; ++i) v[i] += shift[i];
    return p;
}

Polytope Polytope::scaled(double factor) const
{
    Polytope p;
    p.dim_ = dim_;
    p.vertices_ = vertices_;
    for (auto& v : p.vertices_)
        for (double& c : v) c *= factor;
    if (factor < 0.0) return from_points(p.vertices_); // orientation may merge points
    return p;
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b)
{
    if (a.dim_ != b.dim_) throw invalid_input("minkowski_sum: dimension mismatch");
    std::vector<Vec> sums;
    sums.reserve(a.vertices_.size() * b.vertices_.size());
    for (const auto& va : a.vertices_)
        for (const auto& vb : b.vertices_) sums.push_back(va + vb);
    if (sums.size() > 4096)
        throw invalid_input("minkowski_sum: vertex count beyond desk scale");
    return Polytope::from_points(std::move(sums));
}

bool polar_membership(const PolarSetQuery& query, const Vec& p)
{
    return query.base.support(p) <= query.epsilon + 1e-12;
}

std::vector<Vec> direction_sample(std::size_t dim, std::size_t count)
{
    std::vector<Vec> dirs;
    if (dim == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
    } else if (dim == 2) {
        for (std::size_t k = 0; k < count; ++k) {
            const double th = 2.0 * M_PI * double(k) / double(count);
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    } else if (dim == 3) {
        // Fibonacci sphere
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double z = 1.0 - 2.0 * (double(k) + 0.5) / double(count);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double th = 2.0 * M_PI * double(k) / golden;
            dirs.push_back({r * std::cos(th), r * std::sin(th), z});
        }
    } else {
        throw invalid_input("direction_sample: dim must be 1..3");
    }
    return dirs;
}

BipolarReport bipolar_check(const Polytope& base, double epsilon, const GridN& probe_grid)
{
    probe_grid.validate();
    if (probe_grid.dim() != base.dim())
        throw invalid_input("bipolar_check: grid/base dimension mismatch");
    if (!base.contains(Vec(base.dim(), 0.0)))
        throw invalid_input("bipolar_check: origin must belong to the base set");
    if (!(epsilon > 0.0)) throw invalid_input("bipolar_check: epsilon must be positive");

    const std::size_t n = base.dim();
    const auto dirs = direction_sample(n, n == 1 ? 2 : (n == 2 ? 96 : 192));

    // Extreme elements of G along each direction. Zero-support directions give
    // unbounded rays in G; a large multiple stands in for the ray limit.
    std::vector<Vec> sampled_p;
    double vertex_scale = 1.0;
    for (const auto& v : base.vertices()) vertex_scale = std::max(vertex_scale, norm_inf(v));
    for (const auto& d : dirs) {
        const double h = base.support(d);
        if (h > 1e-13 * vertex_scale)
            sampled_p.push_back((epsilon / h) * d);
        else
            sampled_p.push_back((1e9 * epsilon / std::max(1e-9, vertex_scale)) * d);
    }

    double cell_diag = 0.0;
    for (const auto& ax : probe_grid.axes) cell_diag += ax.spacing() * ax.spacing();
    cell_diag = std::sqrt(cell_diag);

    BipolarReport rep;
    rep.cell_tolerance = cell_diag;
    const std::size_t total = probe_grid.size();
    for (std::size_t f = 0; f < total; ++f) {
        const Vec v = probe_grid.point_flat(f);
        const bool inside = base.contains(v);
        double sup_pv = -kInf;
        for (const auto& p : sampled_p) sup_pv = std::max(sup_pv, dot(p, v));
        const bool accepted = sup_pv <= epsilon + 1e-9 * std::max(1.0, epsilon);

        if (inside) {
            ++rep.inside_count;
            rep.worst_inside_margin = std::max(rep.worst_inside_margin, sup_pv - epsilon);
            if (!accepted) ++rep.false_rejects;
        } else {
            ++rep.outside_count;
            if (accepted)
                rep.worst_outside_distance =
                    std::max(rep.worst_outside_distance, base.distance(v));
        }
    }
    rep.pass = rep.false_rejects == 0 && rep.worst_outside_distance <= cell_diag;
    return rep;
}

} // namespace hjd
