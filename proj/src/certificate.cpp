#include "hjdecay/certificate.hpp"

#include <algorithm>

namespace hjd {
namespace {

double torus_dist(const Vec& a, const Vec& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = std::abs(a[i] - b[i]);
        d -= std::floor(d);
        d = std::min(d, 1.0 - d);
        s += d * d;
    }
    return std::sqrt(s);
}

Vec frac(const Vec& x)
{
    Vec f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = x[i] - std::floor(x[i]);
    return f;
}

// Scalar hinge vanishing on [-L, L] with escalating outer slopes; the same
// profile coercify() uses, here applied along flat directions only.
std::vector<AffinePiece> scalar_hinge_pieces(double L)
{
    std::vector<AffinePiece> pieces;
    pieces.push_back({{0.0}, 0.0});
    for (double sgn : {1.0, -1.0})
        for (int j = 0; j < 4; ++j) {
            const double s = double(1 << (j + 1));
            const double breakpoint = L * (1.0 + 0.25 * double(j));
            pieces.push_back({{sgn * s}, -s * breakpoint});
        }
    return pieces;
}

// Separable view of the coercified conjugate: along an orthonormal frame the
// hamiltonian splits into 1D pieces, so H*(p) is an exact sum of 1D closed
// forms. This is what keeps t * H*(p0 + q/t) meaningful at large t - a
// sampled table cannot deliver the required near-kink accuracy.
struct Component {
    enum class Kind { quadratic, interval, hinge };
    Kind kind = Kind::quadratic;
    Vec dir;                 // unit direction
    double lambda = 0.0;     // quadratic eigenvalue
    double halfwidth = 0.0;  // interval radius (abs-linear)
    PiecewiseLinear1D conj;  // hinge conjugate phi*
    double flat_radius = 0.0;

    double eval(double s) const
    {
        switch (kind) {
            case Kind::quadratic: return s * s / (2.0 * lambda);
            case Kind::interval: return std::abs(s) <= halfwidth + 1e-12 ? 0.0 : kInf;
            case Kind::hinge: return conj.eval(s);
        }
        return kInf;
    }

    // subdifferential of the component's contribution to H* at coordinate 0
    std::pair<double, double> subdiff_at_zero() const
    {
        switch (kind) {
            case Kind::quadratic: return {0.0, 0.0};
            case Kind::interval: return {0.0, 0.0};
            case Kind::hinge: return {-flat_radius, flat_radius};
        }
        return {0.0, 0.0};
    }
};

struct CertConjugate {
    bool separable = false;
    std::vector<Component> comps;

    // 1D fallback: ternary search on the coercified hamiltonian
    Hamiltonian coercified = Hamiltonian::quadratic(Mat::identity(1));
    double bracket = 0.0;

    double eval(const Vec& p) const
    {
        if (separable) {
            double total = 0.0;
            for (const auto& c : comps) {
                const double v = c.eval(dot(c.dir, p));
                if (!std::isfinite(v)) return kInf;
                total += v;
            }
            return total;
        }
        // concave 1D objective s -> p s - Hc(s); ternary search is exact here
        double lo = -bracket, hi = bracket;
        const double pp = p[0];
        for (int it = 0; it < 200; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (pp * m1 - coercified({m1}) < pp * m2 - coercified({m2}))
                lo = m1;
            else
                hi = m2;
        }
        const double s = 0.5 * (lo + hi);
        return pp * s - coercified({s});
    }
};

// p0 must sit where every hinge coordinate vanishes (true for p0 in the range
// of the quadratic part); the subdifferential is the product of per-component
// intervals, assembled as a polytope.
Polytope separable_subdifferential(const std::vector<Component>& comps, const Vec& p0)
{
    const std::size_t m = p0.size();
    Vec base(m, 0.0);
    std::vector<std::pair<Vec, double>> spans; // direction, radius
    for (const auto& c : comps) {
        const double s0 = dot(c.dir, p0);
        if (c.kind == Component::Kind::quadratic) {
            for (std::size_t i = 0; i < m; ++i) base[i] += (s0 / c.lambda) * c.dir[i];
        } else {
            const auto [lo, hi] = c.subdiff_at_zero();
            if (hi > lo) spans.emplace_back(c.dir, 0.5 * (hi - lo));
        }
    }
    std::vector<Vec> vertices = {base};
    for (const auto& [dir, radius] : spans) {
        std::vector<Vec> next;
        for (const auto& v : vertices)
            for (double sgn : {1.0, -1.0}) {
                Vec w = v;
                for (std::size_t i = 0; i < m; ++i) w[i] += sgn * radius * dir[i];
                next.push_back(w);
            }
        vertices = std::move(next);
    }
    return Polytope::from_points(std::move(vertices));
}

// 1D: the interval {v : H(v) - p0 v <= min + tol}, endpoints by bisection.
Polytope zero_interval_1d(const Hamiltonian& H, double p0, double B)
{
    auto g = [&](double v) { return H({v}) - p0 * v; };
    const std::size_t scan = 8193;
    double gmin = kInf, vmin = 0.0;
    for (std::size_t i = 0; i < scan; ++i) {
        const double v = -B + 2.0 * B * double(i) / double(scan - 1);
        const double gv = g(v);
        if (gv < gmin) { gmin = gv; vmin = v; }
    }
    double scale = std::max(1.0, std::abs(gmin));
    for (double v : {-B, B}) scale = std::max(scale, std::abs(g(v)));
    const double tol = 1e-11 * scale;

    auto edge = [&](double inside, double outside) {
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (inside + outside);
            if (g(mid) <= gmin + tol)
                inside = mid;
            else
                outside = mid;
        }
        return inside;
    };
    const double lo = g(-B) <= gmin + tol ? -B : edge(vmin, -B);
    const double hi = g(B) <= gmin + tol ? B : edge(vmin, B);
    if (hi - lo < 1e-12) return Polytope::from_points({{0.5 * (lo + hi)}});
    return Polytope::from_points({{lo}, {hi}});
}

Component hinge_component(Vec dir, double L)
{
    Component c;
    c.kind = Component::Kind::hinge;
    c.dir = std::move(dir);
    c.conj = max_affine_conjugate_1d(scalar_hinge_pieces(L));
    c.flat_radius = L;
    return c;
}

// Build the certificate's conjugate view of the (coercified) hamiltonian.
CertConjugate build_cert_conjugate(const Hamiltonian& H, double L)
{
    const std::size_t m = H.dim();
    CertConjugate out;

    if (H.is_quadratic()) {
        out.separable = true;
        const auto eig = sym_eigen(H.as_quadratic().Q);
        const double cut = 1e-10 * std::max(1e-300, std::abs(eig.values.back()));
        for (std::size_t k = 0; k < m; ++k) {
            Vec dir(m);
            for (std::size_t i = 0; i < m; ++i) dir[i] = eig.vectors(i, k);
            if (eig.values[k] > cut) {
                Component c;
                c.kind = Component::Kind::quadratic;
                c.dir = dir;
                c.lambda = eig.values[k];
                out.comps.push_back(c);
            } else {
                out.comps.push_back(hinge_component(dir, L));
            }
        }
        return out;
    }
    if (H.is_abs_linear() && m >= 2) {
        const Vec& d = H.as_abs_linear().direction;
        const double len = norm2(d);
        if (len == 0.0) throw invalid_input("certificate: zero abs_linear direction");
        out.separable = true;
        Component c;
        c.kind = Component::Kind::interval;
        c.dir = (1.0 / len) * d;
        c.halfwidth = len;
        out.comps.push_back(c);
        // orthonormal completion spans the flat directions
        std::vector<Vec> frame = {c.dir};
        for (std::size_t axis = 0; axis < m && frame.size() < m; ++axis) {
            Vec e(m, 0.0);
            e[axis] = 1.0;
            for (const auto& f : frame) {
                const double proj = dot(e, f);
                for (std::size_t i = 0; i < m; ++i) e[i] -= proj * f[i];
            }
            const double elen = norm2(e);
            if (elen > 1e-9) {
                frame.push_back((1.0 / elen) * e);
                out.comps.push_back(hinge_component(frame.back(), L));
            }
        }
        return out;
    }
    if (m == 1) {
        out.separable = false;
        out.coercified = H.is_coercive() ? H : coercify(H, L);
        out.bracket = 2.5 * L;
        return out;
    }
    throw invalid_input("certificate: unsupported hamiltonian shape; supported: "
                        "quadratic (any rank), abs-linear, any 1D hamiltonian");
}

} // namespace

Polytope conjugate_subdifferential(const Hamiltonian& H, const Vec& p0, double box_halfwidth)
{
    const std::size_t m = H.dim();
    if (H.is_quadratic() || (H.is_abs_linear() && m >= 2)) {
        const CertConjugate cc = build_cert_conjugate(H, box_halfwidth);
        return separable_subdifferential(cc.comps, p0);
    }
    if (m == 1) {
        const Hamiltonian Hc = H.is_coercive() ? H : coercify(H, box_halfwidth);
        return zero_interval_1d(Hc, p0[0], 2.5 * box_halfwidth);
    }
    throw invalid_input("certificate: unsupported hamiltonian shape for dH*(p0)");
}

CertificateResult decay_certificate(const Hamiltonian& H, const TrigPolynomial& v0,
                                    const CertificateOptions& opts)
{
    if (H.dim() != v0.dim())
        throw invalid_input("decay_certificate: hamiltonian/data dimension mismatch");
    if (!(opts.epsilon > 0.0)) throw invalid_input("decay_certificate: epsilon must be positive");
    const std::size_t m = H.dim();

    CertificateResult result;
    DecayCertificate& cert = result.certificate;
    cert.epsilon = opts.epsilon;
    cert.t_table = opts.t_table;

    // (a) p0: minimal-norm element of dH(0)
    cert.p0 = subdifferential_at(H, Vec(m, 0.0)).polytope.minimal_norm_point();

    // coercified conjugate view at the data's Lipschitz scale
    const double L = std::max(1.0, v0.lipschitz_bound());
    const CertConjugate hstar = build_cert_conjugate(H, L);

    // (b) dH*(p0)
    cert.subdiff_polytope = hstar.separable
                                ? separable_subdifferential(hstar.comps, cert.p0)
                                : zero_interval_1d(hstar.coercified, cert.p0[0], hstar.bracket);

    // (c) delta-net radius from the modulus of continuity of v0
    const double lip = v0.lipschitz_bound();
    cert.delta_net = lip > 0.0 ? 0.999 * opts.epsilon / lip : 0.45;
    cert.delta_net = std::min(cert.delta_net, 0.45);

    // min of v0 over the torus
    std::size_t min_res = opts.torus_min_res;
    if (min_res == 0) min_res = m == 1 ? 8192 : (m == 2 ? 1024 : 96);
    cert.c = torus_min(v0, min_res);

    // (d) greedy net from lattice shells inside G
    const PolarSetQuery gq(cert.subdiff_polytope, opts.epsilon);
    const double pitch = cert.delta_net * 0.6180339887498949; // irrational-ish projections
    const double s_chk = cert.delta_net / 4.0;
    const double cover_radius = cert.delta_net - s_chk * std::sqrt(double(m)) * 0.5;
    const std::size_t res_chk =
        std::max<std::size_t>(4, std::size_t(std::ceil(1.0 / s_chk)));
    std::size_t chk_total = 1;
    for (std::size_t d = 0; d < m; ++d) chk_total *= res_chk;
    if (chk_total > std::size_t(80e6))
        throw invalid_input("decay_certificate: check grid beyond desk scale; raise epsilon");
    std::vector<std::uint8_t> covered(chk_total, 0);
    std::size_t uncovered = chk_total;

    auto chk_point = [&](std::size_t flat) {
        Vec y(m);
        for (std::size_t d = m; d-- > 0;) {
            y[d] = double(flat % res_chk) / double(res_chk);
            flat /= res_chk;
        }
        return y;
    };
    auto mark = [&](const Vec& pr) {
        std::size_t newly = 0;
        const std::ptrdiff_t w = std::ptrdiff_t(std::ceil(cover_radius * res_chk)) + 1;
        std::vector<std::ptrdiff_t> center(m);
        for (std::size_t d = 0; d < m; ++d)
            center[d] = std::ptrdiff_t(std::llround(pr[d] * res_chk));
        std::vector<std::ptrdiff_t> off(m, -w);
        while (true) {
            std::size_t flat = 0;
            for (std::size_t d = 0; d < m; ++d) {
                const std::ptrdiff_t idx =
                    ((center[d] + off[d]) % std::ptrdiff_t(res_chk) + res_chk) % res_chk;
                flat = flat * res_chk + std::size_t(idx);
            }
            if (!covered[flat] && torus_dist(chk_point(flat), pr) <= cover_radius) {
                covered[flat] = 1;
                ++newly;
                --uncovered;
            }
            std::size_t d = m;
            bool done = false;
            while (d-- > 0) {
                if (off[d] < w) { ++off[d]; break; }
                off[d] = -w;
                if (d == 0) done = true;
            }
            if (done) break;
        }
        return newly;
    };

    std::size_t empty_streak = 0;
    std::size_t shell = 0;
    for (; shell <= opts.max_shells && uncovered > 0; ++shell) {
        bool accepted_any = false;
        std::vector<std::ptrdiff_t> k(m, -std::ptrdiff_t(shell));
        while (true) {
            bool on_shell = false;
            for (std::size_t d = 0; d < m; ++d)
                if (std::size_t(std::abs(k[d])) == shell) on_shell = true;
            if (on_shell || shell == 0) {
                Vec q(m);
                for (std::size_t d = 0; d < m; ++d) q[d] = double(k[d]) * pitch;
                if (polar_membership(gq, q)) {
                    accepted_any = true;
                    const Vec pr = frac(q);
                    if (uncovered > 0 && mark(pr) > 0) {
                        cert.net_q.push_back(q);
                        cert.net_projected.push_back(pr);
                    }
                }
            }
            std::size_t d = m;
            bool done = false;
            while (d-- > 0) {
                if (k[d] < std::ptrdiff_t(shell)) { ++k[d]; break; }
                k[d] = -std::ptrdiff_t(shell);
                if (d == 0) done = true;
            }
            if (done || uncovered == 0) break;
        }
        empty_streak = accepted_any ? 0 : empty_streak + 1;
        if (empty_streak >= opts.empty_shell_limit) break;
    }
    cert.shells_scanned = shell;

    if (uncovered > 0) {
        result.status = CertificateResult::Status::budget_exhausted;
        // distinguish a too-small budget from genuine degeneracy
        result.nd_recheck = check_nd(H, FrequencyModule::integer_lattice(m), opts.nd_bound,
                                     opts.nd_delta);
        result.message =
            "net construction exhausted its budget (" + std::to_string(uncovered) +
            " torus cells uncovered after " + std::to_string(shell) + " shells); " +
            (result.nd_recheck.satisfied_up_to_bound
                 ? "non-degeneracy recheck passed up to K=" + std::to_string(opts.nd_bound) +
                       " - consider a larger budget"
                 : "non-degeneracy recheck found " +
                       std::to_string(result.nd_recheck.witnesses.size()) +
                       " linear direction(s) - the polar set is bounded and its projection "
                       "cannot be dense");
        return result;
    }

    // (e) alpha(t) and the bound table
    for (double t : opts.t_table) {
        if (!(t > 0.0)) throw invalid_input("decay_certificate: t_table must be positive");
        double alpha = 0.0;
        for (const auto& q : cert.net_q) {
            Vec p = cert.p0;
            for (std::size_t i = 0; i < m; ++i) p[i] += q[i] / t;
            const double hv = hstar.eval(p);
            alpha = std::max(alpha, std::isfinite(hv) ? t * hv : kInf);
        }
        cert.alpha_table.push_back(alpha);
        cert.bound_table.push_back(cert.c + opts.epsilon + alpha);
    }

    result.status = CertificateResult::Status::ok;
    result.message = "net of " + std::to_string(cert.net_q.size()) + " points, delta=" +
                     format_double(cert.delta_net);
    return result;
}

} // namespace hjd
