#include "hjdecay/hopflax.hpp"

#include <algorithm>
#include <complex>

namespace hjd {

const char* provenance_name(Provenance p)
{
    switch (p) {
        case Provenance::hopf_lax: return "hopf_lax";
        case Provenance::finite_difference: return "finite_difference";
        case Provenance::lifted: return "lifted";
        case Provenance::closed_form: return "closed_form";
    }
    return "unknown";
}

double SolutionField::min_value() const
{
    double m = kInf;
    for (double v : values) m = std::min(m, v);
    return m;
}

double SolutionField::max_value() const
{
    double m = -kInf;
    for (double v : values) m = std::max(m, v);
    return m;
}

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Symmetric coefficient grid c_k = j_k * hc, j_k in [-N_k, N_k], dimension
// r = dirs.size(), last dimension fastest in the flat order.
struct CoefGrid {
    std::vector<std::size_t> half;
    double hc = 0.0;

    std::size_t total() const
    {
        std::size_t s = 1;
        for (auto h : half) s *= 2 * h + 1;
        return s;
    }

    std::vector<std::ptrdiff_t> indices(std::size_t flat) const
    {
        std::vector<std::ptrdiff_t> j(half.size());
        for (std::size_t k = half.size(); k-- > 0;) {
            const std::size_t span = 2 * half[k] + 1;
            j[k] = std::ptrdiff_t(flat % span) - std::ptrdiff_t(half[k]);
            flat /= span;
        }
        return j;
    }

    std::vector<double> coef(std::size_t flat) const
    {
        const auto j = indices(flat);
        std::vector<double> c(j.size());
        for (std::size_t k = 0; k < j.size(); ++k) c[k] = double(j[k]) * hc;
        return c;
    }

    bool on_edge(std::size_t flat) const
    {
        const auto j = indices(flat);
        for (std::size_t k = 0; k < j.size(); ++k)
            if (std::size_t(std::abs(j[k])) == half[k] && half[k] > 0) return true;
        return false;
    }
};

double auto_coef_radius(const ConjugateOracle& o, double t, double osc, double hc)
{
    if (o.bounded) return o.coef_radius + hc;
    const double need = 2.0 * osc + 1.0;
    double rc = std::max(8.0 * hc, 0.25);
    for (int it = 0; it < 60; ++it) {
        bool ok = true;
        for (const auto& d : o.dirs) {
            for (double sgn : {1.0, -1.0}) {
                Vec p = o.anchor;
                for (std::size_t i = 0; i < o.dim; ++i) p[i] += sgn * rc * d[i];
                const double e = o.eval(p);
                if (std::isfinite(e) && t * e <= need) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) return rc;
        rc *= 2.0;
    }
    throw numerical_failure("hopf_lax: conjugate grows too slowly to bracket the minimizer");
}

struct ScanSetup {
    CoefGrid grid;
    std::vector<double> cost;      // t * Hstar(anchor + sum c_k d_k); +inf = skip
    std::vector<Vec> displacement; // t * (anchor + sum c_k d_k)
};

ScanSetup build_scan(const ConjugateOracle& o, double t, double rc, double hc)
{
    ScanSetup s;
    s.grid.hc = hc;
    s.grid.half.assign(o.dirs.size(), std::size_t(std::ceil(rc / hc)));
    const std::size_t total = s.grid.total();
    if (total > std::size_t(2e8))
        throw numerical_failure("hopf_lax: candidate grid beyond desk scale; "
                                "coarsen y_step or shrink the radius");
    s.cost.resize(total);
    s.displacement.resize(total);
    for (std::size_t f = 0; f < total; ++f) {
        const auto c = s.grid.coef(f);
        const Vec p = o.point(c);
        const double e = o.eval(p);
        s.cost[f] = std::isfinite(e) ? t * e : kInf;
        s.displacement[f] = t * p;
    }
    return s;
}

struct BestTracker {
    double value = kInf;
    std::size_t flat = 0;
    bool found = false;

    void offer(double v, std::size_t f, const ScanSetup& scan, const Vec& x)
    {
        if (!found || v < value) {
            value = v;
            flat = f;
            found = true;
        } else if (v == value) {
            // deterministic tie-break: smallest argmin y in lexicographic order
            const Vec y_new = x - scan.displacement[f];
            const Vec y_old = x - scan.displacement[flat];
            if (lex_less(y_new, y_old)) flat = f;
        }
    }
};

} // namespace

HopfLaxPointResult hopf_lax_point(const std::function<double(const Vec&)>& u0,
                                  const ConjugateOracle& hstar, double t, const Vec& x,
                                  const HopfLaxOptions& opts)
{
    if (!(t > 0.0)) throw invalid_input("hopf_lax_point: t must be positive");
    if (x.size() != hstar.dim) throw invalid_input("hopf_lax_point: dimension mismatch");

    const double y_step = opts.y_step > 0.0 ? opts.y_step : 1.0 / 1024.0;
    const double hc = y_step / t;
    double rc = opts.radius > 0.0 ? opts.radius / t
                                  : auto_coef_radius(hstar, t, opts.osc_bound, hc);
    if (hstar.bounded) rc = std::min(rc, hstar.coef_radius + hc);

    for (int attempt = 0;; ++attempt) {
        const ScanSetup scan = build_scan(hstar, t, rc, hc);
        BestTracker best;
        for (std::size_t f = 0; f < scan.cost.size(); ++f) {
            if (!std::isfinite(scan.cost[f])) continue;
            const Vec y = x - scan.displacement[f];
            best.offer(u0(y) + scan.cost[f], f, scan, x);
        }
        if (!best.found)
            throw numerical_failure("hopf_lax_point: no candidate hit the conjugate domain");
        const bool edge = scan.grid.on_edge(best.flat);
        const bool covered = hstar.bounded && rc >= hstar.coef_radius;
        if (!edge || covered) {
            HopfLaxPointResult res;
            res.value = best.value;
            res.argmin_y = x - scan.displacement[best.flat];
            res.boundary = edge;
            return res;
        }
        if (attempt >= opts.max_doublings)
            throw numerical_failure(
                "hopf_lax_point: unresolved minimizer (still on the search boundary after " +
                std::to_string(opts.max_doublings) + " doublings)");
        rc *= 2.0;
    }
}

SolutionField hopf_lax_field(const std::function<double(const Vec&)>& u0,
                             const ConjugateOracle& hstar, double t, const GridN& xgrid,
                             const HopfLaxOptions& opts)
{
    xgrid.validate();
    HopfLaxOptions local = opts;
    if (local.y_step <= 0.0) {
        double h = kInf;
        for (const auto& ax : xgrid.axes) h = std::min(h, ax.spacing());
        local.y_step = h;
    }
    SolutionField field;
    field.t = t;
    field.provenance = Provenance::hopf_lax;
    field.grid = xgrid;
    field.values.resize(xgrid.size());
    for (std::size_t f = 0; f < xgrid.size(); ++f)
        field.values[f] = hopf_lax_point(u0, hstar, t, xgrid.point_flat(f), local).value;
    return field;
}

namespace {

struct TorusScanner {
    // prepared once per (v0, oracle, t, resolution)
    ScanSetup scan;
    std::vector<Vec> freqs; // integer frequency shadows
    std::vector<std::complex<double>> coeffs;
    std::size_t inner_span = 1;
    std::size_t rows = 1;

    void prepare(const TrigPolynomial& poly, const ConjugateOracle& o, double time,
                 double rc, double hc)
    {
        scan = build_scan(o, time, rc, hc);
        for (const auto& [f, a] : poly.terms()) {
            freqs.push_back(f.shadow());
            coeffs.push_back(a);
        }
        inner_span = 2 * scan.grid.half.back() + 1;
        rows = scan.cost.size() / inner_span;
    }

    double minimize(const Vec& y, bool* edge_hit) const
    {
        const std::size_t n_terms = freqs.size();
        double best = kInf;
        std::size_t best_flat = 0;
        bool found = false;

        // Per row: per-term phase rotors advance v0(y - w(c)) along the
        // innermost scan direction with one complex multiply per step.
        std::vector<std::complex<double>> rot(n_terms), step(n_terms);
        for (std::size_t row = 0; row < rows; ++row) {
            const std::size_t row_base = row * inner_span;
            const Vec& w0 = scan.displacement[row_base];
            for (std::size_t j = 0; j < n_terms; ++j) {
                double phase = 0.0, dstep = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i) {
                    phase += freqs[j][i] * (y[i] - w0[i]);
                    if (inner_span > 1)
                        dstep += freqs[j][i] *
                                 (scan.displacement[row_base + 1][i] - w0[i]);
                }
                rot[j] = coeffs[j] * std::polar(1.0, kTwoPi * phase);
                step[j] = std::polar(1.0, -kTwoPi * dstep);
            }
            for (std::size_t k = 0; k < inner_span; ++k) {
                const std::size_t f = row_base + k;
                if (std::isfinite(scan.cost[f])) {
                    double re = 0.0;
                    for (std::size_t j = 0; j < n_terms; ++j) re += rot[j].real();
                    const double val = re + scan.cost[f];
                    if (!found || val < best) {
                        best = val;
                        best_flat = f;
                        found = true;
                    } else if (val == best) {
                        const Vec y_new = y - scan.displacement[f];
                        const Vec y_old = y - scan.displacement[best_flat];
                        if (lex_less(y_new, y_old)) best_flat = f;
                    }
                }
                for (std::size_t j = 0; j < n_terms; ++j) rot[j] *= step[j];
            }
        }
        if (!found)
            throw numerical_failure("torus hopf_lax: no candidate hit the conjugate domain");
        if (edge_hit) *edge_hit = scan.grid.on_edge(best_flat);
        return best;
    }
};

} // namespace

double torus_hopf_lax_point(const TrigPolynomial& v0, const ConjugateOracle& hstar,
                            double t, const Vec& y, const HopfLaxOptions& opts)
{
    if (!(t > 0.0)) throw invalid_input("torus hopf_lax: t must be positive");
    const double y_step = opts.y_step > 0.0 ? opts.y_step : 1.0 / 1024.0;
    const double hc = y_step / t;
    const double osc = opts.osc_bound > 0.0 ? opts.osc_bound : 2.0 * v0.sup_norm_bound();
    double rc = opts.radius > 0.0 ? opts.radius / t : auto_coef_radius(hstar, t, osc, hc);
    if (hstar.bounded) rc = std::min(rc, hstar.coef_radius + hc);

    for (int attempt = 0;; ++attempt) {
        TorusScanner scanner;
        scanner.prepare(v0, hstar, t, rc, hc);
        bool edge = false;
        const double val = scanner.minimize(y, &edge);
        const bool covered = hstar.bounded && rc >= hstar.coef_radius;
        if (!edge || covered) return val;
        if (attempt >= opts.max_doublings)
            throw numerical_failure("torus hopf_lax: unresolved minimizer");
        rc *= 2.0;
    }
}

SolutionField torus_hopf_lax_field(const TrigPolynomial& v0, const ConjugateOracle& hstar,
                                   double t, const std::vector<std::size_t>& res,
                                   const HopfLaxOptions& opts)
{
    if (!(t > 0.0)) throw invalid_input("torus hopf_lax: t must be positive");
    if (res.size() != v0.dim() || res.size() != hstar.dim)
        throw invalid_input("torus hopf_lax: resolution/dimension mismatch");
    for (auto r : res)
        if (r < 2) throw invalid_input("torus hopf_lax: resolution must be >= 2");

    double h = kInf;
    for (auto r : res) h = std::min(h, 1.0 / double(r));
    HopfLaxOptions local = opts;
    if (local.y_step <= 0.0) local.y_step = h;
    const double hc = local.y_step / t;
    const double osc = local.osc_bound > 0.0 ? local.osc_bound : 2.0 * v0.sup_norm_bound();
    double rc = local.radius > 0.0 ? local.radius / t : auto_coef_radius(hstar, t, osc, hc);
    if (hstar.bounded) rc = std::min(rc, hstar.coef_radius + hc);

    SolutionField field;
    field.t = t;
    field.provenance = Provenance::hopf_lax;
    field.periodic = true;
    field.torus_res = res;

    for (int attempt = 0;; ++attempt) {
        TorusScanner scanner;
        scanner.prepare(v0, hstar, t, rc, hc);
        field.values.assign(field.count(), 0.0);
        bool any_edge = false;
        for (std::size_t f = 0; f < field.values.size(); ++f) {
            bool edge = false;
            field.values[f] = scanner.minimize(field.point(f), &edge);
            any_edge |= edge;
        }
        const bool covered = hstar.bounded && rc >= hstar.coef_radius;
        if (!any_edge || covered) return field;
        if (attempt >= local.max_doublings)
            throw numerical_failure("torus hopf_lax: unresolved minimizer");
        rc *= 2.0;
    }
}

} // namespace hjd
