#include "hjdecay/simplex.hpp"

#include <algorithm>

namespace hjd {
namespace {

struct Tableau {
    std::size_t m, n;        // rows, structural columns
    std::vector<double> t;   // m x (n+1), last column is rhs
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return t[i * (n + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return t[i * (n + 1) + j]; }
    double& rhs(std::size_t i) { return t[i * (n + 1) + n]; }
    double rhs(std::size_t i) const { return t[i * (n + 1) + n]; }

    void pivot(std::size_t pr, std::size_t pc)
    {
        const double inv = 1.0 / at(pr, pc);
        for (std::size_t j = 0; j <= n; ++j) at(pr, j) *= inv;
        at(pr, pc) = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double f = at(i, pc);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n; ++j) at(i, j) -= f * at(pr, j);
            at(i, pc) = 0.0;
        }
        basis[pr] = pc;
    }
};

// Minimize cost over the tableau with Bland's rule; cost given per structural
// column. Returns false if unbounded.
bool run_simplex(Tableau& tb, const Vec& cost, double tol)
{
    const std::size_t iter_cap = 20000 + 60 * (tb.m + tb.n);
    for (std::size_t iter = 0; iter < iter_cap; ++iter) {
        // reduced costs: r_j = c_j - c_B . B^{-1} A_j  (tableau already holds B^{-1}A)
        std::size_t enter = tb.n;
        for (std::size_t j = 0; j < tb.n; ++j) {
            double r = cost[j];
            for (std::size_t i = 0; i < tb.m; ++i) r -= cost[tb.basis[i]] * tb.at(i, j);
            if (r < -tol) { enter = j; break; } // Bland: first eligible index
        }
        if (enter == tb.n) return true; // optimal

        std::size_t leave = tb.m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < tb.m; ++i) {
            const double a = tb.at(i, enter);
            if (a > tol) {
                const double ratio = tb.rhs(i) / a;
                if (leave == tb.m || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && tb.basis[i] < tb.basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == tb.m) return false; // unbounded
        tb.pivot(leave, enter);
    }
    throw numerical_failure("simplex iteration cap exceeded");
}

} // namespace

LpResult solve_lp(const LpProblem& p)
{
    const std::size_t m = p.A.rows, n = p.A.cols;
    if (p.b.size() != m || p.c.size() != n) throw invalid_input("solve_lp: shape mismatch");

    double scale = 1.0;
    for (double v : p.A.a) scale = std::max(scale, std::abs(v));
    for (double v : p.b) scale = std::max(scale, std::abs(v));
    const double tol = 1e-10 * scale;

    Tableau tb;
    tb.m = m;
    tb.n = n + m; // structural + artificial
    tb.t.assign(m * (tb.n + 1), 0.0);
    tb.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double sgn = p.b[i] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tb.at(i, j) = sgn * p.A(i, j);
        tb.at(i, n + i) = 1.0;
        tb.rhs(i) = sgn * p.b[i];
        tb.basis[i] = n + i;
    }

    // Phase 1: minimize the artificial total.
    Vec cost1(tb.n, 0.0);
    for (std::size_t j = n; j < tb.n; ++j) cost1[j] = 1.0;
    run_simplex(tb, cost1, tol);

    double art_total = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] >= n) art_total += tb.rhs(i);
    LpResult out;
    if (art_total > 1e-7 * scale) {
        out.status = LpResult::Status::infeasible;
        return out;
    }
    // Drive any remaining zero-level artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        std::size_t j = 0;
        for (; j < n; ++j)
            if (std::abs(tb.at(i, j)) > tol) break;
        if (j < n) tb.pivot(i, j);
        // else: redundant row; harmless to leave in place at zero level
    }

    // Phase 2 with artificials locked out via prohibitive cost.
    Vec cost2(tb.n, 0.0);
    double cmax = 1.0;
    for (double v : p.c) cmax = std::max(cmax, std::abs(v));
    for (std::size_t j = 0; j < n; ++j) cost2[j] = p.c[j];
    for (std::size_t j = n; j < tb.n; ++j) cost2[j] = 1e6 * cmax;
    if (!run_simplex(tb, cost2, tol * std::max(1.0, cmax))) {
        out.status = LpResult::Status::unbounded;
        return out;
    }

    out.status = LpResult::Status::optimal;
    out.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < n) out.x[tb.basis[i]] = tb.rhs(i);
    out.objective = dot(out.x, p.c);
    return out;
}

} // namespace hjd
