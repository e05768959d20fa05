#include "hjdecay/nondegeneracy.hpp"

#include <algorithm>

namespace hjd {

LinearityResult is_linear_near_zero(const Hamiltonian& H, const Vec& xi, double delta,
                                    std::size_t grid_count)
{
    if (xi.size() != H.dim()) throw invalid_input("is_linear_near_zero: dimension mismatch");
    if (norm_inf(xi) == 0.0) throw invalid_input("is_linear_near_zero: xi must be nonzero");
    if (!(delta > 0.0)) throw invalid_input("is_linear_near_zero: delta must be positive");
    if (grid_count < 9 || grid_count % 2 == 0)
        throw invalid_input("is_linear_near_zero: grid_count must be odd and >= 9");

    std::vector<double> g(grid_count);
    double gmax = 0.0;
    for (std::size_t i = 0; i < grid_count; ++i) {
        const double s = -delta + 2.0 * delta * double(i) / double(grid_count - 1);
        g[i] = H(s * xi);
        gmax = std::max(gmax, std::abs(g[i]));
    }
    const double alpha = (g.back() - g.front()) / (2.0 * delta);
    const double mid = 0.5 * (g.back() + g.front());
    double dev = 0.0;
    for (std::size_t i = 0; i < grid_count; ++i) {
        const double s = -delta + 2.0 * delta * double(i) / double(grid_count - 1);
        dev = std::max(dev, std::abs(g[i] - (mid + alpha * s)));
    }
    LinearityResult res;
    res.alpha = alpha;
    res.deviation = dev;
    res.linear = dev <= 1e-10 * std::max(1.0, gmax);
    return res;
}

NDReport check_nd(const Hamiltonian& H, const FrequencyModule& M0, std::size_t K,
                  double delta, std::size_t grid_count)
{
    if (K < 1) throw invalid_input("check_nd: K must be >= 1");
    if (H.dim() != M0.dim) throw invalid_input("check_nd: hamiltonian/module dimension mismatch");
    const std::size_t m = M0.rank();

    NDReport report;
    report.bound_K = K;
    report.delta = delta;
    report.grid_count = grid_count;

    std::vector<std::int64_t> k(m, -std::int64_t(K));
    const std::int64_t lo = -std::int64_t(K), hi = std::int64_t(K);
    while (true) {
        bool nonzero = false, canonical = false;
        for (std::size_t j = 0; j < m; ++j) {
            if (k[j] != 0) {
                nonzero = true;
                canonical = k[j] > 0; // first nonzero coordinate positive
                break;
            }
        }
        if (nonzero && canonical) {
            const FrequencyVector xi_exact = M0.element(k);
            const Vec xi = xi_exact.shadow();
            const LinearityResult lin = is_linear_near_zero(H, xi, delta, grid_count);
            if (lin.linear)
                report.witnesses.push_back({k, xi_exact, xi, lin.alpha, delta});
        }
        // lexicographic increment
        std::size_t j = m;
        while (j-- > 0) {
            if (k[j] < hi) {
                ++k[j];
                break;
            }
            k[j] = lo;
            if (j == 0) { j = std::size_t(-1); break; }
        }
        if (j == std::size_t(-1)) break;
    }

    report.satisfied_up_to_bound = report.witnesses.empty();
    return report;
}

double TravelingWave::value(double t, const Vec& x) const
{
    return amplitude() * std::sin(2.0 * M_PI * (dot(xi, x) - alpha * t));
}

Vec TravelingWave::grad_x(double t, const Vec& x) const
{
    const double s = delta * std::cos(2.0 * M_PI * (dot(xi, x) - alpha * t));
    return s * xi;
}

double TravelingWave::dt(double t, const Vec& x) const
{
    return -alpha * delta * std::cos(2.0 * M_PI * (dot(xi, x) - alpha * t));
}

TravelingWave counterexample_solution(const Hamiltonian& H, const Vec& xi, double alpha,
                                      double delta)
{
    const LinearityResult lin = is_linear_near_zero(H, xi, delta);
    if (!lin.linear)
        throw invalid_input("counterexample_solution: H is not linear along xi on the segment");
    if (std::abs(lin.alpha - alpha) > 1e-9 * std::max(1.0, std::abs(alpha)))
        throw invalid_input("counterexample_solution: alpha does not match the chord slope");
    return TravelingWave{xi, alpha, delta};
}

TrigPolynomial counterexample_initial_data(const FrequencyVector& xi, double delta)
{
    TrigPolynomial u0(xi.dim(), xi.basis());
    u0.add_sin(xi, delta / (2.0 * M_PI));
    return u0;
}

} // namespace hjd
