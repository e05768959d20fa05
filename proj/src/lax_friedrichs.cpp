#include "hjdecay/lax_friedrichs.hpp"

#include <algorithm>

namespace hjd {

std::vector<double> sample_torus(const std::function<double(const Vec&)>& f,
                                 const std::vector<std::size_t>& res)
{
    std::size_t total = 1;
    for (auto r : res) total *= r;
    std::vector<double> out(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        Vec x(res.size());
        std::size_t rem = flat;
        for (std::size_t d = res.size(); d-- > 0;) {
            x[d] = double(rem % res[d]) / double(res[d]);
            rem /= res[d];
        }
        out[flat] = f(x);
    }
    return out;
}

SolutionField lax_friedrichs_evolve(const std::vector<double>& u0_samples,
                                    const std::vector<std::size_t>& res,
                                    const Hamiltonian& H, double t_final,
                                    const LaxFriedrichsOptions& opts)
{
    if (!(opts.cfl > 0.0 && opts.cfl <= 1.0))
        throw invalid_input("lax_friedrichs: cfl must lie in (0, 1]");
    if (res.empty() || res.size() > 2 || res.size() != H.dim())
        throw invalid_input("lax_friedrichs: periodic grids in 1D or 2D only");
    if (!(t_final >= 0.0)) throw invalid_input("lax_friedrichs: t_final must be >= 0");
    std::size_t total = 1;
    for (auto r : res) {
        if (r < 4) throw invalid_input("lax_friedrichs: resolution must be >= 4");
        total *= r;
    }
    if (u0_samples.size() != total)
        throw invalid_input("lax_friedrichs: sample count does not match grid");

    const std::size_t n = res.size();
    const std::size_t nx = res[0];
    const std::size_t ny = n == 2 ? res[1] : 1;
    const double hx = 1.0 / double(nx);
    const double hy = 1.0 / double(ny);

    // slope box from the initial data; the viscosity solution stays inside it
    Vec lo(n, 0.0), hi(n, 0.0);
    auto at = [&](std::size_t i, std::size_t j) { return u0_samples[i * ny + j]; };
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const double dx = (at((i + 1) % nx, j) - at(i, j)) / hx;
            lo[0] = std::min(lo[0], dx);
            hi[0] = std::max(hi[0], dx);
            if (n == 2) {
                const double dy = (at(i, (j + 1) % ny) - at(i, j)) / hy;
                lo[1] = std::min(lo[1], dy);
                hi[1] = std::max(hi[1], dy);
            }
        }
    for (std::size_t d = 0; d < n; ++d) {
        const double pad = opts.viscosity_pad * std::max(1e-6, std::max(-lo[d], hi[d]));
        lo[d] = -pad;
        hi[d] = pad;
    }
    const Vec sigma = H.slope_bound_box(lo, hi);

    double rate = 0.0;
    rate += std::max(sigma[0], 1e-12) / hx;
    if (n == 2) rate += std::max(sigma[1], 1e-12) / hy;
    const double dt_max = opts.cfl / rate;

    std::vector<double> u = u0_samples, unew(total);
    double t = 0.0;
    Vec grad(n, 0.0);
    while (t < t_final - 1e-14) {
        const double dt = std::min(dt_max, t_final - t);
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t ip = (i + 1) % nx, im = (i + nx - 1) % nx;
            for (std::size_t j = 0; j < ny; ++j) {
                const std::size_t jp = (j + 1) % ny, jm = (j + ny - 1) % ny;
                const double here = u[i * ny + j];
                const double right = u[ip * ny + j], left = u[im * ny + j];
                grad[0] = (right - left) / (2.0 * hx);
                double visc = 0.5 * sigma[0] * (right - 2.0 * here + left) / hx;
                if (n == 2) {
                    const double up = u[i * ny + jp], down = u[i * ny + jm];
                    grad[1] = (up - down) / (2.0 * hy);
                    visc += 0.5 * sigma[1] * (up - 2.0 * here + down) / hy;
                }
                unew[i * ny + j] = here - dt * (H(grad) - visc);
            }
        }
        u.swap(unew);
        t += dt;
    }

    SolutionField field;
    field.t = t_final;
    field.provenance = Provenance::finite_difference;
    field.periodic = true;
    field.torus_res = res;
    field.values = std::move(u);
    return field;
}

} // namespace hjd
