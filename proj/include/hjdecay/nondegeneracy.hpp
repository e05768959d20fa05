#pragma once

#include "hjdecay/freq_module.hpp"

namespace hjd {

struct LinearityResult {
    bool linear = false;
    double alpha = 0.0;     // chord slope (g(delta) - g(-delta)) / (2 delta)
    double deviation = 0.0; // max |g - chord| over the sample grid
};

/// Chord test for linearity of s -> H(s xi) on [-delta, delta]. For convex H
/// the chord through the endpoints dominates; coincidence at the interior
/// sample points is exact linearity detection on the sampled hull.
LinearityResult is_linear_near_zero(const Hamiltonian& H, const Vec& xi, double delta,
                                    std::size_t grid_count = 33);

struct NDWitness {
    std::vector<std::int64_t> k; // coordinates in the module basis
    FrequencyVector xi_exact;
    Vec xi; // float shadow
    double alpha = 0.0;
    double delta = 0.0;
};

/// Finite certificate for the non-degeneracy condition: a clean sweep proves
/// it only up to the enumeration bound, which the report always discloses.
struct NDReport {
    bool satisfied_up_to_bound = false;
    std::size_t bound_K = 0;
    double delta = 0.0;
    std::size_t grid_count = 0;
    std::vector<NDWitness> witnesses; // lexicographic in k, canonical sign
};

/// Enumerates xi = sum k_j lambda_j over 0 < |k|_inf <= K modulo sign
/// (canonical representative: first nonzero k_j positive).
NDReport check_nd(const Hamiltonian& H, const FrequencyModule& M0, std::size_t K,
                  double delta, std::size_t grid_count = 33);

/// The explicit non-decaying solution available when the condition fails:
/// u(t,x) = (delta / 2 pi) sin(2 pi (xi.x - alpha t)).
struct TravelingWave {
    Vec xi;
    double alpha = 0.0;
    double delta = 0.0;

    double amplitude() const { return delta / (2.0 * M_PI); }
    double value(double t, const Vec& x) const;
    Vec grad_x(double t, const Vec& x) const;
    double dt(double t, const Vec& x) const;
};

/// Verifies the linearity precondition H(s xi) = alpha s on [-delta, delta]
/// before constructing the wave; rejects otherwise.
TravelingWave counterexample_solution(const Hamiltonian& H, const Vec& xi, double alpha,
                                      double delta);

/// Initial slice with exact frequency bookkeeping: (delta/2pi) sin(2pi xi.x).
TrigPolynomial counterexample_initial_data(const FrequencyVector& xi, double delta);

} // namespace hjd
