#pragma once

#include "hjdecay/nondegeneracy.hpp"
#include "hjdecay/solver.hpp"

namespace hjd {

struct CertificateOptions {
    double epsilon = 0.1;
    std::vector<double> t_table = {1, 2, 5, 10, 20, 50, 100};
    std::size_t max_shells = 4096;
    std::size_t empty_shell_limit = 8;  // consecutive all-rejected shells => stop
    std::size_t nd_bound = 10;          // for the recheck attached to budget errors
    double nd_delta = 0.25;
    std::size_t torus_min_res = 0;      // 0 -> default per dimension
};

/// Constructive decay bound: a delta-net of torus points drawn from the polar
/// set G of dH*(p0), the tabulated alpha(t) = max_k t H*(p0 + q_k / t), and
/// the envelope bound(t) = c + epsilon + alpha(t).
struct DecayCertificate {
    double epsilon = 0.0;
    Vec p0;
    Polytope subdiff_polytope; // dH*(p0) (of the coercified hamiltonian)
    double delta_net = 0.0;
    std::vector<Vec> net_q;
    std::vector<Vec> net_projected;
    std::vector<double> t_table;
    std::vector<double> alpha_table;
    std::vector<double> bound_table; // c + epsilon + alpha(t)
    double c = 0.0;                  // min of v0 over the torus
    std::size_t shells_scanned = 0;
};

struct CertificateResult {
    enum class Status { ok, budget_exhausted };
    Status status = Status::budget_exhausted;
    DecayCertificate certificate; // partially filled on budget exhaustion
    NDReport nd_recheck;          // populated on budget exhaustion
    std::string message;

    bool ok() const { return status == Status::ok; }
};

/// H is the torus hamiltonian (dimension = dim v0). Non-coercive inputs are
/// coercified at the Lipschitz scale of v0 before conjugation, which leaves
/// the certificate objects unchanged near the origin.
CertificateResult decay_certificate(const Hamiltonian& H, const TrigPolynomial& v0,
                                    const CertificateOptions& opts);

/// dH*(p0) as a polytope, with flat directions capped at box_halfwidth (the
/// Lipschitz-scale coercification radius). Supports quadratics of any rank
/// (point x kernel box), abs-linear hamiltonians, and any 1D hamiltonian
/// (interval by convex bisection).
Polytope conjugate_subdifferential(const Hamiltonian& H, const Vec& p0,
                                   double box_halfwidth);

} // namespace hjd
