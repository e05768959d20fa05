#pragma once

#include "hjdecay/linalg.hpp"

namespace hjd {

/// min c.x  subject to  A x = b, x >= 0.
struct LpProblem {
    Mat A;
    Vec b;
    Vec c;
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    double objective = 0.0;
    Vec x;

    bool feasible() const { return status != Status::infeasible; }
};

/// Dense two-phase simplex with Bland's rule. Sized for the desk-scale LPs in
/// this project (hull membership, max-affine conjugates): a handful of rows,
/// up to ~10^3 columns.
LpResult solve_lp(const LpProblem& p);

} // namespace hjd
