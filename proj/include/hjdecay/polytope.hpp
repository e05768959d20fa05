#pragma once

#include "hjdecay/grid.hpp"
#include "hjdecay/simplex.hpp"

namespace hjd {

/// Vertex-represented convex compact set. The stored vertex list is
/// irredundant: no vertex lies in the hull of the others.
class Polytope {
public:
    /// Build from an arbitrary point cloud; duplicates and non-extreme points
    /// are pruned.
    static Polytope from_points(std::vector<Vec> points);

    /// Points are trusted to be extreme already (no pruning pass).
    static Polytope from_vertices_unchecked(std::vector<Vec> vertices);

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }

    /// sup over the set of q.v — equals max over vertices.
    double support(const Vec& q) const;

    /// Hull membership, boundary inclusive up to solver tolerance.
    bool contains(const Vec& x) const;

    /// Euclidean distance from x to the set (0 if inside).
    double distance(const Vec& x) const;

    /// The unique minimal-Euclidean-norm element (projection of the origin).
    Vec minimal_norm_point() const;

    Polytope translated(const Vec& shift) const;
    Polytope scaled(double factor) const;

    friend Polytope minkowski_sum(const Polytope& a, const Polytope& b);

private:
    std::size_t dim_ = 0;
    std::vector<Vec> vertices_;
};

/// Membership query against the epsilon-polar of a base polytope:
/// p belongs to G = { p : p.v <= epsilon for all v in base }.
struct PolarSetQuery {
    Polytope base;
    double epsilon = 0.0;

    PolarSetQuery(Polytope b, double eps) : base(std::move(b)), epsilon(eps)
    {
        if (!(eps > 0.0)) throw invalid_input("polar query needs epsilon > 0");
    }
};

bool polar_membership(const PolarSetQuery& query, const Vec& p);

/// Test-harness verification of the bipolar identity on a probe grid:
/// v in base  <=>  p.v <= epsilon for every sampled extreme p of the polar.
struct BipolarReport {
    bool pass = false;
    double worst_inside_margin = 0.0;   // max over inside probes of sup_p p.v - eps
    double worst_outside_distance = 0.0; // max dist(v, base) over accepted outside probes
    std::size_t inside_count = 0;
    std::size_t outside_count = 0;
    std::size_t false_rejects = 0; // inside probe failing a polar constraint
    double cell_tolerance = 0.0;
};

BipolarReport bipolar_check(const Polytope& base, double epsilon, const GridN& probe_grid);

/// Deterministic unit direction sample for support-based sweeps (n <= 3).
std::vector<Vec> direction_sample(std::size_t dim, std::size_t count);

} // namespace hjd
