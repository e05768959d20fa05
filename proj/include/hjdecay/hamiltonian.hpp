#pragma once

#include "hjdecay/linalg.hpp"
#include "hjdecay/polytope.hpp"
#include "hjdecay/sampled.hpp"

#include <memory>
#include <variant>

namespace hjd {

struct AffinePiece {
    Vec slope;
    double offset = 0.0;
};

/// Symbolic description of a convex hamiltonian H on R^n. Every variant is a
/// finite continuous convex function; quadratic matrices are validated PSD at
/// construction, sampled carriers must be convex with a full effective domain.
class Hamiltonian {
public:
    struct Quadratic { Mat Q; };                       // H(v) = v.Qv/2
    struct MaxAffine { std::vector<AffinePiece> pieces; };
    struct AbsLinear { Vec direction; };               // H(v) = |direction.v|
    struct Sum { std::vector<Hamiltonian> terms; };
    struct Sampled { SampledConvex table; };

    static Hamiltonian quadratic(Mat Q);
    static Hamiltonian max_affine(std::vector<AffinePiece> pieces);
    static Hamiltonian abs_linear(Vec direction);
    static Hamiltonian sum(std::vector<Hamiltonian> terms);
    static Hamiltonian sampled(SampledConvex table);

    std::size_t dim() const { return dim_; }

    double operator()(const Vec& v) const;

    bool is_quadratic() const { return std::holds_alternative<Quadratic>(*node_); }
    bool is_max_affine() const { return std::holds_alternative<MaxAffine>(*node_); }
    bool is_abs_linear() const { return std::holds_alternative<AbsLinear>(*node_); }
    bool is_sum() const { return std::holds_alternative<Sum>(*node_); }
    bool is_sampled() const { return std::holds_alternative<Sampled>(*node_); }

    const Quadratic& as_quadratic() const { return std::get<Quadratic>(*node_); }
    const MaxAffine& as_max_affine() const { return std::get<MaxAffine>(*node_); }
    const AbsLinear& as_abs_linear() const { return std::get<AbsLinear>(*node_); }
    const Sum& as_sum() const { return std::get<Sum>(*node_); }
    const Sampled& as_sampled() const { return std::get<Sampled>(*node_); }

    /// H(0) == 0 within 1e-12.
    bool is_normalized() const;

    /// Per-axis bound on |dH/dv_d| over the box [lo, hi]; exact for symbolic
    /// variants, slope-range based for sampled ones.
    Vec slope_bound_box(const Vec& lo, const Vec& hi) const;

    /// Superlinear growth proxy: true for positive-definite quadratics and
    /// sums containing one.
    bool is_coercive() const;

    std::string kind_name() const;

private:
    using Node = std::variant<Quadratic, MaxAffine, AbsLinear, Sum, Sampled>;
    std::shared_ptr<const Node> node_;
    std::size_t dim_ = 0;
};

/// Value of the Legendre conjugate H*(p); `finite == false` encodes +infinity.
struct ConjugateValue {
    bool finite = true;
    double value = 0.0;
};

/// Closed-form conjugate for quadratic (positive definite), abs-linear and
/// max-affine variants.
ConjugateValue conjugate_symbolic(const Hamiltonian& H, const Vec& p);

struct SubdifferentialResult {
    Polytope polytope;
    bool approximate = false; // set for sampled variants (slope-hull estimate)
};

/// Exact vertex representation of dH(v0) for symbolic variants; sampled
/// variants get a per-axis slope box flagged approximate.
SubdifferentialResult subdifferential_at(const Hamiltonian& H, const Vec& v0);

/// Remark-style coercification: returns Sum(H, hinge) equal to H on
/// |v|_inf <= L with steeply escalating max-affine growth outside.
Hamiltonian coercify(const Hamiltonian& H, double L);

struct DirectionalLimitEntry {
    double t = 0.0;
    double value = 0.0;     // t * Hstar(p0 + q/t)
    bool in_domain = true;
};

/// Tabulates t * Hstar(p0 + q/t); for convex Hstar with Hstar(p0) = 0 the
/// sequence is non-increasing and converges to the support function of
/// dHstar(p0) in direction q.
std::vector<DirectionalLimitEntry>
directional_limit_check(const std::function<double(const Vec&)>& hstar, const Vec& p0,
                        const Vec& q, const std::vector<double>& t_list);

} // namespace hjd
