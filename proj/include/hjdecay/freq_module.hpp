#pragma once

#include "hjdecay/hamiltonian.hpp"
#include "hjdecay/trigpoly.hpp"

#include <optional>

namespace hjd {

/// Free abelian group generated by a finite spectrum, with a canonical basis
/// extracted by Hermite normal form over the integers (exact arithmetic).
struct FrequencyModule {
    std::shared_ptr<const GeneratorBasis> gens;
    std::size_t dim = 0;                       // ambient spatial dimension n
    std::vector<FrequencyVector> generators;   // deduplicated nonzero input spectrum
    std::vector<FrequencyVector> basis;        // lambda_1..lambda_m
    std::vector<std::vector<std::int64_t>> generator_coords; // per generator, in basis

    std::size_t rank() const { return basis.size(); }

    /// Exact membership + integer coordinates in the basis; nullopt when the
    /// frequency is outside the module.
    std::optional<std::vector<std::int64_t>> coordinates_of(const FrequencyVector& f) const;

    /// Combine basis elements with integer coefficients (exact).
    FrequencyVector element(const std::vector<std::int64_t>& k) const;

    /// The standard lattice Z^m over the rational-only generator basis.
    static FrequencyModule integer_lattice(std::size_t m);

    // internal exact representation of the lattice
    std::vector<std::vector<std::int64_t>> hnf; // staircase basis rows, scaled by D
    std::int64_t denominator = 1;
};

/// Basis extraction for a nonzero spectrum (zero frequency excluded by the caller).
FrequencyModule module_basis(const std::vector<FrequencyVector>& spectrum);

/// Lift of quasi-periodic data to a periodic function on the m-torus:
/// u0(x) = torus_poly(Lambda x), rows of Lambda are the basis float shadows.
struct LiftMap {
    Mat lambda; // m x n
    std::vector<FrequencyVector> exact_basis;
    TrigPolynomial torus_poly;
};

/// Requires Sp(u0) within the module (exact check; offending frequency reported).
LiftMap build_lift(const TrigPolynomial& u0, const FrequencyModule& M0);

/// H_tilde(w) = H(Lambda^T w) for symbolic variants; rejects sampled carriers.
Hamiltonian lifted_hamiltonian(const Hamiltonian& H, const Mat& lambda);

} // namespace hjd
