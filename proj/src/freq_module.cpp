#include "hjdecay/freq_module.hpp"

#include <algorithm>

namespace hjd {
namespace {

using Row = std::vector<std::int64_t>;

std::int64_t checked_i64(__int128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw numerical_failure("integer overflow in lattice arithmetic");
    return std::int64_t(v);
}

void row_axpy(Row& target, const Row& src, std::int64_t factor)
{
    for (std::size_t i = 0; i < target.size(); ++i)
        target[i] = checked_i64(__int128(target[i]) - __int128(factor) * src[i]);
}

// Row-style Hermite normal form: returns the nonzero staircase rows with
// positive pivots and entries above each pivot reduced into [0, pivot).
std::vector<Row> hermite_normal_form(std::vector<Row> m)
{
    if (m.empty()) return {};
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
        // gcd elimination below row r in this column
        while (true) {
            std::size_t piv = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][col] != 0 &&
                    (piv == m.size() || std::abs(m[i][col]) < std::abs(m[piv][col])))
                    piv = i;
            if (piv == m.size()) break; // column clear below
            std::swap(m[r], m[piv]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                const std::int64_t q = m[i][col] / m[r][col];
                row_axpy(m[i], m[r], q);
                if (m[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[r][col] == 0) continue;
        if (m[r][col] < 0)
            for (auto& v : m[r]) v = -v;
        // canonical reduction above the pivot
        for (std::size_t i = 0; i < r; ++i) {
            std::int64_t q = m[i][col] / m[r][col];
            if (m[i][col] - q * m[r][col] < 0) q -= 1; // floor division
            if (q != 0) row_axpy(m[i], m[r], q);
        }
        ++r;
    }
    m.resize(r);
    return m;
}

std::size_t pivot_col(const Row& row)
{
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) return i;
    return row.size();
}

// Exact solve of k.B = target over the staircase basis; nullopt when target
// is outside the generated lattice.
std::optional<std::vector<std::int64_t>> lattice_coordinates(const std::vector<Row>& basis,
                                                             Row target)
{
    std::vector<std::int64_t> k(basis.size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const std::size_t pc = pivot_col(basis[j]);
        if (pc == target.size()) return std::nullopt;
        // columns before this pivot must already be clear
        for (std::size_t c = 0; c < pc; ++c)
            if (target[c] != 0) return std::nullopt;
        if (target[pc] % basis[j][pc] != 0) return std::nullopt;
        k[j] = target[pc] / basis[j][pc];
        row_axpy(target, basis[j], k[j]);
    }
    for (auto v : target)
        if (v != 0) return std::nullopt;
    return k;
}

} // namespace

std::optional<std::vector<std::int64_t>>
FrequencyModule::coordinates_of(const FrequencyVector& f) const
{
    if (f.dim() != dim || f.basis().get() != gens.get())
        throw invalid_input("coordinates_of: frequency over a different basis");
    Row target(f.raw().size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        const Rational scaled = f.raw()[i] * Rational(denominator);
        if (scaled.den() != 1) return std::nullopt;
        target[i] = scaled.num();
    }
    return lattice_coordinates(hnf, std::move(target));
}

FrequencyVector FrequencyModule::element(const std::vector<std::int64_t>& k) const
{
    if (k.size() != rank()) throw invalid_input("element: coordinate count mismatch");
    FrequencyVector acc(gens, dim);
    for (std::size_t j = 0; j < k.size(); ++j)
        if (k[j] != 0) acc = acc.plus_scaled(basis[j], k[j]);
    return acc;
}

FrequencyModule FrequencyModule::integer_lattice(std::size_t m)
{
    if (m == 0) throw invalid_input("integer_lattice: rank must be positive");
    auto gens = GeneratorBasis::rational_only();
    std::vector<FrequencyVector> spectrum;
    for (std::size_t j = 0; j < m; ++j) {
        FrequencyVector e(gens, m);
        e.coeff(j, 0) = Rational(1);
        spectrum.push_back(e);
    }
    return module_basis(spectrum);
}

FrequencyModule module_basis(const std::vector<FrequencyVector>& spectrum)
{
    if (spectrum.empty()) throw invalid_input("module_basis: empty spectrum");
    const auto gens = spectrum.front().basis();
    const std::size_t n = spectrum.front().dim();

    std::vector<FrequencyVector> generators;
    for (const auto& f : spectrum) {
        if (f.dim() != n || f.basis().get() != gens.get())
            throw invalid_input("module_basis: mixed frequency bases");
        if (f.is_zero()) continue;
        if (std::find(generators.begin(), generators.end(), f) == generators.end())
            generators.push_back(f);
    }
    if (generators.empty())
        throw invalid_input("module_basis: spectrum contains only the zero frequency");

    // common denominator over every rational coordinate
    std::int64_t D = 1;
    for (const auto& g : generators)
        for (const auto& c : g.raw()) D = lcm_checked(D, c.den());

    std::vector<Row> rows;
    for (const auto& g : generators) {
        Row r(g.raw().size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            const Rational scaled = g.raw()[i] * Rational(D);
            r[i] = scaled.num(); // exact: D kills the denominator
        }
        rows.push_back(std::move(r));
    }

    FrequencyModule mod;
    mod.gens = gens;
    mod.dim = n;
    mod.generators = generators;
    mod.denominator = D;
    mod.hnf = hermite_normal_form(std::move(rows));

    const std::size_t d = n * gens->size();
    for (const auto& row : mod.hnf) {
        std::vector<Rational> coeffs(d);
        for (std::size_t i = 0; i < d; ++i) coeffs[i] = Rational(row[i], D);
        mod.basis.emplace_back(gens, n, std::move(coeffs));
    }
    for (const auto& g : generators) {
        auto k = mod.coordinates_of(g);
        if (!k)
            throw numerical_failure("module_basis: generator not recovered from its own basis");
        mod.generator_coords.push_back(*k);
    }
    return mod;
}

LiftMap build_lift(const TrigPolynomial& u0, const FrequencyModule& M0)
{
    const std::size_t m = M0.rank();
    if (m == 0) throw invalid_input("build_lift: module has rank zero");

    auto torus_gens = GeneratorBasis::rational_only();
    TrigPolynomial v0(m, torus_gens);
    std::vector<std::pair<FrequencyVector, TrigPolynomial::Coeff>> torus_terms;
    for (const auto& [f, a] : u0.terms()) {
        const auto k = M0.coordinates_of(f);
        if (!k)
            throw invalid_input("build_lift: frequency " + f.str() +
                                " lies outside the module");
        FrequencyVector kf(torus_gens, m);
        for (std::size_t j = 0; j < m; ++j) kf.coeff(j, 0) = Rational((*k)[j]);
        torus_terms.emplace_back(kf, a);
    }

    LiftMap lift{Mat(m, u0.dim()), M0.basis,
                 TrigPolynomial::from_terms(m, torus_gens, std::move(torus_terms))};
    for (std::size_t j = 0; j < m; ++j) {
        const Vec row = M0.basis[j].shadow();
        for (std::size_t i = 0; i < u0.dim(); ++i) lift.lambda(j, i) = row[i];
    }
    return lift;
}

Hamiltonian lifted_hamiltonian(const Hamiltonian& H, const Mat& lambda)
{
    if (lambda.cols != H.dim())
        throw invalid_input("lifted_hamiltonian: Lambda columns must match dim H");
    if (H.is_quadratic()) {
        const Mat& Q = H.as_quadratic().Q;
        return Hamiltonian::quadratic(mat_mul(mat_mul(lambda, Q), lambda.transposed()));
    }
    if (H.is_abs_linear())
        return Hamiltonian::abs_linear(lambda.apply(H.as_abs_linear().direction));
    if (H.is_max_affine()) {
        std::vector<AffinePiece> pieces;
        for (const auto& pc : H.as_max_affine().pieces)
            pieces.push_back({lambda.apply(pc.slope), pc.offset});
        return Hamiltonian::max_affine(std::move(pieces));
    }
    if (H.is_sum()) {
        std::vector<Hamiltonian> terms;
        for (const auto& t : H.as_sum().terms) terms.push_back(lifted_hamiltonian(t, lambda));
        return Hamiltonian::sum(std::move(terms));
    }
    throw invalid_input("lifted_hamiltonian: sampled hamiltonians must be composed numerically");
}

} // namespace hjd
