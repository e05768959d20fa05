#pragma once

#include "hjdecay/rational.hpp"

#include <complex>
#include <map>
#include <memory>

namespace hjd {

/// Declared real "base generators" g_1..g_r for frequency coordinates.
/// g_1 is always 1; the others are symbolic tokens with a float shadow for
/// evaluation. Their rational independence is a user contract, not verified.
class GeneratorBasis {
public:
    static std::shared_ptr<const GeneratorBasis> make(std::vector<std::string> names);
    /// Just {"1"} — for plain periodic data and torus polynomials.
    static std::shared_ptr<const GeneratorBasis> rational_only();

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    double value(std::size_t i) const { return values_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    static double resolve(const std::string& name);

private:
    std::vector<std::string> names_;
    std::vector<double> values_;
};

/// Frequency vector in R^n whose coordinates are exact rational combinations
/// of the declared base generators. Zero test, equality and integer linear
/// combinations are exact.
class FrequencyVector {
public:
    FrequencyVector(std::shared_ptr<const GeneratorBasis> basis, std::size_t dim);
    FrequencyVector(std::shared_ptr<const GeneratorBasis> basis, std::size_t dim,
                    std::vector<Rational> coeffs); // coeffs[axis * r + gen]

    std::size_t dim() const { return dim_; }
    const std::shared_ptr<const GeneratorBasis>& basis() const { return basis_; }
    const Rational& coeff(std::size_t axis, std::size_t gen) const;
    Rational& coeff(std::size_t axis, std::size_t gen);
    const std::vector<Rational>& raw() const { return coeffs_; }

    bool is_zero() const;
    FrequencyVector negated() const;
    FrequencyVector plus_scaled(const FrequencyVector& other, std::int64_t k) const;

    /// Float shadow: per-axis real value sum_g coeff * g.
    Vec shadow() const;

    friend bool operator==(const FrequencyVector& a, const FrequencyVector& b);
    friend bool operator<(const FrequencyVector& a, const FrequencyVector& b);

    std::string str() const;

private:
    void check_compatible(const FrequencyVector& other) const;

    std::shared_ptr<const GeneratorBasis> basis_;
    std::size_t dim_ = 0;
    std::vector<Rational> coeffs_;
};

/// Finite real trigonometric polynomial  sum a_lambda e^{2 pi i lambda.x}.
/// Stored terms satisfy a_{-lambda} = conj(a_lambda) and carry no zero
/// coefficients, so the stored keys are exactly the spectrum.
class TrigPolynomial {
public:
    using Coeff = std::complex<double>;

    TrigPolynomial(std::size_t dim, std::shared_ptr<const GeneratorBasis> basis);

    /// Validating constructor from raw terms (e.g. deserialization).
    static TrigPolynomial from_terms(std::size_t dim,
                                     std::shared_ptr<const GeneratorBasis> basis,
                                     std::vector<std::pair<FrequencyVector, Coeff>> terms);

    // Real-form builders; each inserts a conjugate-symmetric pair.
    void add_const(double c);
    void add_cos(const FrequencyVector& freq, double amplitude);
    void add_sin(const FrequencyVector& freq, double amplitude);

    std::size_t dim() const { return dim_; }
    const std::shared_ptr<const GeneratorBasis>& generator_basis() const { return basis_; }
    const std::map<FrequencyVector, Coeff>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    /// Spectrum Sp(u) = stored frequencies (includes 0 when the mean is nonzero).
    std::vector<FrequencyVector> spectrum() const;

    double eval(const Vec& x) const;

    /// Bohr mean: the coefficient of the zero frequency, exactly.
    double mean_value() const;

    /// Trivial bounds: sup|u| <= sum |a|, Lip(u) <= 2 pi sum |lambda| |a|.
    double sup_norm_bound() const;
    double lipschitz_bound() const;

    TrigPolynomial negated() const;

    Coeff coefficient(const FrequencyVector& freq) const; // 0 when absent

private:
    void insert_raw(const FrequencyVector& f, Coeff a);

    std::size_t dim_ = 0;
    std::shared_ptr<const GeneratorBasis> basis_;
    std::map<FrequencyVector, Coeff> terms_;
};

/// Cube-average quadrature for the Bohr-Fourier coefficient over C_R
/// (tensor midpoint rule, 64 nodes per unit length). Converges to the stored
/// coefficient (or 0) as R grows.
std::complex<double> bohr_coefficient_numeric(const TrigPolynomial& u0,
                                              const FrequencyVector& lambda, double R);

struct BohrScanEntry {
    double R = 0.0;
    std::complex<double> value;
    double abs_error = 0.0; // against the exact stored coefficient
};
std::vector<BohrScanEntry> bohr_coefficient_scan(const TrigPolynomial& u0,
                                                 const FrequencyVector& lambda,
                                                 const std::vector<double>& R_list);

} // namespace hjd
