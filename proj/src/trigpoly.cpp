#include "hjdecay/trigpoly.hpp"

#include <algorithm>

namespace hjd {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

std::shared_ptr<const GeneratorBasis> GeneratorBasis::make(std::vector<std::string> names)
{
    if (names.empty() || names.front() != "1")
        throw invalid_input("generator basis must start with \"1\"");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw invalid_input("duplicate generator " + names[i]);
    auto b = std::make_shared<GeneratorBasis>();
    b->values_.reserve(names.size());
    for (const auto& n : names) b->values_.push_back(resolve(n));
    b->names_ = std::move(names);
    return b;
}

std::shared_ptr<const GeneratorBasis> GeneratorBasis::rational_only()
{
    static const std::shared_ptr<const GeneratorBasis> one = make({"1"});
    return one;
}

double GeneratorBasis::resolve(const std::string& name)
{
    if (name == "1") return 1.0;
    if (name == "pi") return M_PI;
    if (name == "e") return std::exp(1.0);
    if (name.rfind("sqrt", 0) == 0) {
        const std::string tail = name.substr(4);
        if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos)
            return std::sqrt(double(std::stoll(tail)));
    }
    throw invalid_input("unknown generator \"" + name +
                        "\" (supported: 1, sqrt<k>, pi, e)");
}

FrequencyVector::FrequencyVector(std::shared_ptr<const GeneratorBasis> basis, std::size_t dim)
    : basis_(std::move(basis)), dim_(dim), coeffs_(dim * basis_->size())
{
}

FrequencyVector::FrequencyVector(std::shared_ptr<const GeneratorBasis> basis, std::size_t dim,
                                 std::vector<Rational> coeffs)
    : basis_(std::move(basis)), dim_(dim), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != dim_ * basis_->size())
        throw invalid_input("frequency vector: wrong coefficient count");
}

const Rational& FrequencyVector::coeff(std::size_t axis, std::size_t gen) const
{
    return coeffs_[axis * basis_->size() + gen];
}

Rational& FrequencyVector::coeff(std::size_t axis, std::size_t gen)
{
    return coeffs_[axis * basis_->size() + gen];
}

bool FrequencyVector::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& r) { return r.is_zero(); });
}

FrequencyVector FrequencyVector::negated() const
{
    FrequencyVector out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

FrequencyVector FrequencyVector::plus_scaled(const FrequencyVector& other, std::int64_t k) const
{
    check_compatible(other);
    FrequencyVector out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out.coeffs_[i] = out.coeffs_[i] + other.coeffs_[i] * Rational(k);
    return out;
}

Vec FrequencyVector::shadow() const
{
    Vec x(dim_, 0.0);
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t g = 0; g < basis_->size(); ++g)
            x[a] += coeff(a, g).to_double() * basis_->value(g);
    return x;
}

void FrequencyVector::check_compatible(const FrequencyVector& other) const
{
    if (basis_.get() != other.basis_.get() || dim_ != other.dim_)
        throw invalid_input("frequency vectors over different bases");
}

bool operator==(const FrequencyVector& a, const FrequencyVector& b)
{
    a.check_compatible(b);
    return a.coeffs_ == b.coeffs_;
}

bool operator<(const FrequencyVector& a, const FrequencyVector& b)
{
    a.check_compatible(b);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] < b.coeffs_[i]) return true;
        if (b.coeffs_[i] < a.coeffs_[i]) return false;
    }
    return false;
}

std::string FrequencyVector::str() const
{
    std::string s = "(";
    for (std::size_t a = 0; a < dim_; ++a) {
        if (a) s += ", ";
        bool first = true;
        for (std::size_t g = 0; g < basis_->size(); ++g) {
            const Rational& c = coeff(a, g);
            if (c.is_zero()) continue;
            if (!first) s += " + ";
            s += c.str();
            if (g > 0) s += "*" + basis_->name(g);
            first = false;
        }
        if (first) s += "0";
    }
    return s + ")";
}

TrigPolynomial::TrigPolynomial(std::size_t dim, std::shared_ptr<const GeneratorBasis> basis)
    : dim_(dim), basis_(std::move(basis))
{
    if (dim_ == 0) throw invalid_input("trig polynomial: dimension must be positive");
}

TrigPolynomial TrigPolynomial::from_terms(std::size_t dim,
                                          std::shared_ptr<const GeneratorBasis> basis,
                                          std::vector<std::pair<FrequencyVector, Coeff>> terms)
{
    TrigPolynomial p(dim, std::move(basis));
    for (auto& [f, a] : terms) {
        if (f.dim() != dim || f.basis().get() != p.basis_.get())
            throw invalid_input("trig polynomial: term over a different basis");
        p.insert_raw(f, a);
    }
    // real-valuedness: a_{-lambda} = conj(a_lambda)
    for (const auto& [f, a] : p.terms_) {
        const Coeff mirror = p.coefficient(f.negated());
        if (std::abs(mirror - std::conj(a)) > 1e-12 * std::max(1.0, std::abs(a)))
            throw invalid_input("trig polynomial is not real-valued: asymmetric term at " +
                                f.str());
    }
    return p;
}

void TrigPolynomial::insert_raw(const FrequencyVector& f, Coeff a)
{
    auto it = terms_.find(f);
    if (it == terms_.end()) {
        if (a != Coeff(0.0, 0.0)) terms_.emplace(f, a);
    } else {
        it->second += a;
        if (it->second == Coeff(0.0, 0.0)) terms_.erase(it);
    }
}

void TrigPolynomial::add_const(double c)
{
    insert_raw(FrequencyVector(basis_, dim_), Coeff(c, 0.0));
}

void TrigPolynomial::add_cos(const FrequencyVector& freq, double amplitude)
{
    insert_raw(freq, Coeff(amplitude / 2.0, 0.0));
    insert_raw(freq.negated(), Coeff(amplitude / 2.0, 0.0));
}

void TrigPolynomial::add_sin(const FrequencyVector& freq, double amplitude)
{
    insert_raw(freq, Coeff(0.0, -amplitude / 2.0));
    insert_raw(freq.negated(), Coeff(0.0, amplitude / 2.0));
}

std::vector<FrequencyVector> TrigPolynomial::spectrum() const
{
    std::vector<FrequencyVector> sp;
    sp.reserve(terms_.size());
    for (const auto& [f, a] : terms_) sp.push_back(f);
    return sp;
}

double TrigPolynomial::eval(const Vec& x) const
{
    if (x.size() != dim_) throw invalid_input("trig eval: dimension mismatch");
    double re = 0.0;
    for (const auto& [f, a] : terms_) {
        const double phase = kTwoPi * dot(f.shadow(), x);
        re += a.real() * std::cos(phase) - a.imag() * std::sin(phase);
    }
    return re;
}

double TrigPolynomial::mean_value() const
{
    return coefficient(FrequencyVector(basis_, dim_)).real();
}

double TrigPolynomial::sup_norm_bound() const
{
    double s = 0.0;
    for (const auto& [f, a] : terms_) s += std::abs(a);
    return s;
}

double TrigPolynomial::lipschitz_bound() const
{
    double s = 0.0;
    for (const auto& [f, a] : terms_) s += norm2(f.shadow()) * std::abs(a);
    return kTwoPi * s;
}

TrigPolynomial TrigPolynomial::negated() const
{
    TrigPolynomial out(dim_, basis_);
    for (const auto& [f, a] : terms_) out.terms_.emplace(f, -a);
    return out;
}

TrigPolynomial::Coeff TrigPolynomial::coefficient(const FrequencyVector& freq) const
{
    auto it = terms_.find(freq);
    return it == terms_.end() ? Coeff(0.0, 0.0) : it->second;
}

std::complex<double> bohr_coefficient_numeric(const TrigPolynomial& u0,
                                              const FrequencyVector& lambda, double R)
{
    if (!(R > 0.0)) throw invalid_input("bohr coefficient: R must be positive");
    if (lambda.dim() != u0.dim()) throw invalid_input("bohr coefficient: dimension mismatch");
    const std::size_t n = u0.dim();
    const std::size_t nodes = std::max<std::size_t>(8, std::size_t(std::llround(64.0 * R)));
    const double h = R / double(nodes);
    const Vec lam = lambda.shadow();

    // The integrand sum a_mu e^{2 pi i (mu - lambda).x} factorizes per axis,
    // so the tensor midpoint rule reduces to products of 1D midpoint sums.
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [f, a] : u0.terms()) {
        const Vec mu = f.shadow();
        std::complex<double> prod(1.0, 0.0);
        for (std::size_t d = 0; d < n; ++d) {
            const double nu = mu[d] - lam[d];
            std::complex<double> axis_sum(0.0, 0.0);
            const std::complex<double> rot =
                std::polar(1.0, kTwoPi * nu * h);
            std::complex<double> cur =
                std::polar(1.0, kTwoPi * nu * (-R / 2.0 + 0.5 * h));
            for (std::size_t k = 0; k < nodes; ++k) {
                axis_sum += cur;
                cur *= rot;
            }
            prod *= axis_sum / double(nodes);
        }
        acc += a * prod;
    }
    return acc;
}

std::vector<BohrScanEntry> bohr_coefficient_scan(const TrigPolynomial& u0,
                                                 const FrequencyVector& lambda,
                                                 const std::vector<double>& R_list)
{
    const std::complex<double> exact = u0.coefficient(lambda);
    std::vector<BohrScanEntry> out;
    for (double R : R_list) {
        BohrScanEntry e;
        e.R = R;
        e.value = bohr_coefficient_numeric(u0, lambda, R);
        e.abs_error = std::abs(e.value - exact);
        out.push_back(e);
    }
    return out;
}

} // namespace hjd
