#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hjdecay/certificate.hpp"
#include "support/oracles.hpp"

using namespace hjd;

namespace {

TrigPolynomial two_mode_data()
{
    // 0.5 sin(2 pi x) + 0.3 cos(4 pi x)
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial u(1, b);
    FrequencyVector k1(b, 1), k2(b, 1);
    k1.coeff(0, 0) = Rational(1);
    k2.coeff(0, 0) = Rational(2);
    u.add_sin(k1, 0.5);
    u.add_cos(k2, 0.3);
    return u;
}

double torus_dist_1d(double a, double b)
{
    double d = std::abs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

} // namespace

TEST_CASE("strictly convex case: net found, alpha decays like max q^2 / 2t")
{
    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(1));
    const TrigPolynomial v0 = two_mode_data();
    CertificateOptions opts;
    opts.epsilon = 0.1;
    opts.t_table = {1, 2, 5, 10, 20, 50, 100};

    const CertificateResult res = decay_certificate(H, v0, opts);
    REQUIRE(res.ok());
    const DecayCertificate& cert = res.certificate;

    // p0 = 0 and dH*(0) = {0} for the strictly convex quadratic
    CHECK(std::abs(cert.p0[0]) <= 1e-9);
    CHECK(cert.subdiff_polytope.support({1.0}) <= 1e-4);
    CHECK(cert.subdiff_polytope.support({-1.0}) <= 1e-4);

    // every net point is a certified member of the polar set
    const PolarSetQuery gq(cert.subdiff_polytope, opts.epsilon);
    for (const auto& q : cert.net_q) CHECK(polar_membership(gq, q));

    // the projected net is a delta-net of the torus (independent recheck)
    for (int i = 0; i < 500; ++i) {
        const double y = double(i) / 500.0;
        double best = kInf;
        for (const auto& pr : cert.net_projected)
            best = std::min(best, torus_dist_1d(y, pr[0]));
        CHECK(best <= cert.delta_net + 1e-12);
    }

    // alpha non-increasing with the advertised tail, and alpha ~ max q^2 / 2t
    double max_q2 = 0.0;
    for (const auto& q : cert.net_q) max_q2 = std::max(max_q2, q[0] * q[0]);
    for (std::size_t i = 0; i < cert.t_table.size(); ++i) {
        if (i > 0) CHECK(cert.alpha_table[i] <= cert.alpha_table[i - 1] + 1e-12);
        CHECK(cert.alpha_table[i] ==
              doctest::Approx(0.5 * max_q2 / cert.t_table[i]).epsilon(1e-6));
    }
    CHECK(cert.alpha_table.back() <= opts.epsilon + 1e-9);
}

TEST_CASE("linearity identity holds on the subdifferential vertices")
{
    // H(v) = max(0, |v| - 1/2) vanishes exactly on dH*(0) = [-1/2, 1/2]
    const Hamiltonian H = Hamiltonian::max_affine(
        {{{0.0}, 0.0}, {{1.0}, -0.5}, {{-1.0}, -0.5}});
    const Polytope sub = conjugate_subdifferential(H, {0.0}, 2.0);
    REQUIRE(sub.vertices().size() == 2);
    for (const auto& v : sub.vertices()) {
        CHECK(std::abs(v[0]) == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(std::abs(H(v) - 0.0 * v[0]) <= 1e-9); // H(v) = p0 . v with p0 = 0
    }

    // positive-definite quadratic: dH*(p0) = {Q^{-1} p0}
    Mat Q = Mat::identity(2);
    Q(0, 0) = 2.0;
    const Polytope pt = conjugate_subdifferential(Hamiltonian::quadratic(Q), {1.0, 1.0}, 4.0);
    REQUIRE(pt.vertices().size() == 1);
    CHECK(pt.vertices()[0][0] == doctest::Approx(0.5));
    CHECK(pt.vertices()[0][1] == doctest::Approx(1.0));
}

TEST_CASE("flat hamiltonian with small epsilon/delta: budget error, nd recheck violated")
{
    // dH*(0) = [-1/2, 1/2]; G = [-2 eps, 2 eps]; projections never reach the
    // far side of the torus when eps/delta < 1/2
    const Hamiltonian H = Hamiltonian::max_affine(
        {{{0.0}, 0.0}, {{1.0}, -0.5}, {{-1.0}, -0.5}});
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial v0 = two_mode_data();

    CertificateOptions opts;
    opts.epsilon = 0.1;
    opts.max_shells = 600;
    const CertificateResult res = decay_certificate(H, v0, opts);
    CHECK(!res.ok());
    CHECK(res.message.find("budget") != std::string::npos);
    // the recheck names the degenerate direction
    CHECK(!res.nd_recheck.satisfied_up_to_bound);
    REQUIRE(!res.nd_recheck.witnesses.empty());
    CHECK(res.nd_recheck.witnesses[0].alpha == doctest::Approx(0.0));
}

TEST_CASE("degenerate 2-torus quadratic: kernel segment subdifferential")
{
    // lifted H(w) = (w1 + sqrt2 w2)^2 / 2 with rank-1 matrix a a^T
    Mat M(2, 2);
    const double a0 = 1.0, a1 = std::sqrt(2.0);
    M(0, 0) = a0 * a0;
    M(0, 1) = M(1, 0) = a0 * a1;
    M(1, 1) = a1 * a1;
    const Hamiltonian H = Hamiltonian::quadratic(M);
    CHECK(!H.is_coercive());

    const Polytope seg = conjugate_subdifferential(H, {0.0, 0.0}, 1.5);
    REQUIRE(seg.vertices().size() == 2);
    for (const auto& v : seg.vertices()) {
        // vertices sit in ker(M): a . v = 0, and H vanishes there
        CHECK(std::abs(a0 * v[0] + a1 * v[1]) <= 1e-9);
        CHECK(std::abs(H(v)) <= 1e-9);
    }

    // certificate on the 2-torus for quasi-periodic-lift data
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial v0(2, b);
    FrequencyVector e0(b, 2), e1(b, 2);
    e0.coeff(0, 0) = Rational(1);
    e1.coeff(1, 0) = Rational(1);
    v0.add_sin(e0, 1.0);
    v0.add_sin(e1, 1.0);

    CertificateOptions opts;
    opts.epsilon = 0.75; // coarse epsilon keeps the 2D net search desk-sized
    opts.t_table = {1, 10, 100};
    opts.torus_min_res = 512;
    const CertificateResult res = decay_certificate(H, v0, opts);
    REQUIRE(res.ok());
    CHECK(res.certificate.c == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(res.certificate.alpha_table.back() <= opts.epsilon + 0.05);
}

TEST_CASE("certified bound dominates the computed field")
{
    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(1));
    const TrigPolynomial v0 = two_mode_data();
    CertificateOptions opts;
    opts.epsilon = 0.1;
    opts.t_table = {1, 5, 20, 100};
    const CertificateResult res = decay_certificate(H, v0, opts);
    REQUIRE(res.ok());

    const auto oracle_h = make_conjugate_oracle(H);
    for (std::size_t i = 0; i < opts.t_table.size(); ++i) {
        const auto field = torus_hopf_lax_field(v0, oracle_h, opts.t_table[i], {512});
        CHECK(field.max_value() <= res.certificate.bound_table[i]);
        CHECK(field.min_value() >= res.certificate.c - 1e-9);
    }
    // the bound closes to within 2 eps of c at the final time
    CHECK(res.certificate.bound_table.back() - res.certificate.c <=
          2.0 * opts.epsilon + 0.02);
}
