#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hjdecay/solver.hpp"
#include "support/oracles.hpp"

using namespace hjd;

namespace {

std::vector<FrequencyVector> nonzero_spectrum(const TrigPolynomial& u)
{
    std::vector<FrequencyVector> sp;
    for (const auto& [f, a] : u.terms())
        if (!f.is_zero()) sp.push_back(f);
    return sp;
}

} // namespace

TEST_CASE("identity lift reproduces the direct periodic solve")
{
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial u0(1, b);
    FrequencyVector k1(b, 1);
    k1.coeff(0, 0) = Rational(1);
    u0.add_sin(k1, 0.6);

    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(1));
    const FrequencyModule M0 = module_basis(nonzero_spectrum(u0));
    const LiftedProblem prep = prepare_lifted(u0, H, M0);
    REQUIRE(M0.rank() == 1);

    const auto oracle_h = make_conjugate_oracle(H);
    HopfLaxOptions opts;
    opts.y_step = 1.0 / 1024.0;
    for (double t : {0.5, 2.0}) {
        const Vec probes_x = {0.1, 0.45, 0.9};
        for (double x : probes_x) {
            const double direct = torus_hopf_lax_point(u0, oracle_h, t, {x}, opts);
            const double lifted = lifted_solve(prep, t, {{x}}, opts)[0];
            CHECK(lifted == doctest::Approx(direct).epsilon(1e-10));
        }
    }
}

TEST_CASE("two-path identity for quasi-periodic data")
{
    auto b = GeneratorBasis::make({"1", "sqrt2"});
    TrigPolynomial u0(1, b);
    FrequencyVector f1(b, 1), f2(b, 1);
    f1.coeff(0, 0) = Rational(1);
    f2.coeff(0, 1) = Rational(1);
    u0.add_sin(f1, 1.0);
    u0.add_sin(f2, 1.0);

    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(1));
    const FrequencyModule M0 = module_basis(nonzero_spectrum(u0));
    const LiftedProblem prep = prepare_lifted(u0, H, M0);
    REQUIRE(M0.rank() == 2);
    // the lifted hamiltonian is a rank-1 quadratic on the 2-torus
    REQUIRE(prep.torus_hamiltonian.is_quadratic());
    CHECK(prep.oracle.dirs.size() == 1);

    // direct quasi-periodic Hopf-Lax on the line vs the lifted torus solve
    const auto u0_fn = [&](const Vec& x) { return u0.eval(x); };
    const auto direct_oracle = make_conjugate_oracle(H);
    auto gen = oracle::rng(107);
    std::uniform_real_distribution<double> xd(-3.0, 3.0), td(0.5, 3.0);
    HopfLaxOptions direct_opts;
    direct_opts.y_step = 1.0 / 2048.0;
    direct_opts.osc_bound = 4.0;
    HopfLaxOptions lift_opts;
    lift_opts.y_step = 1.0 / 2048.0;

    const double lip = u0.lipschitz_bound();
    const double tol = 3.0 * lip * (1.0 / 2048.0 + std::sqrt(3.0) / 2048.0);
    for (int i = 0; i < 20; ++i) {
        const double t = td(gen), x = xd(gen);
        const double direct = hopf_lax_point(u0_fn, direct_oracle, t, {x}, direct_opts).value;
        const double lifted = lifted_solve(prep, t, {{x}}, lift_opts)[0];
        CHECK(std::abs(direct - lifted) <= tol);
    }
}

TEST_CASE("rank-1 lift in n = 2: the solution is constant along ker Lambda")
{
    auto b = GeneratorBasis::make({"1", "sqrt2"});
    FrequencyVector f(b, 2);
    f.coeff(0, 0) = Rational(1);
    f.coeff(1, 1) = Rational(1); // frequency (1, sqrt2)
    TrigPolynomial u0(2, b);
    u0.add_sin(f, 0.8);

    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(2));
    const FrequencyModule M0 = module_basis({f});
    const LiftedProblem prep = prepare_lifted(u0, H, M0);
    REQUIRE(M0.rank() == 1);

    // kernel direction of Lambda = (1, sqrt2): (sqrt2, -1)
    const Vec x0 = {0.3, -0.2};
    const Vec kd = {std::sqrt(2.0), -1.0};
    HopfLaxOptions opts;
    opts.y_step = 1.0 / 1024.0;
    const double base = lifted_solve(prep, 1.0, {x0}, opts)[0];
    for (double s : {0.5, 1.7, -2.3}) {
        const Vec x = x0 + s * kd;
        CHECK(lifted_solve(prep, 1.0, {x}, opts)[0] == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("concave hamiltonian drives the solution to the supremum")
{
    // PDE hamiltonian H(v) = -v^2/2 (concave); its convex reflection is v^2/2
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial u0(1, b);
    FrequencyVector k1(b, 1);
    k1.coeff(0, 0) = Rational(1);
    u0.add_sin(k1, 1.0);

    const Hamiltonian reflected = Hamiltonian::quadratic(Mat::identity(1));
    const auto f = solve_concave(u0, reflected, 50.0, {512});
    // long-time limit is sup u0 = 1
    CHECK(f.min_value() >= 1.0 - 0.05);
    CHECK(f.max_value() <= 1.0 + 1e-9);
}

TEST_CASE("concave solve of constants is constant")
{
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial u0(1, b);
    u0.add_const(0.7);
    // constants have empty nonzero spectrum; solve directly on the torus
    const auto f = solve_concave(u0, Hamiltonian::quadratic(Mat::identity(1)), 3.0, {64});
    for (double v : f.values) CHECK(v == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("linear hamiltonian: concave route matches the transport closed form")
{
    // H(v) = v is both convex and concave; reflected: -H(-w) = w again.
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial u0(1, b);
    FrequencyVector k1(b, 1);
    k1.coeff(0, 0) = Rational(1);
    u0.add_sin(k1, 0.4);

    const Hamiltonian lin = Hamiltonian::max_affine({{{1.0}, 0.0}});
    const double t = 0.7;
    const auto via_concave = solve_concave(u0, lin, t, {256});
    // transport solution: u(t,x) = u0(x - t)
    for (std::size_t i = 0; i < via_concave.values.size(); ++i) {
        const Vec x = via_concave.point(i);
        CHECK(via_concave.values[i] == doctest::Approx(u0.eval({x[0] - t})).epsilon(1e-9));
    }

    // and the convex route agrees with the same closed form
    const FrequencyModule M0 = module_basis(nonzero_spectrum(u0));
    const LiftedProblem prep = prepare_lifted(u0, lin, M0);
    const auto direct = lifted_solve_field(prep, t, {256});
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
        const Vec x = direct.point(i);
        CHECK(direct.values[i] == doctest::Approx(u0.eval({x[0] - t})).epsilon(1e-9));
    }
}

TEST_CASE("torus min and max scan")
{
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial u0(1, b);
    FrequencyVector k1(b, 1);
    k1.coeff(0, 0) = Rational(1);
    u0.add_sin(k1, 1.0);
    u0.add_const(0.25);
    CHECK(torus_min(u0, 4096) == doctest::Approx(-0.75).epsilon(1e-6));
    CHECK(torus_max(u0, 4096) == doctest::Approx(1.25).epsilon(1e-6));
}

TEST_CASE("hopf-lax agrees between a flat hamiltonian and its coercification")
{
    // Lipschitz data well inside the cone slope: the behavior of H beyond the
    // gradient range cannot matter
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial u0(1, b);
    FrequencyVector k1(b, 1);
    k1.coeff(0, 0) = Rational(1);
    u0.add_sin(k1, 0.1); // Lipschitz constant 0.2 pi < 1

    const Hamiltonian flat = Hamiltonian::abs_linear({1.0});
    const Hamiltonian steep = coercify(flat, 1.0);
    const auto oracle_flat = make_conjugate_oracle(flat);
    const auto oracle_steep = make_conjugate_oracle(steep, {2.5, 2049});

    for (double t : {0.5, 2.0}) {
        const auto f1 = torus_hopf_lax_field(u0, oracle_flat, t, {256});
        const auto f2 = torus_hopf_lax_field(u0, oracle_steep, t, {256});
        for (std::size_t i = 0; i < f1.values.size(); ++i)
            CHECK(std::abs(f1.values[i] - f2.values[i]) <= 2e-3);
    }
}
