#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hjdecay/nondegeneracy.hpp"
#include "support/oracles.hpp"

using namespace hjd;

TEST_CASE("strictly convex: never linear")
{
    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(1));
    const auto res = is_linear_near_zero(H, {1.0}, 0.1);
    CHECK(!res.linear);
}

TEST_CASE("abs-linear along an orthogonal direction is linear with slope 0")
{
    const Hamiltonian H = Hamiltonian::abs_linear({1.0, 2.0});
    const auto res = is_linear_near_zero(H, {2.0, -1.0}, 0.4);
    CHECK(res.linear);
    CHECK(res.alpha == 0.0); // exact: the dot product vanishes in floats
}

TEST_CASE("kink at the origin defeats the chord test")
{
    const Hamiltonian H = Hamiltonian::max_affine({{{1.0}, 0.0}, {{-1.0}, 0.0}}); // |v|
    const auto res = is_linear_near_zero(H, {1.0}, 0.1);
    CHECK(!res.linear);
}

TEST_CASE("preconditions of the chord test")
{
    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(1));
    CHECK_THROWS_AS(is_linear_near_zero(H, {0.0}, 0.1), invalid_input);
    CHECK_THROWS_AS(is_linear_near_zero(H, {1.0}, -0.1), invalid_input);
    CHECK_THROWS_AS(is_linear_near_zero(H, {1.0}, 0.1, 8), invalid_input);  // even
    CHECK_THROWS_AS(is_linear_near_zero(H, {1.0}, 0.1, 7), invalid_input);  // < 9
}

TEST_CASE("verdict is symmetric in the sign of xi")
{
    auto gen = oracle::rng(83);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<AffinePiece> pieces;
        for (int i = 0; i < 4; ++i) pieces.push_back({{coef(gen), coef(gen)}, -std::abs(coef(gen))});
        pieces.push_back({{0.0, 0.0}, 0.0}); // normalize H(0) = 0
        const Hamiltonian H = Hamiltonian::max_affine(pieces);
        const Vec xi = {coef(gen), coef(gen)};
        if (norm_inf(xi) < 1e-6) continue;
        const auto plus = is_linear_near_zero(H, xi, 0.25);
        const auto minus = is_linear_near_zero(H, -1.0 * xi, 0.25);
        CHECK(plus.linear == minus.linear);
        if (plus.linear) CHECK(plus.alpha == doctest::Approx(-minus.alpha));
    }
}

TEST_CASE("linearity on a segment persists on subsegments with the same slope")
{
    // H linear with slope 2 on [-1/2, 1/2] along xi = 1
    const Hamiltonian H = Hamiltonian::max_affine(
        {{{2.0}, 0.0}, {{3.0}, -0.5}, {{1.0}, -0.5}});
    const auto big = is_linear_near_zero(H, {1.0}, 0.5);
    REQUIRE(big.linear);
    for (double delta : {0.4, 0.25, 0.1, 0.01}) {
        const auto sub = is_linear_near_zero(H, {1.0}, delta);
        CHECK(sub.linear);
        CHECK(sub.alpha == doctest::Approx(big.alpha).epsilon(1e-12));
    }
}

TEST_CASE("chord verdicts agree with exact active-piece analysis for max-affine")
{
    auto gen = oracle::rng(89);
    std::uniform_int_distribution<int> slope(-3, 3);
    std::uniform_int_distribution<int> off(0, 2);
    const double delta = 0.25;
    for (int trial = 0; trial < 100; ++trial) {
        // integer slopes/offsets so the exact analysis is unambiguous
        std::vector<AffinePiece> pieces;
        for (int i = 0; i < 4; ++i)
            pieces.push_back({{double(slope(gen))}, -double(off(gen))});
        const Hamiltonian H = Hamiltonian::max_affine(pieces);
        const Vec xi = {1.0};

        // exact: H(s) = max_i (a_i s + b_i) is linear on [-delta, delta] iff
        // one piece dominates (ties allowed only at equal value AND slope)
        double gl = H({-delta}), g0 = H({0.0}), gr = H({delta});
        const bool exact_linear =
            std::abs(0.5 * (gl + gr) - g0) <= 1e-12 &&
            std::abs(H({delta / 3}) - (g0 + (gr - gl) / (2 * delta) * (delta / 3))) <= 1e-12;

        const auto res = is_linear_near_zero(H, xi, delta);
        CHECK(res.linear == exact_linear);
    }
}

TEST_CASE("check_nd: strictly convex hamiltonian passes for any module")
{
    const Hamiltonian H = Hamiltonian::quadratic(Mat::identity(2));
    const auto M = FrequencyModule::integer_lattice(2);
    const auto report = check_nd(H, M, 5, 0.25);
    CHECK(report.satisfied_up_to_bound);
    CHECK(report.bound_K == 5);
    CHECK(report.witnesses.empty());
}

TEST_CASE("check_nd on |p.v|: irrational direction passes, rational one fails")
{
    // the section-example criterion: |p.v| is non-degenerate iff p.xi != 0
    // for every nonzero integer xi
    const auto M = FrequencyModule::integer_lattice(2);

    const Hamiltonian irrational = Hamiltonian::abs_linear({1.0, std::sqrt(2.0)});
    const auto ok = check_nd(irrational, M, 10, 0.25);
    CHECK(ok.satisfied_up_to_bound);

    const Hamiltonian rational = Hamiltonian::abs_linear({1.0, 2.0});
    const auto bad = check_nd(rational, M, 3, 0.25);
    CHECK(!bad.satisfied_up_to_bound);
    REQUIRE(bad.witnesses.size() == 1);
    CHECK(bad.witnesses[0].k == std::vector<std::int64_t>{2, -1});
    CHECK(bad.witnesses[0].alpha == 0.0);
}

TEST_CASE("witnesses are deduplicated modulo sign and sorted")
{
    const Hamiltonian H = Hamiltonian::abs_linear({1.0, 2.0});
    const auto M = FrequencyModule::integer_lattice(2);
    const auto report = check_nd(H, M, 6, 0.25);
    // orthogonal integer directions with |k|inf <= 6: (2,-1), (4,-2), (6,-3)
    REQUIRE(report.witnesses.size() == 3);
    CHECK(report.witnesses[0].k == std::vector<std::int64_t>{2, -1});
    CHECK(report.witnesses[1].k == std::vector<std::int64_t>{4, -2});
    CHECK(report.witnesses[2].k == std::vector<std::int64_t>{6, -3});
}

TEST_CASE("traveling wave satisfies the PDE in closed form")
{
    // H linear with slope alpha = 2 on [-1/2, 1/2]
    const Hamiltonian H = Hamiltonian::max_affine(
        {{{2.0}, 0.0}, {{3.0}, -0.5}, {{1.0}, -0.5}});
    const TravelingWave wave = counterexample_solution(H, {1.0}, 2.0, 0.5);

    auto gen = oracle::rng(97);
    std::uniform_real_distribution<double> xd(-3.0, 3.0), td(0.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double t = td(gen);
        const Vec x = {xd(gen)};
        const double residual = wave.dt(t, x) + H(wave.grad_x(t, x));
        CHECK(std::abs(residual) <= 1e-9);
    }
    // amplitude never decays
    CHECK(wave.amplitude() == doctest::Approx(0.5 / (2 * M_PI)));
}

TEST_CASE("stationary wave when alpha = 0")
{
    const Hamiltonian H = Hamiltonian::max_affine(
        {{{0.0}, 0.0}, {{1.0}, -0.5}, {{-1.0}, -0.5}}); // max(0, |v| - 1/2)
    const TravelingWave wave = counterexample_solution(H, {1.0}, 0.0, 0.5);
    for (double x = 0.0; x < 1.0; x += 0.1)
        CHECK(wave.value(7.3, {x}) == doctest::Approx(wave.value(0.0, {x})));
}

TEST_CASE("phase shift: unit speed wave translates")
{
    const Hamiltonian H = Hamiltonian::max_affine(
        {{{1.0}, 0.0}, {{2.0}, -1.0}, {{0.0}, -1.0}}); // slope 1 on [-1, 1]
    const TravelingWave wave = counterexample_solution(H, {1.0}, 1.0, 1.0);
    for (double x = 0.0; x < 1.0; x += 0.1)
        CHECK(wave.value(1.0, {x}) == doctest::Approx(wave.value(0.0, {x - 1.0})));
}

TEST_CASE("counterexample precondition is verified")
{
    const Hamiltonian strictly_convex = Hamiltonian::quadratic(Mat::identity(1));
    CHECK_THROWS_AS(counterexample_solution(strictly_convex, {1.0}, 0.0, 0.5),
                    invalid_input);

    const Hamiltonian flat = Hamiltonian::max_affine(
        {{{0.0}, 0.0}, {{1.0}, -0.5}, {{-1.0}, -0.5}});
    CHECK_THROWS_AS(counterexample_solution(flat, {1.0}, 1.0, 0.5), invalid_input); // wrong alpha
}

TEST_CASE("initial slice as exact trigonometric data")
{
    auto b = GeneratorBasis::rational_only();
    FrequencyVector xi(b, 1);
    xi.coeff(0, 0) = Rational(1);
    const TrigPolynomial u0 = counterexample_initial_data(xi, 0.5);
    CHECK(u0.eval({0.25}) == doctest::Approx(0.5 / (2 * M_PI)));
    CHECK(u0.term_count() == 2);
}

TEST_CASE("every reported witness satisfies the linearity identity")
{
    const Hamiltonian H = Hamiltonian::abs_linear({1.0, 2.0});
    const auto report = check_nd(H, FrequencyModule::integer_lattice(2), 6, 0.25);
    REQUIRE(!report.witnesses.empty());
    for (const auto& w : report.witnesses) {
        double gmax = 1.0;
        for (int i = 0; i <= 32; ++i) {
            const double s = -w.delta + 2.0 * w.delta * i / 32.0;
            gmax = std::max(gmax, std::abs(H(s * w.xi)));
        }
        for (int i = 0; i <= 32; ++i) {
            const double s = -w.delta + 2.0 * w.delta * i / 32.0;
            CHECK(std::abs(H(s * w.xi) - w.alpha * s) <= 1e-10 * gmax);
        }
    }
}
