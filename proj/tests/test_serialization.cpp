#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hjdecay/serialization.hpp"
#include "support/oracles.hpp"

#include <filesystem>

using namespace hjd;

namespace {

std::filesystem::path temp_dir()
{
    const auto dir = std::filesystem::temp_directory_path() / "hjdecay_ser_test";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("hamiltonian json round trips for every variant")
{
    std::vector<Hamiltonian> specs;
    Mat Q = Mat::identity(2);
    Q(0, 1) = Q(1, 0) = 0.25;
    specs.push_back(Hamiltonian::quadratic(Q));
    specs.push_back(Hamiltonian::abs_linear({1.0, std::sqrt(2.0)}));
    specs.push_back(Hamiltonian::max_affine({{{1.0, 0.0}, 0.0}, {{-1.0, 0.5}, -0.25}}));
    specs.push_back(Hamiltonian::sum(
        {Hamiltonian::quadratic(Mat::identity(2)), Hamiltonian::abs_linear({0.5, 0.0})}));
    GridN g;
    g.axes = {{-2.0, 2.0, 17}, {-2.0, 2.0, 17}};
    specs.push_back(Hamiltonian::sampled(
        SampledConvex::from_function(g, [](const Vec& v) { return dot(v, v); })));

    auto gen = oracle::rng(113);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (const auto& H : specs) {
        const Hamiltonian back = hamiltonian_from_json(hamiltonian_to_json(H));
        CHECK(back.kind_name() == H.kind_name());
        for (int i = 0; i < 25; ++i) {
            const Vec v = {coord(gen), coord(gen)};
            CHECK(back(v) == doctest::Approx(H(v)).epsilon(1e-12));
        }
    }
}

TEST_CASE("hamiltonian json rejects malformed input")
{
    CHECK_THROWS_AS(hamiltonian_from_json(Json::parse(
                        R"({"variant":"spline","dim":1,"params":{}})")),
                    invalid_input);
    CHECK_THROWS_AS(hamiltonian_from_json(Json::parse(
                        R"({"variant":"quadratic","dim":2,"params":{"matrix":[[1.0]]}})")),
                    invalid_input);
}

TEST_CASE("trig polynomial json round trip preserves exact frequencies")
{
    auto b = GeneratorBasis::make({"1", "sqrt2"});
    TrigPolynomial u(1, b);
    FrequencyVector f(b, 1);
    f.coeff(0, 0) = Rational(1, 2);
    f.coeff(0, 1) = Rational(-2, 3);
    u.add_sin(f, 0.7);
    u.add_const(0.1);

    const Json j = trigpoly_to_json(u);
    const TrigPolynomial back = trigpoly_from_json(j);
    CHECK(back.term_count() == u.term_count());
    CHECK(back.mean_value() == u.mean_value());
    for (double x : {0.0, 0.31, -2.7})
        CHECK(back.eval({x}) == doctest::Approx(u.eval({x})).epsilon(1e-15));

    // frequencies survive as exact rationals, not floats
    bool found = false;
    for (const auto& [freq, coeff] : back.terms())
        if (freq.coeff(0, 1) == Rational(-2, 3)) found = true;
    CHECK(found);
}

TEST_CASE("sampled convex header + csv payload round trip, mask included")
{
    GridN g;
    g.axes = {{-2.0, 2.0, 9}, {-1.0, 1.0, 5}};
    SampledConvex s = SampledConvex::from_function(g, [](const Vec& v) { return dot(v, v); });
    s.mask.assign(s.size(), 1);
    s.mask[0] = 0; // one corner outside the effective domain
    s.values[0] = 0.0;

    const auto dir = temp_dir();
    write_sampled(s, dir / "table.json");
    const SampledConvex back = read_sampled(dir / "table.json");
    REQUIRE(back.size() == s.size());
    CHECK(back.mask == s.mask);
    for (std::size_t i = 1; i < s.size(); ++i)
        CHECK(back.values[i] == doctest::Approx(s.values[i]).epsilon(1e-11));
}

TEST_CASE("nd report serialization carries witnesses")
{
    const Hamiltonian H = Hamiltonian::abs_linear({1.0, 2.0});
    const auto report = check_nd(H, FrequencyModule::integer_lattice(2), 3, 0.25);
    const Json j = nd_report_to_json(report);
    CHECK(j.at("verdict") == "violated");
    CHECK(j.at("bound_K") == 3);
    REQUIRE(j.at("witnesses").size() == 1);
    CHECK(j.at("witnesses")[0].at("alpha") == 0.0);
    CHECK(j.at("witnesses")[0].at("k") == Json::array({2, -1}));
}

TEST_CASE("field csv: coordinates then value, deterministic formatting")
{
    SolutionField f;
    f.t = 1.0;
    f.periodic = true;
    f.torus_res = {4};
    f.values = {0.0, 0.5, 1.0, -0.25};
    const auto dir = temp_dir();
    write_field_csv(f, dir / "field.csv");
    const std::string csv = read_text_file(dir / "field.csv");
    CHECK(csv == "x0,value\n0,0\n0.25,0.5\n0.5,1\n0.75,-0.25\n");

    const Json sidecar = field_sidecar_json(f, Json::object());
    CHECK(sidecar.at("t") == 1.0);
    CHECK(sidecar.at("provenance") == "hopf_lax");
    CHECK(sidecar.at("periodic") == true);
}

TEST_CASE("format_double is stable at 12 significant digits")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(-2.5e-13) == "-2.5e-13");
    CHECK(format_double(kInf) == "inf");
}

TEST_CASE("budget-exhausted certificates serialize with their nd recheck")
{
    const Hamiltonian H = Hamiltonian::max_affine(
        {{{0.0}, 0.0}, {{1.0}, -0.5}, {{-1.0}, -0.5}});
    auto b = GeneratorBasis::rational_only();
    TrigPolynomial v0(1, b);
    FrequencyVector k1(b, 1);
    k1.coeff(0, 0) = Rational(1);
    v0.add_sin(k1, 0.5 / (2 * M_PI));

    CertificateOptions opts;
    opts.epsilon = 0.1;
    opts.max_shells = 200;
    const CertificateResult res = decay_certificate(H, v0, opts);
    REQUIRE(!res.ok());
    const Json j = certificate_result_to_json(res);
    CHECK(j.at("status") == "budget_exhausted");
    CHECK(j.at("nd_recheck").at("verdict") == "violated");
    CHECK(j.at("certificate").at("alpha_table").empty());
}
