// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Calibration thresholds come from the shipped configs, not from
// code. Random instances are seeded and deterministic.

#include "hjdecay/experiments.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <iostream>

using namespace hjd;
using Clock = std::chrono::steady_clock;

namespace {

const std::filesystem::path kConfigs =
    std::filesystem::path(HJDECAY_SOURCE_DIR) / "configs";

int g_failures = 0;

struct Criterion {
    std::string detail;
    bool pass = true;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what)
    {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

void report(int number, const std::string& title, const Criterion& c)
{
    std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << std::endl;
    if (!c.pass) ++g_failures;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

TrigPolynomial load_trig(const char* file)
{
    return trigpoly_from_json(read_json_file(kConfigs / file));
}

// -------------------------------------------------------------------------
void criterion_1()
{
    Criterion c;
    auto gen = oracle::rng(1001);

    double worst_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const SampledConvex f = oracle::random_convex_1d(gen, 513);
        const GridN pg = suggest_conjugate_grid(f, 257);
        const auto fast = legendre_1d(f, pg.axes[0]);
        for (std::size_t i = 0; i < pg.axes[0].count; ++i) {
            const double brute = oracle::brute_force_conjugate(f, {pg.axes[0].point(i)});
            worst_rel = std::max(worst_rel, std::abs(fast.conjugate.values[i] - brute) /
                                                std::max(1.0, std::abs(brute)));
        }
    }
    c.require(worst_rel <= 1e-12, "1D mismatch " + format_double(worst_rel));

    double worst_rel_2d = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const SampledConvex f = oracle::random_convex_2d(gen, 129);
        const GridN pg = suggest_conjugate_grid(f, 65);
        const auto fast = legendre_nd(f, pg);
        for (std::size_t flat = 0; flat < pg.size(); ++flat) {
            const double brute = oracle::brute_force_conjugate(f, pg.point_flat(flat));
            worst_rel_2d = std::max(worst_rel_2d,
                                    std::abs(fast.conjugate.values[flat] - brute) /
                                        std::max(1.0, std::abs(brute)));
        }
    }
    c.require(worst_rel_2d <= 1e-12, "2D mismatch " + format_double(worst_rel_2d));

    // throughput: a million-node 1D transform in under a second
    const SampledConvex big = oracle::random_convex_1d(gen, 1000001);
    const GridN pg_big = suggest_conjugate_grid(big, 1000001);
    const auto t0 = Clock::now();
    const auto res = legendre_1d(big, pg_big.axes[0]);
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 1.0, "10^6-node transform took " + format_double(elapsed) + " s");
    c.note("10^6 nodes in " + format_double(elapsed) + " s, worst rel err " +
           format_double(std::max(worst_rel, worst_rel_2d)));
    (void)res;
    report(1, "fast Legendre transform equals the O(N^2) oracle", c);
}

void criterion_2()
{
    Criterion c;
    auto gen = oracle::rng(1002);
    double worst_gap = 0.0, worst_fy = -kInf;
    for (int trial = 0; trial < 20; ++trial) {
        const SampledConvex f = oracle::random_convex_1d(gen, 257);
        const GridN pg = suggest_conjugate_grid(f, 513);
        const auto conj = legendre_1d(f, pg.axes[0]);
        const auto biconj = legendre_1d(conj.conjugate, f.grid.axes[0]);

        const double hv = f.grid.axes[0].spacing();
        for (std::size_t i = 8; i + 8 < f.size(); ++i) {
            const double local_slope =
                std::max(std::abs(f.values[i + 1] - f.values[i]),
                         std::abs(f.values[i] - f.values[i - 1])) /
                hv;
            const double tol = 2.0 * hv * std::max(1.0, local_slope);
            worst_gap = std::max(worst_gap,
                                 std::abs(biconj.conjugate.values[i] - f.values[i]) / tol);
        }
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t k = 0; k < pg.axes[0].count; ++k) {
                const double v = f.grid.axes[0].point(i);
                const double p = pg.axes[0].point(k);
                worst_fy = std::max(worst_fy,
                                    p * v - f.values[i] - conj.conjugate.values[k]);
            }
    }
    c.require(worst_gap <= 1.0, "biconjugate exceeded the 2-cell tolerance (ratio " +
                                    format_double(worst_gap) + ")");
    c.require(worst_fy <= 1e-9, "Fenchel-Young violated by " + format_double(worst_fy));
    c.note("worst biconjugate/tolerance ratio " + format_double(worst_gap) +
           ", worst Fenchel-Young slack " + format_double(worst_fy));
    report(2, "biconjugate identity and Fenchel-Young inequality", c);
}

void criterion_3()
{
    Criterion c;
    auto gen = oracle::rng(1003);
    const auto oracle_h = make_conjugate_oracle(Hamiltonian::quadratic(Mat::identity(1)));
    const std::vector<std::size_t> res = {256};
    double worst_order = 0.0, worst_expansion = -kInf;
    for (int pair = 0; pair < 50; ++pair) {
        const TrigPolynomial u1 = oracle::random_periodic_1d(gen, 3, 0.4);
        TrigPolynomial u2 = oracle::random_periodic_1d(gen, 3, 0.4);
        TrigPolynomial u2_above = u2;
        u2_above.add_const(u1.sup_norm_bound() + u2.sup_norm_bound()); // u1 <= u2_above

        for (double t : {0.5, 1.0, 5.0}) {
            const auto f1 = torus_hopf_lax_field(u1, oracle_h, t, res);
            const auto f2 = torus_hopf_lax_field(u2, oracle_h, t, res);
            const auto f2a = torus_hopf_lax_field(u2_above, oracle_h, t, res);
            double sup_dev = 0.0, sup_init = 0.0;
            for (std::size_t i = 0; i < f1.values.size(); ++i) {
                worst_order = std::max(worst_order, f1.values[i] - f2a.values[i]);
                sup_dev = std::max(sup_dev, std::abs(f1.values[i] - f2.values[i]));
                const Vec y = f1.point(i);
                sup_init = std::max(sup_init, std::abs(u1.eval(y) - u2.eval(y)));
            }
            const double grid_tol =
                (u1.lipschitz_bound() + u2.lipschitz_bound()) / double(res[0]);
            worst_expansion = std::max(worst_expansion, sup_dev - sup_init - 2.0 * grid_tol);
        }
    }
    c.require(worst_order <= 1e-12,
              "ordering violated by " + format_double(worst_order));
    c.require(worst_expansion <= 0.0,
              "non-expansiveness violated by " + format_double(worst_expansion));
    c.note("worst ordering slack " + format_double(worst_order) +
           ", worst expansion slack " + format_double(worst_expansion));
    report(3, "comparison and non-expansiveness across 50 random pairs", c);
}

DecayRunResult run_criterion4(ExperimentConfig& cfg)
{
    cfg = load_config(kConfigs / "decay_periodic_quadratic.toml");
    cfg.want_certificate = true;
    return run_decay(cfg);
}

void criterion_4(const ExperimentConfig& cfg, const DecayRunResult& res, double runtime)
{
    Criterion c;
    double dev50 = kInf, dev100 = kInf;
    for (const auto& row : res.rows) {
        if (row.t == 50.0) dev50 = row.sup_deviation;
        if (row.t == 100.0) dev100 = row.sup_deviation;
    }
    c.require(dev50 <= cfg.thresholds.at("sup_dev_t50"),
              "dev(50) = " + format_double(dev50));
    c.require(dev100 <= cfg.thresholds.at("sup_dev_t100"),
              "dev(100) = " + format_double(dev100));
    c.require(runtime < cfg.thresholds.at("runtime_seconds"),
              "runtime " + format_double(runtime) + " s");
    c.note("dev(50) = " + format_double(dev50) + ", dev(100) = " + format_double(dev100) +
           ", runtime " + format_double(runtime) + " s");
    report(4, "decay toward min u0 under non-degeneracy", c);
}

void criterion_5()
{
    Criterion c;
    const ExperimentConfig cfg = load_config(kConfigs / "decay_quasiperiodic.toml");
    const DecayRunResult res = run_decay(cfg);
    double dev100 = kInf;
    for (const auto& row : res.rows)
        if (row.t == 100.0) dev100 = row.sup_deviation;
    c.require(dev100 <= cfg.thresholds.at("sup_dev_t100"),
              "dev(100) = " + format_double(dev100));

    // independent estimate of inf u0 over the cube C_1000
    const TrigPolynomial u0 = load_trig("u0_quasiperiodic.json");
    double cube_min = kInf;
    for (double x = -500.0; x <= 500.0; x += 2e-4)
        cube_min = std::min(cube_min, u0.eval({x}));
    c.require(std::abs(cube_min - res.c) <= cfg.thresholds.at("inf_cube_agreement"),
              "cube min " + format_double(cube_min) + " vs torus min " +
                  format_double(res.c));
    c.note("dev(100) = " + format_double(dev100) + ", min v0 = " + format_double(res.c) +
           ", cube estimate " + format_double(cube_min));
    report(5, "quasi-periodic decay through the torus lift", c);
}

void criterion_6()
{
    Criterion c;
    const ExperimentConfig cfg = load_config(kConfigs / "nondecay_counterexample.toml");
    const double tol = cfg.thresholds.at("closed_form_tolerance");
    const double retention = cfg.thresholds.at("amplitude_retention");

    // the configured hamiltonian is linear (slope 0) along xi = 1 on [-1/2, 1/2]
    const auto lin = is_linear_near_zero(cfg.hamiltonian, {1.0}, 0.5);
    c.require(lin.linear && lin.alpha == 0.0, "expected H(s xi) = 0 near 0");
    const TravelingWave wave = counterexample_solution(cfg.hamiltonian, {1.0}, 0.0, 0.5);

    const FrequencyModule M0 = [&] {
        std::vector<FrequencyVector> sp;
        for (const auto& [f, a] : cfg.initial_data.terms())
            if (!f.is_zero()) sp.push_back(f);
        return module_basis(sp);
    }();
    const LiftedProblem prep = prepare_lifted(cfg.initial_data, cfg.hamiltonian, M0);
    const double c_min = torus_min(prep.lift.torus_poly, 8192);

    double worst_gap = 0.0;
    double min_dev = kInf;
    for (double t : cfg.times) {
        const auto field = lifted_solve_field(prep, t, {cfg.grid});
        double dev = 0.0;
        for (std::size_t i = 0; i < field.values.size(); ++i) {
            const Vec x = field.point(i);
            worst_gap = std::max(worst_gap, std::abs(field.values[i] - wave.value(t, x)));
            dev = std::max(dev, std::abs(field.values[i] - c_min));
        }
        min_dev = std::min(min_dev, dev);
    }
    c.require(worst_gap <= tol, "field vs closed form gap " + format_double(worst_gap));
    c.require(min_dev >= retention * wave.amplitude(),
              "amplitude fell to " + format_double(min_dev));
    c.note("closed-form gap " + format_double(worst_gap) + ", persistent deviation " +
           format_double(min_dev) + " >= " + format_double(retention * wave.amplitude()));
    report(6, "non-decay when the condition fails (stationary wave)", c);
}

void criterion_7()
{
    Criterion c;
    const ExperimentConfig cfg = load_config(kConfigs / "decay_quasiperiodic.toml");
    const TrigPolynomial u0 = cfg.initial_data;
    const FrequencyModule M0 = [&] {
        std::vector<FrequencyVector> sp;
        for (const auto& [f, a] : u0.terms())
            if (!f.is_zero()) sp.push_back(f);
        return module_basis(sp);
    }();
    const LiftedProblem prep = prepare_lifted(u0, cfg.hamiltonian, M0);
    const auto direct_oracle = make_conjugate_oracle(cfg.hamiltonian);
    const auto u0_fn = [&](const Vec& x) { return u0.eval(x); };

    const double step = 1.0 / 2048.0;
    HopfLaxOptions direct_opts;
    direct_opts.y_step = step;
    direct_opts.osc_bound = 4.0;
    HopfLaxOptions lift_opts;
    lift_opts.y_step = step;
    const double tol = 3.0 * u0.lipschitz_bound() * (step + std::sqrt(3.0) * step);

    auto gen = oracle::rng(1007);
    std::uniform_real_distribution<double> xd(-3.0, 3.0), td(0.5, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = td(gen), x = xd(gen);
        const double direct = hopf_lax_point(u0_fn, direct_oracle, t, {x}, direct_opts).value;
        const double lifted = lifted_solve(prep, t, {{x}}, lift_opts)[0];
        worst = std::max(worst, std::abs(direct - lifted));
    }
    c.require(worst <= tol, "max probe deviation " + format_double(worst) + " > " +
                                format_double(tol));
    c.note("max probe deviation " + format_double(worst) + " (tolerance " +
           format_double(tol) + ")");
    report(7, "lifting identity: direct line solve vs torus solve", c);
}

void criterion_8(const ExperimentConfig& cfg4, const DecayRunResult& res4)
{
    Criterion c;
    c.require(res4.certificate.has_value() && res4.certificate->ok(),
              "certificate net not found");
    if (res4.certificate && res4.certificate->ok()) {
        const DecayCertificate& cert = res4.certificate->certificate;
        double worst_violation = -kInf;
        for (std::size_t i = 0; i < res4.rows.size(); ++i) {
            const double sup_field = res4.rows[i].sup_deviation + cert.c;
            worst_violation = std::max(worst_violation, sup_field - cert.bound_table[i]);
        }
        c.require(worst_violation <= 0.0,
                  "bound undercut the field by " + format_double(worst_violation));
        const double slack = cert.bound_table.back() - cert.c;
        c.require(slack <= 2.0 * cert.epsilon + cfg4.thresholds.at("certificate_slack_t100"),
                  "bound(100) - c = " + format_double(slack));
        c.note("net size " + std::to_string(cert.net_q.size()) + ", bound(100) - c = " +
               format_double(slack));
    }
    report(8, "decay certificate: sound envelope from the delta-net", c);
}

void criterion_9()
{
    Criterion c;
    const auto M = FrequencyModule::integer_lattice(2);

    const Hamiltonian irrational = Hamiltonian::abs_linear({1.0, std::sqrt(2.0)});
    const auto ok = check_nd(irrational, M, 10, 0.25);
    c.require(ok.satisfied_up_to_bound, "(1, sqrt2) flagged degenerate");

    const Hamiltonian rational = Hamiltonian::abs_linear({1.0, 2.0});
    const auto bad = check_nd(rational, M, 3, 0.25);
    c.require(!bad.satisfied_up_to_bound, "(1,2) not flagged");
    const bool witness_ok = bad.witnesses.size() == 1 &&
                            bad.witnesses[0].k == std::vector<std::int64_t>{2, -1} &&
                            bad.witnesses[0].alpha == 0.0;
    c.require(witness_ok, "wrong witness set");
    c.note("(1,sqrt2): clean sweep to K=10; (1,2): witness xi=(2,-1), alpha=0");
    report(9, "non-degeneracy checker on the directional-derivative example", c);
}

void criterion_10()
{
    Criterion c;
    const ExperimentConfig cfg = load_config(kConfigs / "compare_refinement.toml");
    const CompareResult res = run_compare(cfg);
    const double floor = cfg.thresholds.at("observed_order_min");
    std::string orders;
    for (double order : res.observed_orders) {
        c.require(order >= floor, "order " + format_double(order) + " < " +
                                      format_double(floor));
        if (!orders.empty()) orders += ", ";
        orders += format_double(order);
    }
    c.note("observed orders " + orders);
    report(10, "Lax-Friedrichs vs Hopf-Lax refinement study", c);
}

void criterion_11()
{
    Criterion c;
    const ExperimentConfig cfg = load_config(kConfigs / "concave_quadratic.toml");
    const DecayRunResult res = run_decay(cfg);
    c.require(std::abs(res.c - 1.0) <= 1e-6, "sup u0 != 1");
    double dev50 = kInf;
    for (const auto& row : res.rows)
        if (row.t == 50.0) dev50 = row.sup_deviation;
    c.require(dev50 <= cfg.thresholds.at("sup_gap_t50"),
              "gap at t=50 is " + format_double(dev50));
    c.note("|u(50,.) - sup u0| = " + format_double(dev50));
    report(11, "concave hamiltonian reaches sup u0 via the sign flip", c);
}

} // namespace

int main()
{
    std::cout << "acceptance suite (configs: " << kConfigs.string() << ")\n";
    try {
        criterion_1();
        criterion_2();
        criterion_3();

        ExperimentConfig cfg4;
        const auto t0 = Clock::now();
        const DecayRunResult res4 = run_criterion4(cfg4);
        const double runtime4 = seconds_since(t0);
        criterion_4(cfg4, res4, runtime4);

        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8(cfg4, res4);
        criterion_9();
        criterion_10();
        criterion_11();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance aborted: " << e.what() << std::endl;
        return 1;
    }
    std::cout << (g_failures == 0 ? "all criteria passed"
                                  : std::to_string(g_failures) + " criteria failed")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
