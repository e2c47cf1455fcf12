#include <doctest.h>

#include <cmath>

#include "pmgraph/estimates.hpp"
#include "pmgraph/generators.hpp"
#include "test_support.hpp"

using namespace pmg;
using namespace pmgtest;

TEST_CASE("gradient estimate: constant u passes with margin D_theta") {
    const WeightedGraph g = k3();
    const VertexField u(3, 2.0);
    const VertexField psi{0.5, -0.3, 1.0};
    const VertexField delta{-1.0, -2.0, -0.5};
    const EstimateReport r = check_gradient_estimate(g, u, psi, delta, 2.0);
    CHECK(r.overall == CheckStatus::pass);
    for (const auto& row : r.rows) {
        CHECK(row.lhs == doctest::Approx(0.0));
        CHECK(row.margin == doctest::Approx(constants(g).d_theta));
    }
}

TEST_CASE("gradient estimate: K2 reduced form -L(u^{m/2}) <= D_theta u^{m/2}") {
    const WeightedGraph g = k2();
    const VertexField u{1.0, 4.0};
    const VertexField psi{0.0, 0.0};
    const VertexField delta{-1.0, -1.0};
    const EstimateReport r = check_gradient_estimate(g, u, psi, delta, 2.0);
    CHECK(r.overall == CheckStatus::pass);
    // At a: -Lu = -3 <= 1*1, lhs = -3; at b: -Lu = 3, lhs = 3/4.
    CHECK(r.rows[0].lhs == doctest::Approx(-3.0));
    CHECK(r.rows[0].aux == doctest::Approx(-3.0));
    CHECK(r.rows[0].margin == doctest::Approx(4.0));
    CHECK(r.rows[1].lhs == doctest::Approx(0.75));
    CHECK(r.rows[1].margin == doctest::Approx(0.25));
}

TEST_CASE("gradient estimate property: unconditional pass, reduced form agrees") {
    Rng rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const WeightedGraph g = random_connected_graph(rng, rng.uniform_int(2, 40), rng.coin());
        const int n = g.vertex_count();
        const VertexField u = random_positive_field(rng, n);
        const VertexField psi = random_field(rng, n, -2.0, 2.0);
        VertexField delta(n);
        for (auto& d : delta) d = -rng.uniform(0.1, 3.0);
        const double m = rng.uniform(1.1, 4.0);

        const EstimateReport r = check_gradient_estimate(g, u, psi, delta, m);
        CHECK(r.overall == CheckStatus::pass);
        for (const auto& row : r.rows) {
            CHECK(row.margin >= -pass_tolerance(row.lhs, row.rhs));
            const double scale = std::max({1.0, std::abs(row.lhs), std::abs(row.aux)});
            CHECK(std::abs(row.lhs - row.aux) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("li-yau estimate: worked constant-solution example") {
    const WeightedGraph g = k2();
    // u(t) = 1/(1-t) at t = 0: u = 1, u_t = 1, psi = 1, delta = -1, m = 2.
    const VertexField u(2, 1.0);
    const VertexField ut(2, 1.0);
    const VertexField psi(2, 1.0);
    const VertexField delta(2, -1.0);
    const EstimateReport r = check_li_yau_estimate(g, u, psi, delta, 2.0, ut);
    CHECK(r.overall == CheckStatus::pass);
    CHECK(r.rows[0].lhs == doctest::Approx(-0.5));
    CHECK(r.rows[0].rhs == doctest::Approx(1.0));
    CHECK(r.rows[0].aux == doctest::Approx(-1.5));  // source-subtracted variant
}

TEST_CASE("li-yau estimate: vacuous when u_t is not positive") {
    const WeightedGraph g = k2();
    const VertexField u(2, 1.0), zero(2, 0.0), psi(2, 0.0), delta(2, -1.0);
    const EstimateReport r = check_li_yau_estimate(g, u, psi, delta, 2.0, zero);
    CHECK(r.overall == CheckStatus::vacuous);
    for (const auto& row : r.rows) CHECK(row.status == CheckStatus::vacuous);
}

TEST_CASE("li-yau estimate: vacuous when delta is not negative anywhere") {
    const WeightedGraph g = k2();
    const VertexField u(2, 1.0), ut(2, 1.0), psi(2, 0.0);
    const VertexField delta{-1.0, 1.0};
    CHECK(check_li_yau_estimate(g, u, psi, delta, 2.0, ut).overall == CheckStatus::vacuous);
}

TEST_CASE("li-yau estimate property: manufactured solutions pass, both forms") {
    Rng rng(103);
    int nonvacuous = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int pick = rng.uniform_int(0, 2);
        GeneratorOptions gopt;
        gopt.theta = rng.coin() ? ThetaMode::one : ThetaMode::degree;
        const WeightedGraph g = pick == 0   ? make_path(rng.uniform_int(2, 8), gopt)
                                : pick == 1 ? make_cycle(rng.uniform_int(3, 8), gopt)
                                            : make_complete(rng.uniform_int(2, 6), gopt);
        const double m = std::vector<double>{1.5, 2.0, 3.0}[rng.uniform_int(0, 2)];
        const double psi0 = rng.uniform(0.1, 1.0);
        const double u0 = rng.uniform(0.5, 2.0);
        const double t_end = 0.5 * constant_solution_blowup_time(u0, m, psi0);

        PMEProblem p = constant_problem(g, m, psi0, u0, 0.0, t_end);
        const IntegrationResult ir = integrate(p);
        REQUIRE(ir.status == IntegrationStatus::completed);

        const std::size_t i = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(ir.trajectory.times.size()) - 1));
        const VertexField psi_now = p.psi_at(ir.trajectory.times[i]);
        const EstimateReport r = check_li_yau_estimate(g, ir.trajectory.states[i], psi_now,
                                                       p.delta, m, ir.trajectory.ut[i]);
        CHECK(r.overall == CheckStatus::pass);
        if (r.overall == CheckStatus::pass) ++nonvacuous;
        const double d_theta = constants(g).d_theta;
        for (const auto& row : r.rows) {
            CHECK(row.aux <= d_theta + pass_tolerance(row.aux, d_theta));
        }
    }
    CHECK(nonvacuous == 40);
}

TEST_CASE("path functional: zero source gives zero") {
    const WeightedGraph g = p3();
    const std::vector<Poly> psi(3, Poly::constant(0.0));
    CHECK(path_source_functional(g, {0, 1, 2}, psi, 0.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("path functional: constant source integrates exactly") {
    const WeightedGraph g = p3();
    const double c0 = 1.7;
    const std::vector<Poly> psi(3, Poly::constant(c0));
    const double t1 = 0.25, t2 = 2.0;
    const double phi = path_source_functional(g, {0, 1, 2}, psi, t1, t2);
    CHECK(std::abs(phi - 0.5 * c0 * (t2 - t1)) <= 1e-12);
}

TEST_CASE("path functional: single-edge linear ramp") {
    const WeightedGraph g = k2();
    const double c0 = 3.0, t1 = 0.5, t2 = 1.75;
    std::vector<Poly> psi{Poly::constant(0.0), Poly::constant(c0)};
    const double phi = path_source_functional(g, {0, 1}, psi, t1, t2);
    CHECK(phi == doctest::Approx(c0 * (t2 - t1) / 6.0).epsilon(1e-13));
}

TEST_CASE("path functional: rejects non-shortest paths") {
    const WeightedGraph g = k3();
    const std::vector<Poly> psi(3, Poly::constant(0.0));
    // a-c-b walks two edges where dist(a,b) = 1.
    CHECK_THROWS_AS(path_source_functional(g, {0, 2, 1}, psi, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(path_source_functional(g, {0}, psi, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(path_source_functional(g, {0, 1}, psi, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("path functional matches composite-quadrature evaluation") {
    // Independent route: Simpson quadrature of the defining sum, fine
    // enough that the quintic integrands are resolved to ~1e-12.
    Rng rng(211);
    auto simpson = [](auto&& f, double a, double b) {
        const int panels = 2000;
        const double h = (b - a) / panels;
        double acc = f(a) + f(b);
        for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        return acc * h / 3.0;
    };

    for (int trial = 0; trial < 20; ++trial) {
        const WeightedGraph g = random_connected_graph(rng, rng.uniform_int(3, 10), false, 0.4);
        const int n = g.vertex_count();
        std::vector<Poly> psi;
        for (int v = 0; v < n; ++v) {
            psi.push_back(Poly({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                                rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}));
        }
        const double t1 = rng.uniform(-1.0, 1.0);
        const double t2 = t1 + rng.uniform(0.3, 2.0);
        const int x = rng.uniform_int(0, n - 1);
        const int y = rng.uniform_int(0, n - 1);
        if (x == y) continue;
        const auto sp = shortest_paths(g, x, y, 100);
        const auto& path = sp.paths.front();
        const int eta = static_cast<int>(path.size()) - 1;

        double expected = 0.0;
        const double span = t2 - t1;
        for (int k = 0; k < eta; ++k) {
            const double tk = t1 + span * k / eta;
            const double tk1 = t1 + span * (k + 1) / eta;
            const Poly& here = psi[static_cast<std::size_t>(path[k])];
            const Poly& next = psi[static_cast<std::size_t>(path[k + 1])];
            expected += 0.5 * simpson([&](double t) { return here(t); }, tk, tk1);
            expected += eta * eta / (2.0 * span * span) *
                        simpson([&](double t) {
                            return (t - tk) * (t - tk) * (next(t) - here(t));
                        }, tk, tk1);
        }
        const double got = path_source_functional(g, path, psi, t1, t2);
        CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("path functional property: bounded source keeps Phi within 5/6") {
    Rng rng(107);
    for (int trial = 0; trial < 200; ++trial) {
        const WeightedGraph g = random_connected_graph(rng, rng.uniform_int(2, 12), false, 0.5);
        const int n = g.vertex_count();
        const double t1 = rng.uniform(-1.0, 1.0);
        const double t2 = t1 + rng.uniform(0.3, 2.0);
        const double c0 = rng.uniform(0.2, 3.0);

        // Random cubics rescaled so max |psi| over [t1, t2] is exactly c0.
        std::vector<Poly> psi;
        double peak = 0.0;
        for (int x = 0; x < n; ++x) {
            Poly p({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                    rng.uniform(-1.0, 1.0)});
            peak = std::max(peak, max_abs_on(p, t1, t2));
            psi.push_back(p);
        }
        if (peak == 0.0) continue;
        for (auto& p : psi) p = p * (c0 / peak);

        const int x = rng.uniform_int(0, n - 1);
        const int y = rng.uniform_int(0, n - 1);
        if (x == y) continue;
        const MinPathFunctional mp = min_path_source_functional(g, x, y, psi, t1, t2);
        CHECK(mp.value <= 5.0 * c0 * (t2 - t1) / 6.0 + 1e-9);
    }
}

namespace {

struct ManufacturedRun {
    WeightedGraph graph;
    PMEProblem problem;
    IntegrationResult result;
};

// K2 scenario used throughout: u(t) = 1/(1-t), delta = -1, psi = 1, m = 2.
ManufacturedRun k2_blowup_run() {
    ManufacturedRun run{k2(), {}, {}};
    run.problem = constant_problem(run.graph, 2.0, 1.0, 1.0, 0.0, 0.5);
    IntegratorOptions opt;
    opt.extra_output_times = {0.0, 0.5};
    run.result = integrate(run.problem, opt);
    return run;
}

}  // namespace

TEST_CASE("harnack bound: K2 worked example reproduces the closed form") {
    ManufacturedRun run = k2_blowup_run();
    REQUIRE(run.result.status == IntegrationStatus::completed);

    const EstimateReport r =
        harnack_bound(run.graph, run.result.trajectory, run.problem, 0, 1, 0.0, 0.5);
    REQUIRE(r.overall == CheckStatus::pass);
    const EstimateRow& row = r.rows[0];
    CHECK(row.lhs == doctest::Approx(1.0).epsilon(1e-6));
    // exponent = D_theta*0.5 + 4/(4*0.5) + Phi = 0.5 + 2 + 0.25 = 2.75.
    CHECK(row.rhs == doctest::Approx(2.0 * std::exp(2.75)).epsilon(1e-6));
    CHECK_FALSE(r.paths_truncated);
    CHECK(r.lhs_over_rhs == doctest::Approx(1.0 / (2.0 * std::exp(2.75))).epsilon(1e-5));
    // Power-scale diagnostic: (m/2) * (2.75 - log(1/2)).
    CHECK(row.aux == doctest::Approx(2.75 + std::log(2.0)).epsilon(1e-5));
}

TEST_CASE("harnack bounded-source: dominates the path bound on K2") {
    ManufacturedRun run = k2_blowup_run();
    const EstimateReport path_r =
        harnack_bound(run.graph, run.result.trajectory, run.problem, 0, 1, 0.0, 0.5);
    const EstimateReport c0_r = harnack_bound_bounded_source(run.graph, run.result.trajectory,
                                                             run.problem, 0, 1, 0.0, 0.5, 1.0);
    REQUIRE(c0_r.overall == CheckStatus::pass);
    // exponent = (D_theta + 5 c0/6)(T2-T1) + dist term = (1 + 5/6)(0.5) + 2.
    CHECK(c0_r.rows[0].rhs ==
          doctest::Approx(2.0 * std::exp((1.0 + 5.0 / 6.0) * 0.5 + 2.0)).epsilon(1e-6));
    CHECK(c0_r.rows[0].rhs >= path_r.rows[0].rhs);
}

TEST_CASE("harnack bounded-source: rejects a source exceeding c0") {
    ManufacturedRun run = k2_blowup_run();
    CHECK_THROWS_AS(harnack_bound_bounded_source(run.graph, run.result.trajectory, run.problem, 0,
                                                 1, 0.0, 0.5, 0.5),
                    std::invalid_argument);
}

TEST_CASE("harnack bound: vacuous on a stationary solution") {
    const WeightedGraph g = k2();
    PMEProblem p = constant_problem(g, 2.0, 0.0, 1.0, 0.0, 0.5);  // u_t = 0
    IntegratorOptions opt;
    opt.extra_output_times = {0.0, 0.5};
    const IntegrationResult ir = integrate(p, opt);
    const EstimateReport r = harnack_bound(g, ir.trajectory, p, 0, 1, 0.0, 0.5);
    CHECK(r.overall == CheckStatus::vacuous);
}

TEST_CASE("harnack bound: x = y needs no path term") {
    ManufacturedRun run = k2_blowup_run();
    const EstimateReport r =
        harnack_bound(run.graph, run.result.trajectory, run.problem, 0, 0, 0.0, 0.5);
    REQUIRE(r.overall == CheckStatus::pass);
    // exponent = D_theta * 0.5 only.
    CHECK(r.rows[0].rhs == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-6));
}

TEST_CASE("harnack bound: disconnected pairs and bad times throw") {
    const WeightedGraph g = two_disjoint_edges();
    PMEProblem p = constant_problem(g, 2.0, 1.0, 1.0, 0.0, 0.4);
    IntegratorOptions opt;
    opt.extra_output_times = {0.0, 0.4};
    const IntegrationResult ir = integrate(p, opt);
    CHECK_THROWS_AS(harnack_bound(g, ir.trajectory, p, 0, 2, 0.0, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(harnack_bound(g, ir.trajectory, p, 0, 1, 0.4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(harnack_bound(g, ir.trajectory, p, 0, 1, 0.0, 0.123456), std::invalid_argument);
}

TEST_CASE("harnack bound: path cap sets the truncation flag") {
    const WeightedGraph g = c4();
    PMEProblem p = constant_problem(g, 2.0, 1.0, 1.0, 0.0, 0.4);
    IntegratorOptions opt;
    opt.extra_output_times = {0.0, 0.4};
    const IntegrationResult ir = integrate(p, opt);
    const EstimateReport r = harnack_bound(g, ir.trajectory, p, 0, 2, 0.0, 0.4, 1);
    CHECK(r.paths_truncated);
    CHECK(r.overall == CheckStatus::pass);
    const EstimateReport full = harnack_bound(g, ir.trajectory, p, 0, 2, 0.0, 0.4);
    CHECK_FALSE(full.paths_truncated);
    // Spatially constant source: every path carries the same Phi.
    CHECK(full.rows[0].rhs == doctest::Approx(r.rows[0].rhs));
}

TEST_CASE("harnack property: random manufactured runs pass whenever hypotheses hold") {
    Rng rng(109);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int pick = rng.uniform_int(0, 2);
        GeneratorOptions gopt;
        gopt.theta = rng.coin() ? ThetaMode::one : ThetaMode::degree;
        gopt.weights = rng.coin() ? WeightMode::unit : WeightMode::random;
        gopt.seed = rng.next_u64();
        const WeightedGraph g = pick == 0   ? make_path(rng.uniform_int(2, 10), gopt)
                                : pick == 1 ? make_cycle(rng.uniform_int(3, 10), gopt)
                                            : make_complete(rng.uniform_int(2, 6), gopt);
        const double m = std::vector<double>{1.5, 2.0, 3.0}[rng.uniform_int(0, 2)];
        const double psi0 = rng.uniform(0.1, 1.0);
        const double u0 = rng.uniform(0.5, 2.0);
        const double t_end = 0.6 * constant_solution_blowup_time(u0, m, psi0);

        PMEProblem p = constant_problem(g, m, psi0, u0, 0.0, t_end);
        const IntegrationResult ir = integrate(p);
        REQUIRE(ir.status == IntegrationStatus::completed);

        for (int rep = 0; rep < 5; ++rep) {
            const int count = static_cast<int>(ir.trajectory.times.size());
            int i1 = rng.uniform_int(0, count - 2);
            int i2 = rng.uniform_int(i1 + 1, count - 1);
            const int x = rng.uniform_int(0, g.vertex_count() - 1);
            const int y = rng.uniform_int(0, g.vertex_count() - 1);
            const EstimateReport r =
                harnack_bound(g, ir.trajectory, p, x, y, ir.trajectory.times[i1],
                              ir.trajectory.times[i2]);
            CHECK(r.overall == CheckStatus::pass);
            ++checked;
        }
    }
    CHECK(checked == 150);
}
