#include "pmgraph/estimates.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pmgraph/calculus.hpp"

namespace pmg {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::vacuous: return "vacuous";
    }
    return "?";
}

void EstimateReport::finish() {
    overall = CheckStatus::pass;
    worst_row = -1;
    worst_margin = std::numeric_limits<double>::infinity();
    bool any_nonvacuous = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.status == CheckStatus::vacuous) continue;
        any_nonvacuous = true;
        if (r.margin < worst_margin) {
            worst_margin = r.margin;
            worst_row = static_cast<int>(i);
        }
        if (r.status == CheckStatus::fail) overall = CheckStatus::fail;
    }
    if (!any_nonvacuous) {
        overall = CheckStatus::vacuous;
        worst_margin = 0.0;
    }
}

EstimateReport check_gradient_estimate(const WeightedGraph& g, const VertexField& u,
                                       const VertexField& psi, const VertexField& delta, double m,
                                       double tol) {
    if (!all_positive(u)) {
        throw std::invalid_argument("check_gradient_estimate: u must be strictly positive");
    }
    const GraphConstants gc = constants(g);
    const double d_theta = gc.d_theta;

    const VertexField um = pow_field(u, m);
    const VertexField uh = pow_field(u, m / 2.0);
    const VertexField lap_um = laplacian(g, um);
    const VertexField lap_uh = laplacian(g, uh);
    const VertexField gamma_uh = gradient_form(g, uh);

    EstimateReport report;
    for (int x = 0; x < g.vertex_count(); ++x) {
        // u_t from the equation makes delta*u_t + psi*u^m collapse to L(u^m).
        const double ut = (lap_um[x] - psi[x] * um[x]) / delta[x];
        const double lhs = gamma_uh[x] / um[x] - (delta[x] * ut + psi[x] * um[x]) / (2.0 * um[x]);
        const double reduced = -lap_uh[x] / uh[x];

        EstimateRow row;
        row.x = row.y = x;
        row.lhs = lhs;
        row.rhs = d_theta;
        row.margin = d_theta - lhs;
        row.aux = reduced;
        row.status = row.margin >= -pass_tolerance(lhs, d_theta, tol) ? CheckStatus::pass
                                                                      : CheckStatus::fail;
        report.rows.push_back(row);
    }
    report.finish();
    return report;
}

EstimateReport check_li_yau_estimate(const WeightedGraph& g, const VertexField& u,
                                     const VertexField& psi, const VertexField& delta, double m,
                                     const VertexField& ut, double tol) {
    const GraphConstants gc = constants(g);
    const double d_theta = gc.d_theta;

    const bool hyp_ok = all_positive(u) && all_positive(ut) && m > 1.0 &&
                        std::all_of(delta.begin(), delta.end(), [](double d) { return d < 0.0; });

    EstimateReport report;
    if (!hyp_ok) {
        report.note = "hypotheses (u > 0, u_t > 0, delta < 0, m > 1) do not hold";
        for (int x = 0; x < g.vertex_count(); ++x) {
            EstimateRow row;
            row.x = row.y = x;
            row.status = CheckStatus::vacuous;
            report.rows.push_back(row);
        }
        report.finish();
        return report;
    }

    const VertexField um = pow_field(u, m);
    const VertexField uh = pow_field(u, m / 2.0);
    const VertexField gamma_uh = gradient_form(g, uh);

    for (int x = 0; x < g.vertex_count(); ++x) {
        const double base = gamma_uh[x] / um[x] - ut[x] / u[x];
        const double lhs = base + psi[x] / 2.0;

        EstimateRow row;
        row.x = row.y = x;
        row.lhs = lhs;
        row.rhs = d_theta;
        row.margin = d_theta - lhs;
        row.aux = base - psi[x] / 2.0;  // source term subtracted
        row.status = row.margin >= -pass_tolerance(lhs, d_theta, tol) ? CheckStatus::pass
                                                                      : CheckStatus::fail;
        report.rows.push_back(row);
    }
    report.finish();
    return report;
}

double path_source_functional(const WeightedGraph& g, const std::vector<int>& path,
                              const std::vector<Poly>& psi, double t1, double t2) {
    if (path.size() < 2) {
        throw std::invalid_argument("path_source_functional: path must have at least one edge");
    }
    if (!(t1 < t2)) {
        throw std::invalid_argument("path_source_functional: requires T1 < T2");
    }
    // Reject anything that is not a shortest path between its endpoints.
    const auto levels = bfs_levels(g, path.front());
    const int eta = static_cast<int>(path.size()) - 1;
    if (levels[path.back()] != eta) {
        throw std::invalid_argument("path_source_functional: not a shortest path");
    }
    for (int k = 0; k < eta; ++k) {
        const auto& nbrs = g.adjacency[path[k]];
        const bool adjacent = std::any_of(nbrs.begin(), nbrs.end(),
                                          [&](const auto& e) { return e.first == path[k + 1]; });
        if (!adjacent || levels[path[k + 1]] != k + 1) {
            throw std::invalid_argument("path_source_functional: not a shortest path");
        }
    }

    const double span = t2 - t1;
    const double weight = static_cast<double>(eta) * static_cast<double>(eta) /
                          (2.0 * span * span);
    double phi = 0.0;
    for (int k = 0; k < eta; ++k) {
        const double tk = t1 + span * static_cast<double>(k) / static_cast<double>(eta);
        const double tk1 = t1 + span * static_cast<double>(k + 1) / static_cast<double>(eta);
        const Poly& here = psi[static_cast<std::size_t>(path[k])];
        const Poly& next = psi[static_cast<std::size_t>(path[k + 1])];
        phi += 0.5 * here.integral(tk, tk1);
        phi += weight * (next - here).integral_shifted_sq(tk, tk1);
    }
    return phi;
}

MinPathFunctional min_path_source_functional(const WeightedGraph& g, int x, int y,
                                             const std::vector<Poly>& psi, double t1, double t2,
                                             std::size_t path_cap) {
    MinPathFunctional out;
    if (x == y) {
        out.argmin_path = {x};
        return out;  // empty sum
    }
    const ShortestPaths sp = shortest_paths(g, x, y, path_cap);
    out.truncated = sp.truncated;
    out.value = std::numeric_limits<double>::infinity();
    for (const auto& path : sp.paths) {
        const double phi = path_source_functional(g, path, psi, t1, t2);
        if (phi < out.value) {  // strict: first minimizer in lexicographic order wins
            out.value = phi;
            out.argmin_path = path;
        }
    }
    return out;
}

namespace {

struct HarnackContext {
    double u_x_t1 = 0.0;
    double u_y_t2 = 0.0;
    int dist = 0;
    bool hypotheses_hold = false;
};

HarnackContext harnack_context(const WeightedGraph& g, const Trajectory& traj,
                               const PMEProblem& problem, int x, int y, double t1, double t2) {
    if (!(t1 < t2)) throw std::invalid_argument("harnack: requires T1 < T2");
    const auto d = distance(g, x, y);
    if (!d) throw std::invalid_argument("harnack: vertices are disconnected");
    const int i1 = traj.find_time(t1);
    const int i2 = traj.find_time(t2);
    if (i1 < 0 || i2 < 0) {
        throw std::invalid_argument("harnack: T1 and T2 must be stored trajectory times");
    }
    HarnackContext ctx;
    ctx.dist = *d;
    ctx.u_x_t1 = traj.states[static_cast<std::size_t>(i1)][static_cast<std::size_t>(x)];
    ctx.u_y_t2 = traj.states[static_cast<std::size_t>(i2)][static_cast<std::size_t>(y)];
    ctx.hypotheses_hold = hypothesis_check(problem, traj).hold_on(t1, t2);
    return ctx;
}

EstimateRow make_harnack_row(const HarnackContext& ctx, int x, int y, double t1, double t2,
                             double exponent, double m, double tol) {
    EstimateRow row;
    row.x = x;
    row.y = y;
    row.t1 = t1;
    row.t2 = t2;
    row.lhs = ctx.u_x_t1;
    row.rhs = ctx.u_y_t2 * std::exp(exponent);
    row.margin = row.rhs - row.lhs;
    // Margin for log u^{m/2}: (m/2) * (exponent - log(u(x,T1)/u(y,T2))).
    row.aux = 0.5 * m * (exponent - std::log(ctx.u_x_t1 / ctx.u_y_t2));
    row.status = row.margin >= -pass_tolerance(row.lhs, row.rhs, tol) ? CheckStatus::pass
                                                                      : CheckStatus::fail;
    return row;
}

}  // namespace

EstimateReport harnack_bound(const WeightedGraph& g, const Trajectory& traj,
                             const PMEProblem& problem, int x, int y, double t1, double t2,
                             std::size_t path_cap, double tol) {
    problem.validate(true);
    const HarnackContext ctx = harnack_context(g, traj, problem, x, y, t1, t2);
    const GraphConstants gc = constants(g);

    EstimateReport report;
    if (!ctx.hypotheses_hold) {
        EstimateRow row;
        row.x = x;
        row.y = y;
        row.t1 = t1;
        row.t2 = t2;
        row.status = CheckStatus::vacuous;
        report.rows.push_back(row);
        report.note = "hypotheses do not hold on [T1, T2]";
        report.finish();
        return report;
    }

    const MinPathFunctional phi = min_path_source_functional(g, x, y, problem.psi, t1, t2, path_cap);
    const double span = t2 - t1;
    const double dd = static_cast<double>(ctx.dist);
    const double exponent = gc.d_theta * span +
                            4.0 * gc.theta_max * dd * dd /
                                (problem.m * problem.m * gc.omega_min * span) +
                            phi.value;

    report.paths_truncated = phi.truncated;
    if (phi.truncated) report.note = "path cap hit: min Phi is an upper bound for the true minimum";
    report.rows.push_back(make_harnack_row(ctx, x, y, t1, t2, exponent, problem.m, tol));
    report.lhs_over_rhs = report.rows.back().lhs / report.rows.back().rhs;
    report.finish();
    return report;
}

EstimateReport harnack_bound_bounded_source(const WeightedGraph& g, const Trajectory& traj,
                                            const PMEProblem& problem, int x, int y, double t1,
                                            double t2, double c0, std::size_t path_cap,
                                            double tol) {
    problem.validate(true);
    for (const auto& p : problem.psi) {
        if (max_abs_on(p, t1, t2) > c0 * (1.0 + 1e-12) + 1e-300) {
            throw std::invalid_argument("harnack_bound_bounded_source: |psi| exceeds c0 on [T1, T2]");
        }
    }
    const HarnackContext ctx = harnack_context(g, traj, problem, x, y, t1, t2);
    const GraphConstants gc = constants(g);

    EstimateReport report;
    if (!ctx.hypotheses_hold) {
        EstimateRow row;
        row.x = x;
        row.y = y;
        row.t1 = t1;
        row.t2 = t2;
        row.status = CheckStatus::vacuous;
        report.rows.push_back(row);
        report.note = "hypotheses do not hold on [T1, T2]";
        report.finish();
        return report;
    }

    const double span = t2 - t1;
    const double dd = static_cast<double>(ctx.dist);
    const double dist_term =
        4.0 * gc.theta_max * dd * dd / (problem.m * problem.m * gc.omega_min * span);
    const double exponent = (gc.d_theta + 5.0 * c0 / 6.0) * span + dist_term;

    report.rows.push_back(make_harnack_row(ctx, x, y, t1, t2, exponent, problem.m, tol));
    report.lhs_over_rhs = report.rows.back().lhs / report.rows.back().rhs;

    // The simplified exponent must dominate the path-functional exponent:
    // min Phi <= 5 c0 (T2-T1) / 6 for any admissible source.
    const MinPathFunctional phi = min_path_source_functional(g, x, y, problem.psi, t1, t2, path_cap);
    report.paths_truncated = phi.truncated;
    const double phi_cap = 5.0 * c0 * span / 6.0;
    if (phi.value > phi_cap + pass_tolerance(phi.value, phi_cap, tol)) {
        report.rows.back().status = CheckStatus::fail;
        report.note = "path functional exceeds its bounded-source cap";
    }
    report.finish();
    return report;
}

}  // namespace pmg
