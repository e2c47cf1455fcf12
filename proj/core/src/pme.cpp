#include "pmgraph/pme.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pmgraph/calculus.hpp"

namespace pmg {

VertexField PMEProblem::psi_at(double t) const {
    VertexField out(psi.size());
    for (std::size_t x = 0; x < psi.size(); ++x) out[x] = psi[x](t);
    return out;
}

void PMEProblem::validate(bool theorem_mode) const {
    if (graph == nullptr) throw std::invalid_argument("problem: graph not set");
    const auto n = static_cast<std::size_t>(graph->vertex_count());
    if (delta.size() != n || psi.size() != n || u0.size() != n) {
        throw std::invalid_argument("problem: field sizes do not match vertex count");
    }
    for (double d : delta) {
        if (d == 0.0) throw std::invalid_argument("problem: delta must be nonzero everywhere");
    }
    if (!all_positive(u0)) throw std::invalid_argument("problem: u0 must be strictly positive");
    if (!(t_begin < t_end)) throw std::invalid_argument("problem: tspan must satisfy T1 < T2");
    if (theorem_mode && !(m > 1.0)) {
        throw std::invalid_argument("problem: theorem mode requires m > 1");
    }
}

VertexField pme_rhs(const PMEProblem& problem, const VertexField& u, double t) {
    if (!all_positive(u)) {
        throw std::invalid_argument("pme_rhs: state must be strictly positive");
    }
    const VertexField um = pow_field(u, problem.m);
    const VertexField lap_um = laplacian(*problem.graph, um);
    VertexField out(u.size());
    for (std::size_t x = 0; x < u.size(); ++x) {
        if (problem.delta[x] == 0.0) throw std::invalid_argument("pme_rhs: zero delta");
        out[x] = (lap_um[x] - problem.psi[x](t) * um[x]) / problem.delta[x];
    }
    return out;
}

namespace {

enum class StepOutcome { ok, nonpositive, nonfinite };

// One classical RK4 step. An intermediate stage leaving the admissible
// region (non-positive or non-finite state) rejects the step and reports
// which way it left.
StepOutcome rk4_step(const PMEProblem& p, const VertexField& u, double t, double h, double floor,
                     VertexField& out) {
    const std::size_t n = u.size();
    StepOutcome outcome = StepOutcome::ok;
    auto advance = [&](const VertexField& base, const VertexField& k, double factor,
                       VertexField& dst) -> bool {
        dst.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            dst[i] = base[i] + factor * k[i];
            if (!std::isfinite(dst[i])) {
                outcome = StepOutcome::nonfinite;
                return false;
            }
            if (!(dst[i] > floor)) {
                outcome = StepOutcome::nonpositive;
                return false;
            }
        }
        return true;
    };

    VertexField stage;
    const VertexField k1 = pme_rhs(p, u, t);
    if (!advance(u, k1, h / 2.0, stage)) return outcome;
    const VertexField k2 = pme_rhs(p, stage, t + h / 2.0);
    if (!advance(u, k2, h / 2.0, stage)) return outcome;
    const VertexField k3 = pme_rhs(p, stage, t + h / 2.0);
    if (!advance(u, k3, h, stage)) return outcome;
    const VertexField k4 = pme_rhs(p, stage, t + h);

    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = u[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(out[i])) return StepOutcome::nonfinite;
    }
    return StepOutcome::ok;
}

double max_abs(const VertexField& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> build_output_grid(const PMEProblem& problem, const IntegratorOptions& opt) {
    const int count = std::max(2, opt.output_points);
    std::set<double> grid;
    for (int i = 0; i < count; ++i) {
        grid.insert(problem.t_begin +
                    (problem.t_end - problem.t_begin) * static_cast<double>(i) /
                        static_cast<double>(count - 1));
    }
    for (double t : opt.extra_output_times) {
        if (t >= problem.t_begin && t <= problem.t_end) grid.insert(t);
    }
    return {grid.begin(), grid.end()};
}

}  // namespace

int Trajectory::find_time(double t, double tol) const {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - t) <= tol) return static_cast<int>(i);
    }
    return -1;
}

const VertexField& Trajectory::state_at(double t) const {
    const int i = find_time(t);
    if (i < 0) throw std::invalid_argument("trajectory: time not stored");
    return states[static_cast<std::size_t>(i)];
}

IntegrationResult integrate(const PMEProblem& problem, const IntegratorOptions& options) {
    problem.validate(false);
    IntegrationResult result;
    Trajectory& traj = result.trajectory;

    const auto grid = build_output_grid(problem, options);
    const double floor = options.positivity_floor;

    VertexField u = problem.u0;
    double t = problem.t_begin;
    double accumulated_error = 0.0;

    auto store = [&](double at) {
        traj.times.push_back(at);
        traj.states.push_back(u);
        traj.ut.push_back(pme_rhs(problem, u, at));
        traj.step_error.push_back(accumulated_error);
    };

    auto fail = [&](IntegrationStatus status, const std::string& msg) {
        result.status = status;
        result.t_reached = t;
        result.diagnostic = msg;
        return result;
    };

    if (!all_positive(u, floor)) {
        return fail(IntegrationStatus::positivity_loss, "initial state at or below positivity floor");
    }
    store(t);

    const bool adaptive = options.scheme == IntegratorOptions::Scheme::adaptive;
    double h = adaptive ? (problem.t_end - problem.t_begin) /
                              static_cast<double>(std::max(2, options.output_points) - 1)
                        : options.fixed_step;
    if (!(h > 0.0)) throw std::invalid_argument("integrate: step size must be positive");

    const double h_min = (problem.t_end - problem.t_begin) * 1e-14;
    const double growth_scale = 1e3 * (1.0 + max_abs(problem.u0));

    // Names the reason a run cannot continue once the controller has
    // collapsed to the minimum step: a finite-time singularity outruns any
    // explicit stepper long before the norm ceiling itself is reachable.
    auto stalled = [&](StepOutcome outcome) {
        if (outcome == StepOutcome::nonfinite ||
            (outcome == StepOutcome::ok && max_abs(u) > growth_scale)) {
            return fail(IntegrationStatus::blow_up,
                        "blow-up detected at t=" + std::to_string(t) +
                            " (minimum step size reached while the state grows)");
        }
        return fail(IntegrationStatus::positivity_loss,
                    "state left the positive region at t=" + std::to_string(t));
    };

    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
        const double t_target = grid[gi];
        while (t < t_target - 1e-14 * std::max(1.0, std::abs(t_target))) {
            double step = std::min(h, t_target - t);
            VertexField next;

            if (!adaptive) {
                const StepOutcome outcome = rk4_step(problem, u, t, step, floor, next);
                if (outcome != StepOutcome::ok) return stalled(outcome);
            } else {
                // Step doubling: one full step vs two half steps; the
                // difference/15 estimates the local error of the half-step
                // result, which is the one accepted.
                VertexField full, half, half2;
                StepOutcome outcome = rk4_step(problem, u, t, step, floor, full);
                if (outcome == StepOutcome::ok) {
                    outcome = rk4_step(problem, u, t, step / 2.0, floor, half);
                }
                if (outcome == StepOutcome::ok) {
                    outcome = rk4_step(problem, half, t + step / 2.0, step / 2.0, floor, half2);
                }

                const bool ok = outcome == StepOutcome::ok;
                double err = 0.0;
                if (ok) {
                    for (std::size_t i = 0; i < u.size(); ++i) {
                        err = std::max(err, std::abs(full[i] - half2[i]) / 15.0);
                    }
                }
                const double tol_step = options.tolerance * step * std::max(1.0, max_abs(u));
                if (!ok || err > tol_step) {
                    if (step <= h_min * 1.01) return stalled(outcome);
                    h = std::max(step * (ok ? std::max(0.2, 0.9 * std::pow(tol_step / err, 0.2))
                                            : 0.25),
                                 h_min);
                    continue;  // retry with the smaller step
                }
                next = std::move(half2);
                accumulated_error += err;
                // Grow cautiously; clamp the increase to 5x.
                h = err > 0.0
                        ? step * std::min(5.0, std::max(0.2, 0.9 * std::pow(tol_step / err, 0.2)))
                        : step * 5.0;
            }

            if (!all_positive(next, floor)) {
                t += step;
                u = std::move(next);
                return fail(IntegrationStatus::positivity_loss,
                            "positivity floor reached at t=" + std::to_string(t));
            }
            if (max_abs(next) > options.blowup_ceiling) {
                t += step;
                u = std::move(next);
                return fail(IntegrationStatus::blow_up,
                            "blow-up detected at t=" + std::to_string(t) +
                                " (norm above ceiling)");
            }
            u = std::move(next);
            t += step;
        }
        t = t_target;
        store(t);
    }

    result.status = IntegrationStatus::completed;
    result.t_reached = t;
    return result;
}

HypothesisReport hypothesis_check(const PMEProblem& problem, const Trajectory& traj) {
    HypothesisReport report;
    report.delta_negative =
        std::all_of(problem.delta.begin(), problem.delta.end(), [](double d) { return d < 0.0; });
    report.m_greater_one = problem.m > 1.0;

    bool states_ok = true;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        HypothesisReport::Entry e;
        e.t = traj.times[i];
        e.u_positive = all_positive(traj.states[i]);
        e.ut_positive = e.u_positive &&
                        all_positive(traj.ut.empty() ? pme_rhs(problem, traj.states[i], e.t)
                                                     : traj.ut[i]);
        states_ok = states_ok && e.u_positive && e.ut_positive;
        report.per_time.push_back(e);
    }
    report.all_hold = states_ok && report.delta_negative && report.m_greater_one &&
                      !traj.times.empty();
    return report;
}

bool HypothesisReport::hold_on(double t1, double t2) const {
    if (!delta_negative || !m_greater_one) return false;
    bool any = false;
    for (const auto& e : per_time) {
        if (e.t >= t1 - 1e-12 && e.t <= t2 + 1e-12) {
            any = true;
            if (!e.u_positive || !e.ut_positive) return false;
        }
    }
    return any;
}

}  // namespace pmg
