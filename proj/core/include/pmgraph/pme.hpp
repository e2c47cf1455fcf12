#pragma once

#include <string>
#include <vector>

#include "pmgraph/graph.hpp"
#include "pmgraph/poly.hpp"

namespace pmg {

/// The evolution problem L(u^m) = delta(x) u_t + psi(x,t) u^m on a fixed
/// graph. psi is a per-vertex polynomial in t (degree <= 3) so every time
/// integral downstream is exact. With delta < 0 the equation is backward
/// parabolic; blow-up in finite time is the normal regime, not a failure.
struct PMEProblem {
    const WeightedGraph* graph = nullptr;
    double m = 2.0;
    VertexField delta;       // per vertex, nonzero everywhere
    std::vector<Poly> psi;   // per vertex, polynomial in t
    VertexField u0;          // strictly positive initial state
    double t_begin = 0.0;
    double t_end = 1.0;

    VertexField psi_at(double t) const;

    /// Checks the structural invariants (sizes, delta != 0, u0 > 0,
    /// t_begin < t_end); `theorem_mode` additionally requires m > 1.
    void validate(bool theorem_mode = false) const;
};

/// u_t solved from the equation: u_t(x) = (L(u^m)(x) - psi(x,t) u^m(x)) / delta(x).
VertexField pme_rhs(const PMEProblem& problem, const VertexField& u, double t);

enum class IntegrationStatus {
    completed,
    blow_up,          // state norm exceeded the ceiling
    positivity_loss,  // some vertex fell below the positivity floor
};

struct IntegratorOptions {
    enum class Scheme { explicit_rk4, adaptive };
    Scheme scheme = Scheme::adaptive;
    double tolerance = 1e-8;        // local error per unit time (adaptive)
    double fixed_step = 1e-3;       // step size for explicit_rk4
    double positivity_floor = 1e-12;
    double blowup_ceiling = 1e12;
    int output_points = 33;         // uniform output grid size (>= 2)
    std::vector<double> extra_output_times;  // merged into the grid
};

/// Time-indexed solution states. `ut` holds the equation's right-hand side
/// recomputed at each stored state (never a finite difference of states);
/// `step_error` is the integrator's accumulated local-error estimate up to
/// each stored time (0 for the fixed-step scheme).
struct Trajectory {
    std::vector<double> times;
    std::vector<VertexField> states;
    std::vector<VertexField> ut;
    std::vector<double> step_error;

    int find_time(double t, double tol = 1e-9) const;  // index or -1
    const VertexField& state_at(double t) const;       // throws if t not stored
};

struct IntegrationResult {
    Trajectory trajectory;
    IntegrationStatus status = IntegrationStatus::completed;
    double t_reached = 0.0;
    std::string diagnostic;
};

/// Integrates the problem over [t_begin, t_end] with classical 4th-order
/// steps; the adaptive scheme controls local error by step doubling.
/// Blow-up and positivity loss end the run early with the partial
/// trajectory and a diagnostic.
IntegrationResult integrate(const PMEProblem& problem, const IntegratorOptions& options = {});

/// Per-timestamp record of the structural hypotheses u > 0 and u_t > 0
/// (via the equation), plus the time-independent delta < 0 and m > 1.
struct HypothesisReport {
    struct Entry {
        double t;
        bool u_positive;
        bool ut_positive;
    };
    std::vector<Entry> per_time;
    bool delta_negative = false;
    bool m_greater_one = false;
    bool all_hold = false;

    /// True when the hypotheses hold at every stored time in [t1, t2].
    bool hold_on(double t1, double t2) const;
};

HypothesisReport hypothesis_check(const PMEProblem& problem, const Trajectory& traj);

}  // namespace pmg
