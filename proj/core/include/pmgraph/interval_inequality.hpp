#pragma once

#include "pmgraph/poly.hpp"

namespace pmg {

/// Instance of the interval minimization inequality used by the Harnack
/// argument: for constants c, alpha > 0 and functions gamma, psi1, psi2
/// on [t1, t2],
///   min over s in (t1,t2) of
///     gamma(s) - (1/c) int_s^{t2} gamma^2 + alpha int_{t1}^s psi1 + alpha int_s^{t2} psi2
///   <= c/(t2-t1) + alpha int_{t1}^{t2} psi1
///      + alpha/(t2-t1)^2 int_{t1}^{t2} (t-t1)^2 (psi2 - psi1).
/// The correction term carries the left-endpoint weight (t-t1)^2, the same
/// weight the path functional uses per segment. Functions are cubic
/// polynomials so all integrals are exact; only the minimization over s is
/// discretized.
struct IntervalInequalityInstance {
    double c = 1.0;
    double alpha = 1.0;
    double t1 = 0.0;
    double t2 = 1.0;
    Poly gamma;
    Poly psi1;
    Poly psi2;

    void validate() const;
};

struct IntervalInequalityResult {
    double lhs = 0.0;   // grid minimum (an upper bound for the true minimum)
    double rhs = 0.0;
    double margin = 0.0;
    bool holds = false;
    int grid_used = 0;  // interior points of the final grid
};

/// Evaluates the bracketed expression on a uniform interior s-grid and
/// compares its minimum against the closed-form right-hand side. Since a
/// grid minimum over-estimates the true minimum, a pass is conservative;
/// an apparent violation triggers nested grid refinement (up to
/// `max_grid` interior points) before it is surfaced as a failure.
IntervalInequalityResult check_interval_inequality(const IntervalInequalityInstance& instance,
                                                   int grid = 1023, double tol = 1e-9,
                                                   int max_grid = (1 << 20));

/// Single evaluation of the bracketed expression at s (exposed for tests).
double interval_inequality_bracket(const IntervalInequalityInstance& instance, double s);

/// Closed-form right-hand side.
double interval_inequality_rhs(const IntervalInequalityInstance& instance);

}  // namespace pmg
