#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pmgraph/graph.hpp"
#include "pmgraph/pme.hpp"
#include "pmgraph/poly.hpp"

namespace pmg {

enum class CheckStatus { pass, fail, vacuous };

const char* to_string(CheckStatus s);

/// One verified inequality instance. For pointwise estimates x == y and
/// t1 == t2 (the evaluation time); for two-point bounds the four keys are
/// the compared space-time points. `margin` = rhs - lhs; `aux` carries a
/// check-specific diagnostic (reduced-form lhs, alternate-sign lhs, or the
/// power-scale margin), NaN when unused.
struct EstimateRow {
    int x = -1;
    int y = -1;
    double t1 = 0.0;
    double t2 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double aux = std::numeric_limits<double>::quiet_NaN();
    CheckStatus status = CheckStatus::pass;
};

struct EstimateReport {
    std::vector<EstimateRow> rows;
    CheckStatus overall = CheckStatus::pass;
    int worst_row = -1;        // index of the smallest margin among non-vacuous rows
    double worst_margin = 0.0;
    bool paths_truncated = false;  // Harnack only: path cap hit, min is an upper bound
    // Harnack only: u(x,T1) / bound; well below 1 when the bound has slack.
    double lhs_over_rhs = std::numeric_limits<double>::quiet_NaN();
    std::string note;

    void finish();  // fills overall/worst from rows
};

/// Inequalities are analytically non-strict; rounding must not flip them.
inline double pass_tolerance(double lhs, double rhs, double tol = 1e-9) {
    return tol * (1.0 + std::abs(lhs) + std::abs(rhs));
}

/// Pointwise gradient estimate for a positive function: with u_t recovered
/// from the equation,
///   G(u^{m/2})/u^m - (delta u_t + psi u^m)/(2 u^m) <= D_theta.
/// Unconditional for u > 0, m real. Each row's `aux` holds the reduced
/// form -L(u^{m/2})/u^{m/2}, an independent evaluation of the same
/// quantity used as a cross-check.
EstimateReport check_gradient_estimate(const WeightedGraph& g, const VertexField& u,
                                       const VertexField& psi, const VertexField& delta, double m,
                                       double tol = 1e-9);

/// Li-Yau-type estimate for increasing positive solutions (u_t > 0,
/// delta < 0, m > 1):
///   G(u^{m/2})/u^m - u_t/u + psi/2 <= D_theta.
/// Hypothesis failures mark the report vacuous, never failed. `aux` holds
/// the variant with the source term subtracted (the form the Harnack
/// derivation integrates), which is valid whenever the hypotheses hold.
EstimateReport check_li_yau_estimate(const WeightedGraph& g, const VertexField& u,
                                     const VertexField& psi, const VertexField& delta, double m,
                                     const VertexField& ut, double tol = 1e-9);

/// Path functional in the Harnack exponent. For a shortest path
/// x = x_0, ..., x_eta = y and the equal partition t_k = T1 + k(T2-T1)/eta:
///   sum_k [ 1/2 * int_{t_k}^{t_{k+1}} psi(x_k, t) dt
///         + eta^2/(2(T2-T1)^2) * int_{t_k}^{t_{k+1}} (t-t_k)^2 (psi(x_{k+1},t)-psi(x_k,t)) dt ].
/// Integrals are exact for polynomial psi. Throws when the path is not a
/// shortest path of its endpoints.
double path_source_functional(const WeightedGraph& g, const std::vector<int>& path,
                              const std::vector<Poly>& psi, double t1, double t2);

/// Minimum of the path functional over enumerated shortest paths;
/// `truncated` reports a hit path cap (the min is then an upper bound for
/// the true minimum, still valid in the exponent).
struct MinPathFunctional {
    double value = 0.0;
    std::vector<int> argmin_path;
    bool truncated = false;
};
MinPathFunctional min_path_source_functional(const WeightedGraph& g, int x, int y,
                                             const std::vector<Poly>& psi, double t1, double t2,
                                             std::size_t path_cap = 10000);

/// Two-point Harnack bound along a stored trajectory:
///   u(x,T1) <= u(y,T2) * exp{ D_theta (T2-T1)
///                            + 4 theta_max dist(x,y)^2 / (m^2 omega_min (T2-T1))
///                            + min Phi }.
/// Vacuous when the structural hypotheses fail at some stored time in
/// [T1, T2]. The single row's `aux` holds the margin expressed for
/// log u^{m/2} (the (m/2)-scaled log margin).
EstimateReport harnack_bound(const WeightedGraph& g, const Trajectory& traj,
                             const PMEProblem& problem, int x, int y, double t1, double t2,
                             std::size_t path_cap = 10000, double tol = 1e-9);

/// Simplified Harnack bound under |psi| <= c0:
///   u(x,T1) <= u(y,T2) * exp{ (D_theta + 5 c0/6)(T2-T1)
///                            + 4 theta_max dist(x,y)^2 / (m^2 omega_min (T2-T1)) }.
/// Verifies the bound, that psi really is within c0 on [T1,T2] (exact on
/// the polynomial representation), and that the simplified exponent
/// dominates the path-functional exponent (min Phi <= 5 c0 (T2-T1)/6).
EstimateReport harnack_bound_bounded_source(const WeightedGraph& g, const Trajectory& traj,
                                            const PMEProblem& problem, int x, int y, double t1,
                                            double t2, double c0, std::size_t path_cap = 10000,
                                            double tol = 1e-9);

}  // namespace pmg
