#pragma once

#include <optional>

#include "pmgraph/graph.hpp"

namespace pmg {

/// Fields below a floor of this magnitude are rejected before taking real
/// powers (elementwise std::pow needs strictly positive bases).
inline constexpr double kPowerPositivityFloor = 1e-300;

/// Laplacian with vertex measure: (Lu)(x) = (1/theta(x)) * sum over y~x of
/// w_xy (u(y) - u(x)).
VertexField laplacian(const WeightedGraph& g, const VertexField& u);

/// Gradient form (carre du champ):
/// G(u,v)(x) = (1/(2 theta(x))) * sum over y~x of w_xy (u(y)-u(x))(v(y)-v(x)).
VertexField gradient_form(const WeightedGraph& g, const VertexField& u, const VertexField& v);

/// G(u) = G(u,u); nonnegative everywhere.
VertexField gradient_form(const WeightedGraph& g, const VertexField& u);

/// Elementwise u^p; throws when any entry is at or below `floor`.
VertexField pow_field(const VertexField& u, double p, double floor = kPowerPositivityFloor);

/// Residual of the discrete power identity
///   L(u^m) = 2 u^{m/2} L(u^{m/2}) + 2 G(u^{m/2})
/// evaluated per vertex; exact algebra, so it vanishes up to rounding for
/// every strictly positive u and every real m.
VertexField power_identity_residual(const WeightedGraph& g, const VertexField& u, double m,
                                    double floor = kPowerPositivityFloor);

/// One counterexample to the continuum chain rule
///   L(u^p) = p u^{p-1} Lu + ((p-1)/p) u^{-p} |grad u^p|^2
/// with |grad f|^2 read as 2 G(f). The search draws random positive fields
/// and reports the first vertex where the two sides disagree beyond
/// rounding, or nullopt when the search budget is exhausted (p = 1 is the
/// plain Laplacian and never yields a witness).
struct ChainRuleWitness {
    VertexField u;
    int vertex = -1;
    double lhs = 0.0;  // L(u^p)(vertex)
    double rhs = 0.0;  // chain-rule prediction at vertex
};

std::optional<ChainRuleWitness> chain_rule_counterexample(const WeightedGraph& g, double p,
                                                          unsigned long long seed = 0,
                                                          int attempts = 64);

/// Largest |residual| scaled by the largest term entering the identity;
/// the relative tolerance the module's checks quote.
double max_relative_residual(const WeightedGraph& g, const VertexField& u, double m,
                             double floor = kPowerPositivityFloor);

}  // namespace pmg
