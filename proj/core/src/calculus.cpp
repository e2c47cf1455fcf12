#include "pmgraph/calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "pmgraph/rng.hpp"

namespace pmg {

namespace {

void check_size(const WeightedGraph& g, const VertexField& u, const char* what) {
    if (static_cast<int>(u.size()) != g.vertex_count()) {
        throw std::invalid_argument(std::string(what) + ": field length does not match vertex count");
    }
}

}  // namespace

VertexField laplacian(const WeightedGraph& g, const VertexField& u) {
    check_size(g, u, "laplacian");
    const int n = g.vertex_count();
    VertexField out(n, 0.0);
    for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (const auto& [y, w] : g.adjacency[x]) {
            acc += w * (u[y] - u[x]);
        }
        out[x] = acc / g.theta[x];
    }
    return out;
}

VertexField gradient_form(const WeightedGraph& g, const VertexField& u, const VertexField& v) {
    check_size(g, u, "gradient_form");
    check_size(g, v, "gradient_form");
    const int n = g.vertex_count();
    VertexField out(n, 0.0);
    for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (const auto& [y, w] : g.adjacency[x]) {
            acc += w * ((u[y] - u[x]) * (v[y] - v[x]));
        }
        out[x] = acc / (2.0 * g.theta[x]);
    }
    return out;
}

VertexField gradient_form(const WeightedGraph& g, const VertexField& u) {
    return gradient_form(g, u, u);
}

VertexField pow_field(const VertexField& u, double p, double floor) {
    if (!all_positive(u, floor)) {
        throw std::invalid_argument("pow_field: field must be strictly positive");
    }
    VertexField out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::pow(u[i], p);
    return out;
}

VertexField power_identity_residual(const WeightedGraph& g, const VertexField& u, double m,
                                    double floor) {
    check_size(g, u, "power_identity_residual");
    const VertexField um = pow_field(u, m, floor);
    const VertexField uh = pow_field(u, m / 2.0, floor);
    const VertexField lap_um = laplacian(g, um);
    const VertexField lap_uh = laplacian(g, uh);
    const VertexField gamma_uh = gradient_form(g, uh);

    VertexField res(u.size());
    for (std::size_t x = 0; x < u.size(); ++x) {
        res[x] = lap_um[x] - 2.0 * uh[x] * lap_uh[x] - 2.0 * gamma_uh[x];
    }
    return res;
}

double max_relative_residual(const WeightedGraph& g, const VertexField& u, double m, double floor) {
    const VertexField um = pow_field(u, m, floor);
    const VertexField uh = pow_field(u, m / 2.0, floor);
    const VertexField lap_um = laplacian(g, um);
    const VertexField lap_uh = laplacian(g, uh);
    const VertexField gamma_uh = gradient_form(g, uh);

    double worst = 0.0;
    for (std::size_t x = 0; x < u.size(); ++x) {
        const double res = lap_um[x] - 2.0 * uh[x] * lap_uh[x] - 2.0 * gamma_uh[x];
        const double scale = std::max({1e-30, std::abs(lap_um[x]),
                                       std::abs(2.0 * uh[x] * lap_uh[x]),
                                       std::abs(2.0 * gamma_uh[x])});
        worst = std::max(worst, std::abs(res) / scale);
    }
    return worst;
}

std::optional<ChainRuleWitness> chain_rule_counterexample(const WeightedGraph& g, double p,
                                                          unsigned long long seed, int attempts) {
    if (p == 0.0) {
        throw std::invalid_argument("chain_rule_counterexample: p must be nonzero");
    }
    Rng rng(seed);
    const int n = g.vertex_count();
    for (int trial = 0; trial < attempts; ++trial) {
        VertexField u(n);
        for (int x = 0; x < n; ++x) u[x] = rng.uniform(0.2, 5.0);

        const VertexField up = pow_field(u, p);
        const VertexField lhs = laplacian(g, up);
        const VertexField lap_u = laplacian(g, u);
        const VertexField gamma_up = gradient_form(g, up);
        for (int x = 0; x < n; ++x) {
            const double grad_sq = 2.0 * gamma_up[x];
            const double rhs = p * std::pow(u[x], p - 1.0) * lap_u[x] +
                               (p - 1.0) / p * std::pow(u[x], -p) * grad_sq;
            const double scale = std::max({1.0, std::abs(lhs[x]), std::abs(rhs)});
            if (std::abs(lhs[x] - rhs) > 1e-8 * scale) {
                return ChainRuleWitness{u, x, lhs[x], rhs};
            }
        }
    }
    return std::nullopt;
}

}  // namespace pmg
