#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "pmgraph/kernel.hpp"

namespace pmg {

// Dense spectral route, independent of the walk series: the generator
// L = Theta^{-1}(A - D) is similar to the symmetric matrix
// S = Theta^{-1/2}(A - D)Theta^{-1/2}, so
//   p(t,x,y) = [exp(tL)]_{xy} / theta(y) = [exp(tS)]_{xy} / sqrt(theta(x) theta(y)).
KernelMatrix heat_kernel_oracle(const WeightedGraph& g, double t, int max_n) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat_kernel_oracle: t must be >= 0");
    const int n = g.vertex_count();
    if (n > max_n) {
        throw std::invalid_argument("heat_kernel_oracle: graph too large for the dense method");
    }

    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges) {
        const double v = e.w / std::sqrt(g.theta[e.u] * g.theta[e.v]);
        sym(e.u, e.v) = v;
        sym(e.v, e.u) = v;
    }
    for (int x = 0; x < n; ++x) {
        sym(x, x) = -g.weighted_degree(x) / g.theta[x];
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("heat_kernel_oracle: eigendecomposition failed");
    }
    const Eigen::VectorXd scaled = (t * solver.eigenvalues().array()).exp().matrix();
    const Eigen::MatrixXd exp_sym =
        solver.eigenvectors() * scaled.asDiagonal() * solver.eigenvectors().transpose();

    KernelMatrix kernel;
    kernel.t = t;
    kernel.n = n;
    kernel.order = -1;
    kernel.eps = 0.0;
    kernel.values.resize(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            kernel.values[static_cast<std::size_t>(x) * n + y] =
                exp_sym(x, y) / std::sqrt(g.theta[x] * g.theta[y]);
        }
    }
    return kernel;
}

}  // namespace pmg
