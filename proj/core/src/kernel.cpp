#include "pmgraph/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmg {

namespace {

void require_theta_is_degree(const WeightedGraph& g, const char* what) {
    for (int x = 0; x < g.vertex_count(); ++x) {
        const double deg = g.weighted_degree(x);
        if (std::abs(g.theta[x] - deg) > 1e-12 * std::max(1.0, deg)) {
            throw std::invalid_argument(std::string(what) +
                                        ": requires the theta = deg convention");
        }
    }
}

// One-step transition matrix p(x,y) = w_xy / deg(x), row-major.
std::vector<double> one_step_matrix(const WeightedGraph& g) {
    const int n = g.vertex_count();
    std::vector<double> p(static_cast<std::size_t>(n) * n, 0.0);
    for (int x = 0; x < n; ++x) {
        const double deg = g.weighted_degree(x);
        if (deg <= 0.0) {
            throw std::invalid_argument("walk kernel: isolated vertex has no transitions");
        }
        for (const auto& [y, w] : g.adjacency[x]) {
            p[static_cast<std::size_t>(x) * n + y] = w / deg;
        }
    }
    return p;
}

// dst = a * b for row-major n x n matrices.
void mat_mul(const std::vector<double>& a, const std::vector<double>& b, int n,
             std::vector<double>& dst) {
    dst.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double aik = a[static_cast<std::size_t>(i) * n + k];
            if (aik == 0.0) continue;
            const double* brow = &b[static_cast<std::size_t>(k) * n];
            double* drow = &dst[static_cast<std::size_t>(i) * n];
            for (int j = 0; j < n; ++j) drow[j] += aik * brow[j];
        }
    }
}

}  // namespace

std::vector<double> walk_kernel(const WeightedGraph& g, int k) {
    if (k < 0) throw std::invalid_argument("walk_kernel: order must be nonnegative");
    require_theta_is_degree(g, "walk_kernel");
    const int n = g.vertex_count();

    std::vector<double> acc(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i) * n + i] = 1.0;
    if (k == 0) return acc;

    const std::vector<double> step = one_step_matrix(g);
    std::vector<double> tmp;
    for (int i = 0; i < k; ++i) {
        mat_mul(step, acc, n, tmp);
        acc.swap(tmp);
    }
    return acc;
}

int poisson_truncation_order(double t, double bound) {
    if (!(t >= 0.0)) throw std::invalid_argument("poisson_truncation_order: t must be >= 0");
    if (!(bound > 0.0)) throw std::invalid_argument("poisson_truncation_order: bound must be > 0");

    // Kahan-compensated partial sums of e^{-t} t^k / k!; the tail is the
    // exact complement 1 - S_K.
    double term = std::exp(-t);
    double sum = 0.0, comp = 0.0;
    int k = 0;
    const int hard_cap = 100000;
    while (k <= hard_cap) {
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (1.0 - sum <= bound) return k;
        ++k;
        term *= t / static_cast<double>(k);
    }
    throw std::runtime_error("poisson_truncation_order: did not converge");
}

KernelMatrix heat_kernel_series(const WeightedGraph& g, double t, double eps, int extra_order) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_series: t must be positive");
    if (!(eps > 0.0)) throw std::invalid_argument("heat_kernel_series: eps must be positive");
    require_theta_is_degree(g, "heat_kernel_series");

    const int n = g.vertex_count();
    double min_deg = g.weighted_degree(0);
    for (int x = 1; x < n; ++x) min_deg = std::min(min_deg, g.weighted_degree(x));

    // Tail <= eps * min_deg certifies entrywise error <= eps; capping the
    // target at eps additionally certifies the mass deviation (the mass
    // error is the tail itself).
    const int order =
        poisson_truncation_order(t, eps * std::min(1.0, min_deg)) + std::max(0, extra_order);

    const std::vector<double> step = one_step_matrix(g);
    std::vector<double> walk(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) walk[static_cast<std::size_t>(i) * n + i] = 1.0;

    std::vector<double> acc(static_cast<std::size_t>(n) * n, 0.0);
    double coeff = std::exp(-t);  // e^{-t} t^k / k! at k = 0
    for (int k = 0;; ++k) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * walk[i];
        if (k == order) break;
        std::vector<double> tmp;
        mat_mul(step, walk, n, tmp);
        walk.swap(tmp);
        coeff *= t / static_cast<double>(k + 1);
    }

    KernelMatrix kernel;
    kernel.t = t;
    kernel.n = n;
    kernel.order = order;
    kernel.eps = eps;
    kernel.values.resize(acc.size());
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            kernel.values[static_cast<std::size_t>(x) * n + y] =
                acc[static_cast<std::size_t>(x) * n + y] / g.weighted_degree(y);
        }
    }
    return kernel;
}

MassReport mass_check(const KernelMatrix& kernel, const WeightedGraph& g) {
    MassReport report;
    const int n = kernel.n;
    report.mass.resize(n, 0.0);
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int z = 0; z < n; ++z) acc += g.theta[z] * kernel.p(x, z);
        report.mass[x] = acc;
        worst = std::max(worst, std::abs(acc - 1.0));
    }
    report.worst_deviation = worst;
    report.within_bound = worst <= kernel.eps + 1e-12 * n;
    return report;
}

double kernel_upper_bound(const WeightedGraph& g, double t, int x, double c0, double m) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_upper_bound: t must be positive");
    const GraphConstants gc = constants(g);
    const double exponent =
        4.0 * std::sqrt((6.0 * gc.d_theta + 5.0 * c0) * gc.theta_max * t /
                        (6.0 * m * m * gc.omega_min));
    return std::exp(exponent) / ball_volume(g, x, std::sqrt(t));
}

double kernel_lower_bound(const WeightedGraph& g, double t, int x, int y, double c0, double m) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_lower_bound: t must be positive");
    require_theta_is_degree(g, "kernel_lower_bound");
    const auto d = distance(g, x, y);
    if (!d) return 0.0;
    const GraphConstants gc = constants(g);
    const double dd = static_cast<double>(*d);
    const double exponent = -(1.0 + 5.0 * c0 / 6.0) * t -
                            4.0 * gc.theta_max * dd * dd / (m * m * gc.omega_min * t);
    return std::exp(exponent) / g.weighted_degree(y);
}

EstimateReport check_kernel_bounds(const WeightedGraph& g, const KernelMatrix& kernel, double c0,
                                   double m, double tol) {
    const int n = kernel.n;
    EstimateReport report;
    for (int x = 0; x < n; ++x) {
        const double upper = kernel_upper_bound(g, kernel.t, x, c0, m);
        for (int y = 0; y < n; ++y) {
            EstimateRow row;
            row.x = x;
            row.y = y;
            row.t1 = row.t2 = kernel.t;
            row.lhs = kernel.p(x, y);
            row.rhs = upper;
            row.margin = upper - kernel.p(x, y);
            row.status = row.margin >= -pass_tolerance(row.lhs, row.rhs, tol) ? CheckStatus::pass
                                                                              : CheckStatus::fail;
            report.rows.push_back(row);
        }
    }
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const double lower = kernel_lower_bound(g, kernel.t, x, y, c0, m);
            EstimateRow row;
            row.x = x;
            row.y = y;
            row.t1 = row.t2 = kernel.t;
            row.lhs = lower;
            row.rhs = kernel.p(x, y);
            row.margin = kernel.p(x, y) - lower;
            row.status = row.margin >= -pass_tolerance(row.lhs, row.rhs, tol) ? CheckStatus::pass
                                                                              : CheckStatus::fail;
            report.rows.push_back(row);
        }
    }
    report.finish();
    return report;
}

}  // namespace pmg
