#pragma once

#include <vector>

#include "pmgraph/estimates.hpp"
#include "pmgraph/graph.hpp"

namespace pmg {

/// Heat kernel values p(t, x, y) for one fixed t on all vertex pairs.
/// Convention: p(t,x,y) = [exp(t L)]_{xy} / theta(y), so the kernel is
/// symmetric in (x, y) and sum_z theta(z) p(t,x,z) = 1 on finite graphs.
/// `order` is the Poisson-series truncation (-1 for the dense oracle);
/// `eps` the certified entrywise truncation bound (0 for the oracle,
/// which is exact up to roundoff).
struct KernelMatrix {
    double t = 0.0;
    int n = 0;
    std::vector<double> values;  // row-major, values[x*n + y]
    int order = -1;
    double eps = 0.0;

    double p(int x, int y) const { return values[static_cast<std::size_t>(x) * n + y]; }
    double& p(int x, int y) { return values[static_cast<std::size_t>(x) * n + y]; }
};

/// k-step transition probabilities of the weighted random walk
/// p(x,y) = w_xy / deg(x); row-stochastic for every k. Requires the
/// theta = deg convention (checked).
std::vector<double> walk_kernel(const WeightedGraph& g, int k);

/// Smallest K with Poisson tail e^{-t} sum_{k>K} t^k/k! <= bound, computed
/// from the exact partial sums with compensated summation.
int poisson_truncation_order(double t, double bound);

/// Heat kernel by the Poisson-weighted walk series
///   p(t,x,y) = e^{-t} sum_k (t^k / k!) p_k(x,y) / deg(y),
/// truncated at K with tail <= eps * min(1, min_y deg(y)), which certifies
/// both an entrywise error of at most eps (every p_k entry lies in [0,1])
/// and a mass deviation of at most eps. Requires theta = deg and t > 0.
/// `extra_order` adds terms beyond the certified K (used to validate the
/// truncation certificate).
KernelMatrix heat_kernel_series(const WeightedGraph& g, double t, double eps = 1e-10,
                                int extra_order = 0);

/// Independent dense route used as the series oracle: spectral
/// exponentiation of the generator (off-diagonal w_xy/theta(x), diagonal
/// -deg(x)/theta(x)) via its measure-symmetrized form, normalized to the
/// same convention. Works for any positive theta and t >= 0; throws above
/// `max_n` vertices.
KernelMatrix heat_kernel_oracle(const WeightedGraph& g, double t, int max_n = 500);

/// Conservation report: mass(x) = sum_z theta(z) p(t,x,z) must equal 1
/// within the kernel's certified truncation bound (plus roundoff).
struct MassReport {
    std::vector<double> mass;
    double worst_deviation = 0.0;
    bool within_bound = false;
};
MassReport mass_check(const KernelMatrix& kernel, const WeightedGraph& g);

/// On-diagonal-volume upper bound: for t > 0 and every y,
///   p(t,x,y) <= exp{ 4 sqrt((6 D_theta + 5 c0) theta_max t / (6 m^2 omega_min)) }
///               / VolB(x, sqrt(t)).
double kernel_upper_bound(const WeightedGraph& g, double t, int x, double c0, double m);

/// Gaussian-type lower bound in the theta = deg convention:
///   p(t,x,y) >= exp{ -(1 + 5 c0/6) t - 4 theta_max dist(x,y)^2 / (m^2 omega_min t) }
///               / deg(y).
/// Returns 0 for disconnected pairs.
double kernel_lower_bound(const WeightedGraph& g, double t, int x, int y, double c0, double m);

/// Evaluates both bounds against a computed kernel over all pairs.
/// Rows carry x, y, lhs = p(t,x,y) and rhs = the violated-side bound with
/// margin measured so that negative means violation:
/// one row per (x, y) per bound, upper bounds first.
EstimateReport check_kernel_bounds(const WeightedGraph& g, const KernelMatrix& kernel, double c0,
                                   double m, double tol = 1e-9);

}  // namespace pmg
