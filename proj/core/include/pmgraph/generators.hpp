#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pmgraph/graph.hpp"
#include "pmgraph/rng.hpp"

namespace pmg {

enum class ThetaMode { one, degree };
enum class WeightMode { unit, random };  // random: uniform in [0.5, 2.0]

struct GeneratorOptions {
    ThetaMode theta = ThetaMode::one;
    WeightMode weights = WeightMode::unit;
    std::uint64_t seed = 0;
    int gnp_max_retries = 200;
};

WeightedGraph make_path(int n, const GeneratorOptions& opt = {});
WeightedGraph make_cycle(int n, const GeneratorOptions& opt = {});
WeightedGraph make_complete(int n, const GeneratorOptions& opt = {});

/// Erdos-Renyi G(n, p), redrawn until connected (bounded retries, then an
/// error). Weights are uniform in [0.5, 2.0] regardless of WeightMode.
WeightedGraph make_gnp(int n, double p, const GeneratorOptions& opt = {});

/// Parses a generator spec of the form path_<n>, cycle_<n>, complete_<n>,
/// gnp_<n>_<p> (alias random_gnp_<n>_<p>). Returns nullopt when the string
/// does not look like a spec (callers then treat it as a file path).
std::optional<WeightedGraph> graph_from_spec(const std::string& spec,
                                             const GeneratorOptions& opt = {});

}  // namespace pmg
