#include "pmgraph/generators.hpp"

#include <stdexcept>
#include <tuple>

namespace pmg {

namespace {

using LabeledVertices = std::vector<std::pair<std::string, double>>;
using LabeledEdges = std::vector<std::tuple<std::string, std::string, double>>;

std::string vertex_label(int i) { return "v" + std::to_string(i); }

WeightedGraph assemble(const std::string& name, int n, const LabeledEdges& edges,
                       const GeneratorOptions& opt) {
    LabeledVertices vertices;
    vertices.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vertices.emplace_back(vertex_label(i), 1.0);

    WeightedGraph g = make_graph(name, vertices, edges);
    if (opt.theta == ThetaMode::degree) {
        LabeledVertices rescaled;
        rescaled.reserve(vertices.size());
        for (int i = 0; i < n; ++i) {
            const double deg = g.weighted_degree(i);
            if (deg <= 0.0) {
                throw std::invalid_argument("generator: theta=degree needs no isolated vertices");
            }
            rescaled.emplace_back(vertex_label(i), deg);
        }
        g = make_graph(name, rescaled, edges);
    }
    return g;
}

double draw_weight(Rng& rng, const GeneratorOptions& opt) {
    return opt.weights == WeightMode::random ? rng.uniform(0.5, 2.0) : 1.0;
}

}  // namespace

WeightedGraph make_path(int n, const GeneratorOptions& opt) {
    if (n < 1) throw std::invalid_argument("make_path: n must be >= 1");
    Rng rng(opt.seed);
    LabeledEdges edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(vertex_label(i), vertex_label(i + 1), draw_weight(rng, opt));
    }
    return assemble("path_" + std::to_string(n), n, edges, opt);
}

WeightedGraph make_cycle(int n, const GeneratorOptions& opt) {
    if (n < 3) throw std::invalid_argument("make_cycle: n must be >= 3");
    Rng rng(opt.seed);
    LabeledEdges edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(vertex_label(i), vertex_label((i + 1) % n), draw_weight(rng, opt));
    }
    return assemble("cycle_" + std::to_string(n), n, edges, opt);
}

WeightedGraph make_complete(int n, const GeneratorOptions& opt) {
    if (n < 2) throw std::invalid_argument("make_complete: n must be >= 2");
    Rng rng(opt.seed);
    LabeledEdges edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.emplace_back(vertex_label(i), vertex_label(j), draw_weight(rng, opt));
        }
    }
    return assemble("complete_" + std::to_string(n), n, edges, opt);
}

WeightedGraph make_gnp(int n, double p, const GeneratorOptions& opt) {
    if (n < 2) throw std::invalid_argument("make_gnp: n must be >= 2");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("make_gnp: p must be in [0, 1]");
    Rng rng(opt.seed);
    for (int attempt = 0; attempt < opt.gnp_max_retries; ++attempt) {
        LabeledEdges edges;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.coin(p)) {
                    edges.emplace_back(vertex_label(i), vertex_label(j), rng.uniform(0.5, 2.0));
                }
            }
        }
        if (edges.empty()) continue;
        WeightedGraph g = assemble("gnp_" + std::to_string(n), n, edges, opt);
        if (g.connected) return g;
    }
    throw std::runtime_error("make_gnp: could not draw a connected graph within the retry budget");
}

std::optional<WeightedGraph> graph_from_spec(const std::string& spec,
                                             const GeneratorOptions& opt) {
    auto parse_int = [](const std::string& s) -> std::optional<int> {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) return std::nullopt;
            return v;
        } catch (...) {
            return std::nullopt;
        }
    };

    auto tail_after = [&](const std::string& prefix) -> std::optional<std::string> {
        if (spec.rfind(prefix, 0) == 0) return spec.substr(prefix.size());
        return std::nullopt;
    };

    if (auto tail = tail_after("path_")) {
        if (auto n = parse_int(*tail)) return make_path(*n, opt);
        return std::nullopt;
    }
    if (auto tail = tail_after("cycle_")) {
        if (auto n = parse_int(*tail)) return make_cycle(*n, opt);
        return std::nullopt;
    }
    if (auto tail = tail_after("complete_")) {
        if (auto n = parse_int(*tail)) return make_complete(*n, opt);
        return std::nullopt;
    }
    for (const char* prefix : {"random_gnp_", "gnp_"}) {
        if (auto tail = tail_after(prefix)) {
            const auto sep = tail->find('_');
            if (sep == std::string::npos) return std::nullopt;
            const auto n = parse_int(tail->substr(0, sep));
            if (!n) return std::nullopt;
            double p = 0.0;
            try {
                std::size_t used = 0;
                p = std::stod(tail->substr(sep + 1), &used);
                if (used != tail->size() - sep - 1) return std::nullopt;
            } catch (...) {
                return std::nullopt;
            }
            return make_gnp(*n, p, opt);
        }
    }
    return std::nullopt;
}

}  // namespace pmg
