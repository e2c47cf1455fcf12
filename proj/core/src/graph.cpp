#include "pmgraph/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace pmg {

int WeightedGraph::index_of(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end()) {
        throw std::invalid_argument("unknown vertex label '" + label + "'");
    }
    return it->second;
}

double WeightedGraph::weighted_degree(int x) const {
    double d = 0.0;
    for (const auto& [y, w] : adjacency[x]) {
        (void)y;
        d += w;
    }
    return d;
}

WeightedGraph make_graph(const std::string& name,
                         const std::vector<std::pair<std::string, double>>& vertices,
                         const std::vector<std::tuple<std::string, std::string, double>>& edges) {
    WeightedGraph g;
    g.name = name;
    for (const auto& [label, theta] : vertices) {
        if (g.index.count(label)) {
            throw ParseError("duplicate vertex label '" + label + "'");
        }
        if (!(theta > 0.0)) {
            throw ParseError("non-positive vertex measure for '" + label + "'");
        }
        g.index.emplace(label, g.vertex_count());
        g.labels.push_back(label);
        g.theta.push_back(theta);
    }
    if (g.vertex_count() == 0) {
        throw ParseError("graph has no vertices");
    }

    g.adjacency.assign(g.labels.size(), {});
    std::set<std::pair<int, int>> seen;
    for (const auto& [la, lb, w] : edges) {
        const auto ia = g.index.find(la);
        const auto ib = g.index.find(lb);
        if (ia == g.index.end()) throw ParseError("unknown vertex label '" + la + "'");
        if (ib == g.index.end()) throw ParseError("unknown vertex label '" + lb + "'");
        const int a = ia->second;
        const int b = ib->second;
        if (a == b) {
            throw ParseError("self loop on '" + la + "'");
        }
        if (!(w > 0.0)) {
            throw ParseError("non-positive edge weight on '" + la + "'-'" + lb + "'");
        }
        auto key = std::minmax(a, b);
        if (!seen.insert({key.first, key.second}).second) {
            throw ParseError("duplicate edge '" + la + "'-'" + lb + "'");
        }
        g.edges.push_back({a, b, w});
        g.adjacency[a].emplace_back(b, w);
        g.adjacency[b].emplace_back(a, w);
    }
    for (auto& nbrs : g.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
    }

    const auto levels = bfs_levels(g, 0);
    g.connected = std::none_of(levels.begin(), levels.end(), [](int l) { return l < 0; });
    return g;
}

GraphConstants constants(const WeightedGraph& g) {
    GraphConstants c;
    const int n = g.vertex_count();
    c.degree.resize(n, 0.0);
    for (int x = 0; x < n; ++x) {
        c.degree[x] = g.weighted_degree(x);
    }
    c.theta_max = *std::max_element(g.theta.begin(), g.theta.end());
    c.omega_min = 0.0;
    for (const auto& e : g.edges) {
        c.omega_min = (c.omega_min == 0.0) ? e.w : std::min(c.omega_min, e.w);
    }
    c.d_theta = 0.0;
    for (int x = 0; x < n; ++x) {
        c.d_theta = std::max(c.d_theta, c.degree[x] / g.theta[x]);
    }
    c.d_omega = 0.0;
    for (int x = 0; x < n; ++x) {
        for (const auto& [y, w] : g.adjacency[x]) {
            (void)y;
            c.d_omega = std::max(c.d_omega, c.degree[x] / w);
        }
    }
    return c;
}

std::vector<int> bfs_levels(const WeightedGraph& g, int source) {
    std::vector<int> level(g.vertex_count(), -1);
    std::deque<int> queue;
    level[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (const auto& [y, w] : g.adjacency[x]) {
            (void)w;
            if (level[y] < 0) {
                level[y] = level[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return level;
}

std::optional<int> distance(const WeightedGraph& g, int x, int y) {
    if (x == y) return 0;
    const auto levels = bfs_levels(g, x);
    if (levels[y] < 0) return std::nullopt;
    return levels[y];
}

ShortestPaths shortest_paths(const WeightedGraph& g, int x, int y, std::size_t cap) {
    if (cap < 1) {
        throw std::invalid_argument("shortest_paths: cap must be >= 1");
    }
    ShortestPaths out;
    if (x == y) {
        out.paths.push_back({x});
        return out;
    }
    const auto from_x = bfs_levels(g, x);
    if (from_x[y] < 0) {
        throw std::invalid_argument("shortest_paths: vertices are disconnected");
    }
    const auto from_y = bfs_levels(g, y);
    const int dist = from_x[y];

    // A vertex v lies on some shortest x-y path iff the two BFS levels sum
    // to dist; DAG edges step one level forward. DFS in ascending neighbor
    // order yields lexicographic output.
    std::vector<int> path{x};
    bool truncated = false;

    auto dfs = [&](auto&& self, int v) -> void {
        if (truncated) return;
        if (v == y) {
            out.paths.push_back(path);
            if (out.paths.size() >= cap) truncated = true;
            return;
        }
        for (const auto& [w, weight] : g.adjacency[v]) {
            (void)weight;
            if (from_x[w] == from_x[v] + 1 && from_y[w] >= 0 && from_x[w] + from_y[w] == dist) {
                path.push_back(w);
                self(self, w);
                path.pop_back();
                if (truncated) return;
            }
        }
    };
    dfs(dfs, x);
    out.truncated = truncated;
    return out;
}

double ball_volume(const WeightedGraph& g, int x, double r) {
    const auto levels = bfs_levels(g, x);
    double vol = 0.0;
    for (int z = 0; z < g.vertex_count(); ++z) {
        if (levels[z] >= 0 && static_cast<double>(levels[z]) <= r) {
            vol += g.theta[z];
        }
    }
    return vol;
}

bool all_positive(const VertexField& u, double floor) {
    return std::all_of(u.begin(), u.end(), [floor](double v) { return v > floor; });
}

}  // namespace pmg
