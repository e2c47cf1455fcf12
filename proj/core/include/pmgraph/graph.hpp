#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pmg {

/// A real-valued function on the vertices of a graph, aligned to the
/// graph's vertex order.
using VertexField = std::vector<double>;

/// Thrown by the document parsers; `line` is 1-based, 0 when the error is
/// not tied to a specific line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Finite undirected graph with positive symmetric edge weights and a
/// positive vertex measure. Immutable after construction; safe for
/// concurrent reads.
struct WeightedGraph {
    std::string name;
    std::vector<std::string> labels;               // index -> label
    std::unordered_map<std::string, int> index;    // label -> index
    std::vector<double> theta;                     // vertex measure, > 0

    struct Edge {
        int u, v;
        double w;
    };
    std::vector<Edge> edges;

    // adjacency[x] = (neighbor, weight), sorted by neighbor index
    std::vector<std::vector<std::pair<int, double>>> adjacency;

    bool connected = false;

    int vertex_count() const { return static_cast<int>(labels.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    int index_of(const std::string& label) const;  // throws on unknown label

    /// deg(x) = sum of incident edge weights.
    double weighted_degree(int x) const;
};

/// Builds and validates a graph from vertex (label, theta) pairs and edges
/// given as (label, label, weight). Throws ParseError on invariant
/// violations (non-positive theta or weight, duplicate edges, self loops,
/// unknown labels).
WeightedGraph make_graph(const std::string& name,
                         const std::vector<std::pair<std::string, double>>& vertices,
                         const std::vector<std::tuple<std::string, std::string, double>>& edges);

/// Derived scalar constants of a graph. `d_theta` and `d_omega` are the
/// maxima of deg(x)/theta(x) and deg(x)/w_xy over vertices / adjacent
/// pairs; `omega_min` and `theta_max` the extreme edge weight and measure.
struct GraphConstants {
    std::vector<double> degree;  // weighted degree per vertex
    double d_omega = 0.0;
    double d_theta = 0.0;
    double omega_min = 0.0;
    double theta_max = 0.0;
};

GraphConstants constants(const WeightedGraph& g);

/// Hop-count BFS levels from `source`; -1 marks unreachable vertices.
std::vector<int> bfs_levels(const WeightedGraph& g, int source);

/// Unweighted shortest-path distance (edge count); nullopt when x and y
/// lie in different components.
std::optional<int> distance(const WeightedGraph& g, int x, int y);

/// All distinct shortest x-y paths (by hop count), each a vertex index
/// sequence of length distance(x,y)+1, in lexicographic order by vertex
/// index. Enumeration walks the BFS layer DAG; `truncated` is set when
/// `cap` stopped it early.
struct ShortestPaths {
    std::vector<std::vector<int>> paths;
    bool truncated = false;
};
ShortestPaths shortest_paths(const WeightedGraph& g, int x, int y, std::size_t cap = 10000);

/// Measure of the closed metric ball: sum of theta(z) over dist(x,z) <= r.
double ball_volume(const WeightedGraph& g, int x, double r);

/// True when every entry exceeds `floor` (strict positivity check used by
/// the power-identity and theorem-mode code paths).
bool all_positive(const VertexField& u, double floor = 0.0);

}  // namespace pmg
