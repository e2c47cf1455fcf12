#pragma once

#include <string>

#include "pmgraph/graph.hpp"
#include "pmgraph/pme.hpp"

namespace pmg {

/// Graph document (line oriented):
///   graph <name>
///   v <label> theta=<float>
///   e <label> <label> w=<float>
/// '#' starts a comment; blank lines are ignored; duplicate edges (either
/// orientation) are an error. Parse errors carry the 1-based line number.
WeightedGraph load_graph(const std::string& text);
WeightedGraph load_graph_file(const std::string& path);

/// Field document: `f <label> <float>` per vertex; every vertex of the
/// graph must be assigned exactly once.
VertexField load_field(const std::string& text, const WeightedGraph& g);
VertexField load_field_file(const std::string& path, const WeightedGraph& g);

/// Problem document:
///   graph <path>                 (optional; callers may supply the graph)
///   m=<float>
///   delta <label>|all <float>
///   psi <label>|all <c0> [c1 c2 c3]
///   u0 <label>|all <float>
///   tspan <T1> <T2>
/// The returned problem borrows `g`; `graph_path` is surfaced so a CLI can
/// resolve the referenced file when it was not given one explicitly.
struct ParsedProblem {
    PMEProblem problem;
    std::string graph_path;  // empty when the document has no graph line
};
ParsedProblem load_problem(const std::string& text, const WeightedGraph& g);
ParsedProblem load_problem_file(const std::string& path, const WeightedGraph& g);

/// First `graph <path>` line of a problem document, or empty. Lets a CLI
/// load the graph before parsing the rest against it.
std::string problem_graph_reference(const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace pmg
