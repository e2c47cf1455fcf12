#include "pmgraph/io.hpp"

#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

namespace pmg {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

double parse_double(const std::string& s, int line, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (...) {
        throw ParseError(std::string("invalid ") + what + " '" + s + "'", line);
    }
}

// Splits "key=value"; returns value or throws.
std::string expect_kv(const std::string& tok, const std::string& key, int line) {
    const std::string prefix = key + "=";
    if (tok.rfind(prefix, 0) != 0) {
        throw ParseError("expected '" + key + "=<value>', got '" + tok + "'", line);
    }
    return tok.substr(prefix.size());
}

}  // namespace

WeightedGraph load_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::string name;
    bool have_header = false;
    std::vector<std::pair<std::string, double>> vertices;
    std::vector<std::tuple<std::string, std::string, double>> edges;

    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (!have_header) {
            if (tokens[0] != "graph" || tokens.size() != 2) {
                throw ParseError("expected header 'graph <name>'", lineno);
            }
            name = tokens[1];
            have_header = true;
            continue;
        }
        if (tokens[0] == "v") {
            if (tokens.size() != 3) throw ParseError("expected 'v <label> theta=<float>'", lineno);
            const double theta = parse_double(expect_kv(tokens[2], "theta", lineno), lineno, "theta");
            if (!(theta > 0.0)) throw ParseError("non-positive vertex measure", lineno);
            vertices.emplace_back(tokens[1], theta);
        } else if (tokens[0] == "e") {
            if (tokens.size() != 4) {
                throw ParseError("expected 'e <label> <label> w=<float>'", lineno);
            }
            const double w = parse_double(expect_kv(tokens[3], "w", lineno), lineno, "weight");
            if (!(w > 0.0)) throw ParseError("non-positive edge weight", lineno);
            edges.emplace_back(tokens[1], tokens[2], w);
        } else {
            throw ParseError("unknown directive '" + tokens[0] + "'", lineno);
        }
    }
    if (!have_header) throw ParseError("empty graph document (missing 'graph <name>' header)", 0);
    return make_graph(name, vertices, edges);
}

WeightedGraph load_graph_file(const std::string& path) {
    return load_graph(read_text_file(path));
}

VertexField load_field(const std::string& text, const WeightedGraph& g) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    VertexField field(static_cast<std::size_t>(g.vertex_count()), 0.0);
    std::vector<bool> seen(field.size(), false);

    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] != "f" || tokens.size() != 3) {
            throw ParseError("expected 'f <label> <float>'", lineno);
        }
        int x = 0;
        try {
            x = g.index_of(tokens[1]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
        if (seen[static_cast<std::size_t>(x)]) {
            throw ParseError("duplicate value for vertex '" + tokens[1] + "'", lineno);
        }
        seen[static_cast<std::size_t>(x)] = true;
        field[static_cast<std::size_t>(x)] = parse_double(tokens[2], lineno, "field value");
    }
    for (std::size_t x = 0; x < seen.size(); ++x) {
        if (!seen[x]) throw ParseError("missing value for vertex '" + g.labels[x] + "'", 0);
    }
    return field;
}

VertexField load_field_file(const std::string& path, const WeightedGraph& g) {
    return load_field(read_text_file(path), g);
}

std::string problem_graph_reference(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto tokens = tokenize(line);
        if (tokens.size() == 2 && tokens[0] == "graph") return tokens[1];
    }
    return {};
}

ParsedProblem load_problem(const std::string& text, const WeightedGraph& g) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    ParsedProblem out;
    PMEProblem& p = out.problem;
    p.graph = &g;
    const auto n = static_cast<std::size_t>(g.vertex_count());
    p.delta.assign(n, 0.0);
    p.psi.assign(n, Poly::constant(0.0));
    p.u0.assign(n, 0.0);

    bool have_m = false, have_tspan = false;
    std::vector<bool> have_delta(n, false), have_u0(n, false);

    auto resolve_targets = [&](const std::string& label, int ln) -> std::vector<std::size_t> {
        if (label == "all") {
            std::vector<std::size_t> all(n);
            for (std::size_t i = 0; i < n; ++i) all[i] = i;
            return all;
        }
        try {
            return {static_cast<std::size_t>(g.index_of(label))};
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), ln);
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& head = tokens[0];

        if (head == "graph") {
            if (tokens.size() != 2) throw ParseError("expected 'graph <path>'", lineno);
            out.graph_path = tokens[1];
        } else if (head.rfind("m=", 0) == 0) {
            p.m = parse_double(head.substr(2), lineno, "exponent m");
            have_m = true;
        } else if (head == "delta") {
            if (tokens.size() != 3) throw ParseError("expected 'delta <label>|all <float>'", lineno);
            const double v = parse_double(tokens[2], lineno, "delta");
            for (auto i : resolve_targets(tokens[1], lineno)) {
                p.delta[i] = v;
                have_delta[i] = true;
            }
        } else if (head == "psi") {
            if (tokens.size() < 3 || tokens.size() > 6) {
                throw ParseError("expected 'psi <label>|all <c0> [c1 c2 c3]'", lineno);
            }
            std::vector<double> coeffs;
            for (std::size_t k = 2; k < tokens.size(); ++k) {
                coeffs.push_back(parse_double(tokens[k], lineno, "psi coefficient"));
            }
            const Poly poly(coeffs);
            for (auto i : resolve_targets(tokens[1], lineno)) p.psi[i] = poly;
        } else if (head == "u0") {
            if (tokens.size() != 3) throw ParseError("expected 'u0 <label>|all <float>'", lineno);
            const double v = parse_double(tokens[2], lineno, "u0");
            if (!(v > 0.0)) throw ParseError("u0 must be strictly positive", lineno);
            for (auto i : resolve_targets(tokens[1], lineno)) {
                p.u0[i] = v;
                have_u0[i] = true;
            }
        } else if (head == "tspan") {
            if (tokens.size() != 3) throw ParseError("expected 'tspan <T1> <T2>'", lineno);
            p.t_begin = parse_double(tokens[1], lineno, "T1");
            p.t_end = parse_double(tokens[2], lineno, "T2");
            if (!(p.t_begin < p.t_end)) throw ParseError("tspan requires T1 < T2", lineno);
            have_tspan = true;
        } else {
            throw ParseError("unknown directive '" + head + "'", lineno);
        }
    }

    if (!have_m) throw ParseError("problem document is missing 'm=<float>'", 0);
    if (!have_tspan) throw ParseError("problem document is missing 'tspan <T1> <T2>'", 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!have_delta[i]) {
            throw ParseError("missing delta for vertex '" + g.labels[i] + "'", 0);
        }
        if (!have_u0[i]) {
            throw ParseError("missing u0 for vertex '" + g.labels[i] + "'", 0);
        }
    }
    p.validate(false);
    return out;
}

ParsedProblem load_problem_file(const std::string& path, const WeightedGraph& g) {
    return load_problem(read_text_file(path), g);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace pmg
