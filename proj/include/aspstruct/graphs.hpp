#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aspstruct/program.hpp"

namespace aspstruct {

enum class VertexKind { Atom, Rule };

struct Vertex {
	int id;
	VertexKind kind;
	std::string label;
};

// Undirected simple graph with typed vertices.
struct Graph {
	std::vector<Vertex> vertices;
	std::set<std::pair<int, int>> edges; // u < v

	int n() const { return int(vertices.size()); }
	int m() const { return int(edges.size()); }

	void add_vertex(VertexKind kind, const std::string& label);
	void add_edge(int u, int v);
	bool has_edge(int u, int v) const;

	std::vector<std::vector<int>> adjacency() const;
	std::vector<int> degrees() const;
	int max_degree() const;

	Graph induced(const std::vector<int>& keep) const; // keep[v] = 1 to retain v (isolating removed ones)
	bool is_acyclic() const;                           // undirected: forest check
};

Graph primal_graph(const Program& p);
Graph incidence_graph(const Program& p); // atoms 0..n-1, rule i at n+i

enum class RuleType { Type0, Type1, Type2 };

// Type 1: a :- not b.  Type 2: a | b.  Type 0: everything else.
RuleType classify_rule(const Rule& r);

struct TypedPrimal {
	Graph g0, g1, g2;
};
TypedPrimal typed_primal_graphs(const Program& p);

std::string graph_to_dot(const Graph& g);
std::string graph_to_json(const Graph& g);

} // namespace aspstruct
