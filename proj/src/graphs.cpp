#include "aspstruct/graphs.hpp"

#include <algorithm>

#include "json.hpp"

namespace aspstruct {

void Graph::add_vertex(VertexKind kind, const std::string& label) {
	vertices.push_back({int(vertices.size()), kind, label});
}

void Graph::add_edge(int u, int v) {
	if (u == v) throw PreconditionError("graph: self-loop on vertex " + std::to_string(u));
	if (u < 0 || v < 0 || u >= n() || v >= n())
		throw PreconditionError("graph: edge endpoint out of range");
	if (u > v) std::swap(u, v);
	edges.insert({u, v});
}

bool Graph::has_edge(int u, int v) const {
	if (u > v) std::swap(u, v);
	return edges.count({u, v}) > 0;
}

std::vector<std::vector<int>> Graph::adjacency() const {
	std::vector<std::vector<int>> adj(static_cast<size_t>(n()));
	for (auto [u, v] : edges) {
		adj[size_t(u)].push_back(v);
		adj[size_t(v)].push_back(u);
	}
	for (auto& a : adj) std::sort(a.begin(), a.end());
	return adj;
}

std::vector<int> Graph::degrees() const {
	std::vector<int> d(size_t(n()), 0);
	for (auto [u, v] : edges) {
		d[size_t(u)]++;
		d[size_t(v)]++;
	}
	return d;
}

int Graph::max_degree() const {
	int best = 0;
	for (int d : degrees()) best = std::max(best, d);
	return best;
}

Graph Graph::induced(const std::vector<int>& keep) const {
	Graph g;
	g.vertices = vertices;
	for (auto [u, v] : edges)
		if (keep[size_t(u)] && keep[size_t(v)]) g.edges.insert({u, v});
	return g;
}

bool Graph::is_acyclic() const {
	std::vector<int> parent(size_t(n()), -2);
	auto adj = adjacency();
	for (int s = 0; s < n(); ++s) {
		if (parent[size_t(s)] != -2) continue;
		parent[size_t(s)] = -1;
		std::vector<int> stack{s};
		while (!stack.empty()) {
			int v = stack.back();
			stack.pop_back();
			for (int w : adj[size_t(v)]) {
				if (w == parent[size_t(v)]) continue;
				if (parent[size_t(w)] != -2) return false;
				parent[size_t(w)] = v;
				stack.push_back(w);
			}
		}
	}
	return true;
}

Graph primal_graph(const Program& p) {
	Graph g;
	for (int a = 0; a < p.atom_count(); ++a) g.add_vertex(VertexKind::Atom, p.name(a));
	for (const Rule& r : p.rules) {
		auto atoms = r.atoms_sorted();
		for (size_t i = 0; i < atoms.size(); ++i)
			for (size_t j = i + 1; j < atoms.size(); ++j) g.add_edge(atoms[i], atoms[j]);
	}
	return g;
}

Graph incidence_graph(const Program& p) {
	Graph g;
	for (int a = 0; a < p.atom_count(); ++a) g.add_vertex(VertexKind::Atom, p.name(a));
	for (const Rule& r : p.rules) g.add_vertex(VertexKind::Rule, r.label);
	int n = p.atom_count();
	for (int i = 0; i < p.rule_count(); ++i)
		for (AtomId a : p.rules[size_t(i)].atoms_sorted()) g.add_edge(a, n + i);
	return g;
}

RuleType classify_rule(const Rule& r) {
	if (r.head.size() == 1 && r.pos.empty() && r.neg.size() == 1) return RuleType::Type1;
	if (r.head.size() == 2 && r.pos.empty() && r.neg.empty()) return RuleType::Type2;
	return RuleType::Type0;
}

TypedPrimal typed_primal_graphs(const Program& p) {
	TypedPrimal t;
	for (Graph* g : {&t.g0, &t.g1, &t.g2})
		for (int a = 0; a < p.atom_count(); ++a) g->add_vertex(VertexKind::Atom, p.name(a));
	for (const Rule& r : p.rules) {
		Graph* g = nullptr;
		switch (classify_rule(r)) {
			case RuleType::Type0: g = &t.g0; break;
			case RuleType::Type1: g = &t.g1; break;
			case RuleType::Type2: g = &t.g2; break;
		}
		auto atoms = r.atoms_sorted();
		for (size_t i = 0; i < atoms.size(); ++i)
			for (size_t j = i + 1; j < atoms.size(); ++j) g->add_edge(atoms[i], atoms[j]);
	}
	return t;
}

std::string graph_to_dot(const Graph& g) {
	std::string out = "graph g {\n";
	for (const Vertex& v : g.vertices) {
		out += "  n" + std::to_string(v.id) + " [label=\"" + v.label + "\"";
		if (v.kind == VertexKind::Rule) out += ", shape=box";
		out += "];\n";
	}
	for (auto [u, v] : g.edges)
		out += "  n" + std::to_string(u) + " -- n" + std::to_string(v) + ";\n";
	out += "}\n";
	return out;
}

std::string graph_to_json(const Graph& g) {
	nlohmann::json j;
	j["vertices"] = nlohmann::json::array();
	for (const Vertex& v : g.vertices)
		j["vertices"].push_back({{"id", v.id},
		                         {"kind", v.kind == VertexKind::Atom ? "atom" : "rule"},
		                         {"label", v.label}});
	j["edges"] = nlohmann::json::array();
	for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
	return j.dump(2);
}

} // namespace aspstruct
