#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "aspstruct/gen.hpp"
#include "aspstruct/graphs.hpp"
#include "aspstruct/oracle.hpp"
#include "aspstruct/program.hpp"

namespace testutil {

using namespace aspstruct;

inline const char* kPi1 = "b :- not a.\nb :- a, c.\na | d.\nc :- a, not d.\n";
inline const char* kPiM = "a :- not b.\nb :- not a.\n:- a, b.\n";

inline std::set<std::string> names(const Program& p, Mask m) {
	std::set<std::string> out;
	for (int a = 0; a < p.atom_count(); ++a)
		if (m & (1ull << a)) out.insert(p.name(a));
	return out;
}

inline std::set<std::set<std::string>> answer_set_names(const Program& p, const OracleBudget& b = {}) {
	std::set<std::set<std::string>> out;
	for (Mask m : enumerate_answer_sets(p, b)) out.insert(names(p, m));
	return out;
}

inline std::set<std::set<std::string>> projected_answer_sets(const Program& p,
                                                             const std::vector<std::string>& projection,
                                                             const OracleBudget& b = {}) {
	std::set<std::string> keep(projection.begin(), projection.end());
	std::set<std::set<std::string>> out;
	for (Mask m : enumerate_answer_sets(p, b)) {
		std::set<std::string> s;
		for (const auto& nm : names(p, m))
			if (keep.count(nm)) s.insert(nm);
		out.insert(s);
	}
	return out;
}

inline std::set<std::pair<std::string, std::string>> edge_names(const Graph& g) {
	std::set<std::pair<std::string, std::string>> out;
	for (auto [u, v] : g.edges) {
		std::string a = g.vertices[size_t(u)].label, b = g.vertices[size_t(v)].label;
		if (a > b) std::swap(a, b);
		out.insert({a, b});
	}
	return out;
}

// --- independent brute-force oracles (kept naive on purpose) -------------------

inline int brute_min_vc(const Graph& g) {
	int n = g.n();
	for (int k = 0; k <= n; ++k)
		for (unsigned s = 0; s < (1u << n); ++s) {
			if (__builtin_popcount(s) != k) continue;
			bool ok = true;
			for (auto [u, v] : g.edges)
				if (!(s & (1u << u)) && !(s & (1u << v))) { ok = false; break; }
			if (ok) return k;
		}
	return n;
}

inline int brute_min_fvs(const Graph& g) {
	int n = g.n();
	for (int k = 0; k <= n; ++k)
		for (unsigned s = 0; s < (1u << n); ++s) {
			if (__builtin_popcount(s) != k) continue;
			std::vector<int> keep(size_t(n), 1);
			for (int v = 0; v < n; ++v)
				if (s & (1u << v)) keep[size_t(v)] = 0;
			if (g.induced(keep).is_acyclic()) return k;
		}
	return n;
}

// treewidth as the best elimination order, all n! orders
inline int brute_treewidth(const Graph& g) {
	int n = g.n();
	std::vector<int> perm(static_cast<size_t>(n));
	for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
	int best = n;
	do {
		std::set<std::pair<int, int>> edges = g.edges;
		std::vector<char> gone(static_cast<size_t>(n), 0);
		int width = 0;
		for (int v : perm) {
			std::vector<int> nb;
			for (auto [x, y] : edges) {
				if (gone[size_t(x)] || gone[size_t(y)]) continue;
				if (x == v) nb.push_back(y);
				if (y == v) nb.push_back(x);
			}
			width = std::max(width, int(nb.size()));
			for (size_t i = 0; i < nb.size(); ++i)
				for (size_t j = i + 1; j < nb.size(); ++j)
					edges.insert({std::min(nb[i], nb[j]), std::max(nb[i], nb[j])});
			gone[size_t(v)] = 1;
		}
		best = std::min(best, width);
	} while (std::next_permutation(perm.begin(), perm.end()));
	return best;
}

// pathwidth as the best vertex separation, all n! orders
inline int brute_pathwidth(const Graph& g) {
	int n = g.n();
	auto adj = g.adjacency();
	std::vector<int> perm(static_cast<size_t>(n));
	for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
	int best = n;
	do {
		int vs = 0;
		for (int i = 0; i < n; ++i) {
			std::set<int> placed(perm.begin(), perm.begin() + i + 1);
			int boundary = 0;
			for (int j = 0; j <= i; ++j) {
				for (int w : adj[size_t(perm[size_t(j)])])
					if (!placed.count(w)) {
						++boundary;
						break;
					}
			}
			vs = std::max(vs, boundary);
		}
		best = std::min(best, vs);
	} while (std::next_permutation(perm.begin(), perm.end()));
	return best;
}

inline long long truth_table_count(const Cnf& f) {
	long long count = 0;
	for (unsigned a = 0; a < (1u << f.n_vars); ++a) {
		bool ok = true;
		for (const auto& clause : f.clauses) {
			bool sat = false;
			for (int lit : clause) {
				bool val = a & (1u << (std::abs(lit) - 1));
				if ((lit > 0) == val) { sat = true; break; }
			}
			if (!sat) { ok = false; break; }
		}
		if (ok) ++count;
	}
	return count;
}

} // namespace testutil
