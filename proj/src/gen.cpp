#include "aspstruct/gen.hpp"

#include <algorithm>
#include <set>

namespace aspstruct {

Program random_program(Rng& rng, const ProgramShape& shape) {
	std::uniform_int_distribution<int> natoms(2, std::max(2, shape.max_atoms));
	int n = natoms(rng);
	std::uniform_int_distribution<int> nrules(1, std::max(1, shape.max_rules));
	int m = nrules(rng);

	Program p;
	for (int i = 0; i < n; ++i) p.intern("x" + std::to_string(i + 1));

	std::uniform_int_distribution<int> atom(0, n - 1);
	std::uniform_int_distribution<int> kind(0, 9);
	for (int r = 0; r < m; ++r) {
		Rule rule;
		int k = kind(rng);
		auto distinct = [&](int count, int lo, int hi) {
			std::set<int> s;
			std::uniform_int_distribution<int> d(lo, hi);
			int guard = 0;
			while (int(s.size()) < count && ++guard < 64) s.insert(d(rng));
			return std::vector<int>(s.begin(), s.end());
		};
		if (k <= 1) { // fact
			rule.head = {atom(rng)};
		} else if (k <= 3) { // constraint over up to 3 atoms
			auto v = distinct(1 + int(rng() % 3), 0, n - 1);
			for (size_t i = 0; i < v.size(); ++i)
				(rng() % 2 ? rule.pos : rule.neg).push_back(v[i]);
			if (rule.pos.empty() && rule.neg.empty()) rule.pos.push_back(atom(rng));
		} else if (k <= 7 || !shape.allow_disjunctive) { // normal rule
			int h = atom(rng);
			rule.head = {h};
			int body = 1 + int(rng() % 2);
			// positive body atoms below the head keep the dependency graph acyclic
			if (shape.tight_only && h == 0) body = 0;
			for (int i = 0; i < body; ++i) {
				bool negated = rng() % 2;
				int hi = shape.tight_only && !negated ? h - 1 : n - 1;
				if (hi < 0) continue;
				std::uniform_int_distribution<int> d(0, hi);
				int a = d(rng);
				if (a == h || rule.contains(a)) continue;
				(negated ? rule.neg : rule.pos).push_back(a);
			}
			if (rule.size() == 1 && rng() % 2) {
				int b = atom(rng);
				if (b != h) rule.neg.push_back(b);
			}
		} else { // disjunctive guess a | b
			auto v = distinct(2, 0, n - 1);
			if (v.size() < 2) {
				rule.head = {atom(rng)};
			} else {
				rule.head = {v[0], v[1]};
			}
		}
		std::sort(rule.head.begin(), rule.head.end());
		rule.head.erase(std::unique(rule.head.begin(), rule.head.end()), rule.head.end());
		std::sort(rule.pos.begin(), rule.pos.end());
		rule.pos.erase(std::unique(rule.pos.begin(), rule.pos.end()), rule.pos.end());
		std::sort(rule.neg.begin(), rule.neg.end());
		rule.neg.erase(std::unique(rule.neg.begin(), rule.neg.end()), rule.neg.end());
		// enforce block disjointness
		for (AtomId a : rule.head) {
			rule.pos.erase(std::remove(rule.pos.begin(), rule.pos.end(), a), rule.pos.end());
			rule.neg.erase(std::remove(rule.neg.begin(), rule.neg.end(), a), rule.neg.end());
		}
		for (AtomId a : rule.pos)
			rule.neg.erase(std::remove(rule.neg.begin(), rule.neg.end(), a), rule.neg.end());
		if (rule.size() == 0 || rule.size() > 3) continue;
		p.add_rule(std::move(rule));
	}
	if (p.rules.empty()) {
		Rule fact;
		fact.head = {0};
		p.add_rule(std::move(fact));
	}
	// drop atoms that ended up unused so at(p) matches the rule set
	Program q;
	for (const Rule& r : p.rules) {
		Rule c;
		c.label = r.label;
		for (AtomId a : r.head) c.head.push_back(q.intern(p.name(a)));
		for (AtomId a : r.pos) c.pos.push_back(q.intern(p.name(a)));
		for (AtomId a : r.neg) c.neg.push_back(q.intern(p.name(a)));
		q.add_rule(std::move(c));
	}
	return q;
}

Program random_fully_tight_program(Rng& rng, const ProgramShape& shape, int tightness_cap, int max_tries) {
	for (int t = 0; t < max_tries; ++t) {
		Program p = random_program(rng, shape);
		if (!is_tight(p)) continue;
		Ternary ft = is_fully_tight(p, tightness_cap);
		if (ft == Ternary::True) return p;
	}
	throw ResourceError("random_fully_tight_program: no fully tight instance found");
}

Graph random_graph(Rng& rng, int n, double edge_prob) {
	Graph g;
	for (int i = 0; i < n; ++i) g.add_vertex(VertexKind::Atom, "v" + std::to_string(i));
	std::uniform_real_distribution<double> coin(0.0, 1.0);
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j)
			if (coin(rng) < edge_prob) g.add_edge(i, j);
	return g;
}

Cnf random_cnf(Rng& rng, int n_vars, int n_clauses, int max_clause_len) {
	Cnf f;
	f.n_vars = n_vars;
	std::uniform_int_distribution<int> var(1, n_vars);
	std::uniform_int_distribution<int> len(1, max_clause_len);
	for (int c = 0; c < n_clauses; ++c) {
		std::set<int> clause;
		int l = len(rng);
		int guard = 0;
		while (int(clause.size()) < l && ++guard < 64) {
			int v = var(rng);
			int lit = rng() % 2 ? v : -v;
			if (clause.count(-lit)) continue;
			clause.insert(lit);
		}
		if (!clause.empty()) f.clauses.emplace_back(clause.begin(), clause.end());
	}
	return f;
}

RandomPdInstance random_two_bag_pd(Rng& rng, int n_bags, int bag_size) {
	RandomPdInstance inst;
	std::vector<std::vector<int>> bags(static_cast<size_t>(n_bags));
	int next = 0;
	std::vector<int> carry;
	for (int b = 0; b < n_bags; ++b) {
		std::vector<int> bag = carry;
		while (int(bag.size()) < bag_size) bag.push_back(next++);
		carry.clear();
		// a random subset of this bag's fresh vertices flows into the next bag
		for (int v : bag)
			if (rng() % 2 && std::find(carry.begin(), carry.end(), v) == carry.end() &&
			    (b == 0 || std::find(bags[size_t(b - 1)].begin(), bags[size_t(b - 1)].end(), v) ==
			                   bags[size_t(b - 1)].end()))
				carry.push_back(v);
		std::sort(bag.begin(), bag.end());
		bags[size_t(b)] = bag;
	}
	for (int i = 0; i < next; ++i) inst.graph.add_vertex(VertexKind::Atom, "v" + std::to_string(i));
	// random edges inside bags keep the decomposition valid
	for (const auto& bag : bags)
		for (size_t i = 0; i < bag.size(); ++i)
			for (size_t j = i + 1; j < bag.size(); ++j)
				if (rng() % 100 < 60) inst.graph.add_edge(bag[i], bag[j]);
	inst.pd.bags = bags;
	return inst;
}

} // namespace aspstruct
