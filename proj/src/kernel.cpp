#include "aspstruct/kernel.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

#include "aspstruct/graphs.hpp"
#include "aspstruct/structparams.hpp"

namespace aspstruct {

namespace {

RuleSkeleton skeleton_of(const Program& p, const Rule& r, const std::set<AtomId>& s) {
	RuleSkeleton sk;
	for (AtomId a : r.head)
		if (s.count(a)) sk.head.push_back(p.name(a));
	for (AtomId a : r.pos)
		if (s.count(a)) sk.pos.push_back(p.name(a));
	for (AtomId a : r.neg)
		if (s.count(a)) sk.neg.push_back(p.name(a));
	return sk;
}

double binom(int n, int k) {
	if (k < 0 || k > n) return 0;
	double r = 1;
	for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
	return r;
}

void check_rule_sizes(const Program& p, int c) {
	for (const Rule& r : p.rules)
		if (r.size() > c)
			throw PreconditionError("kernelize: rule " + r.label + " has " + std::to_string(r.size()) +
			                        " atoms, exceeding the bound " + std::to_string(c));
}

// Drop every rule that mentions a removed atom; rebuild the atom table from
// the survivors.
Program drop_atoms(const Program& p, const std::set<AtomId>& removed) {
	Program out;
	for (const Rule& r : p.rules) {
		bool hit = false;
		for (AtomId a : r.atoms_sorted())
			if (removed.count(a)) { hit = true; break; }
		if (hit) continue;
		Rule q;
		q.label = r.label;
		for (AtomId a : r.head) q.head.push_back(out.intern(p.name(a)));
		for (AtomId a : r.pos) q.pos.push_back(out.intern(p.name(a)));
		for (AtomId a : r.neg) q.neg.push_back(out.intern(p.name(a)));
		out.add_rule(std::move(q));
	}
	return out;
}

void fill_bounds(KernelResult& res, int cover_size, int c) {
	res.paper_bound = std::pow(4.0, c) * binom(cover_size, c);
	double sum = 0;
	for (int i = 0; i <= c - 1; ++i) sum += binom(cover_size, i);
	res.corrected_bound = std::pow(4.0, c) * sum;
}

} // namespace

Role compute_role(const Program& p, const std::set<AtomId>& s, AtomId a) {
	if (s.count(a)) throw PreconditionError("compute_role: atom " + p.name(a) + " is inside S");
	Role role;
	for (const Rule& r : p.rules) {
		RuleSkeleton sk = skeleton_of(p, r, s);
		if (std::binary_search(r.head.begin(), r.head.end(), a)) role.in_head.insert(sk);
		if (std::binary_search(r.pos.begin(), r.pos.end(), a)) role.in_pos.insert(sk);
		if (std::binary_search(r.neg.begin(), r.neg.end(), a)) role.in_neg.insert(sk);
	}
	return role;
}

std::string removal_log_json(const KernelResult& k) {
	nlohmann::json arr = nlohmann::json::array();
	for (const RemovalEntry& e : k.log) {
		nlohmann::json role;
		auto block = [](const std::set<RuleSkeleton>& sks) {
			nlohmann::json out = nlohmann::json::array();
			for (const RuleSkeleton& sk : sks)
				out.push_back({{"head", sk.head}, {"pos", sk.pos}, {"neg", sk.neg}});
			return out;
		};
		role["head"] = block(e.role.in_head);
		role["pos"] = block(e.role.in_pos);
		role["neg"] = block(e.role.in_neg);
		arr.push_back({{"removed", e.removed}, {"kept", e.kept}, {"class_size", e.class_size}, {"role", role}});
	}
	nlohmann::json out;
	out["removals"] = arr;
	out["bound_as_stated"] = k.paper_bound;
	out["bound_corrected"] = k.corrected_bound;
	return out.dump(2);
}

KernelResult kernelize_primal(const Program& p, const std::vector<AtomId>& cover, int c) {
	check_rule_sizes(p, c);
	Graph g = primal_graph(p);
	if (!verify_vertex_cover(g, cover))
		throw PreconditionError("kernelize_primal: S is not a vertex cover of the primal graph");
	std::set<AtomId> s(cover.begin(), cover.end());

	std::map<Role, std::vector<AtomId>> classes;
	for (AtomId a = 0; a < p.atom_count(); ++a) {
		if (s.count(a)) continue;
		classes[compute_role(p, s, a)].push_back(a);
	}
	KernelResult res;
	std::set<AtomId> removed;
	for (auto& [role, members] : classes) {
		for (size_t i = 1; i < members.size(); ++i) {
			removed.insert(members[i]);
			res.log.push_back({p.name(members[i]), p.name(members[0]), int(members.size()), role});
		}
	}
	res.program = drop_atoms(p, removed);
	fill_bounds(res, int(s.size()), c);
	return res;
}

KernelResult kernelize_extended(const Program& p, const std::vector<AtomId>& cover, int c) {
	check_rule_sizes(p, c);
	TypedPrimal typed = typed_primal_graphs(p);
	if (!verify_vertex_cover(typed.g0, cover))
		throw PreconditionError("kernelize_extended: S is not a vertex cover of the type-0 primal graph");
	std::set<AtomId> s(cover.begin(), cover.end());

	// special partner: the second atom of a type-1/2 rule through a, outside
	// S and not already a type-0 neighbor
	auto adj0 = typed.g0.adjacency();
	std::vector<std::set<AtomId>> partners(static_cast<size_t>(p.atom_count()));
	std::vector<int> pair_rules(size_t(p.atom_count()) * size_t(p.atom_count()), 0);
	std::vector<char> in_type12(size_t(p.atom_count()), 0);
	for (const Rule& r : p.rules) {
		RuleType t = classify_rule(r);
		if (t == RuleType::Type0) continue;
		auto atoms = r.atoms_sorted();
		for (AtomId a : atoms) in_type12[size_t(a)] = 1;
		AtomId a = atoms[0], b = atoms[1];
		pair_rules[size_t(a) * size_t(p.atom_count()) + size_t(b)]++;
		auto is_g0_neighbor = [&](AtomId u, AtomId v) {
			return std::binary_search(adj0[size_t(u)].begin(), adj0[size_t(u)].end(), v);
		};
		if (!s.count(b) && !is_g0_neighbor(a, b)) partners[size_t(a)].insert(b);
		if (!s.count(a) && !is_g0_neighbor(b, a)) partners[size_t(b)].insert(a);
	}
	for (AtomId a = 0; a < p.atom_count(); ++a)
		if (partners[size_t(a)].size() > 1)
			throw PreconditionError("kernelize_extended: atom " + p.name(a) +
			                        " has more than one type-1/2 neighbor outside the type-0 structure");

	struct CompoundRole {
		char t1 = 0, t2 = 0;
		Role own;
		std::optional<Role> partner;
		int multiplicity = 0;
		auto operator<=>(const CompoundRole&) const = default;
	};

	std::map<CompoundRole, std::vector<AtomId>> classes;
	for (AtomId a = 0; a < p.atom_count(); ++a) {
		if (s.count(a)) continue;
		CompoundRole cr;
		for (const Rule& r : p.rules) {
			RuleType t = classify_rule(r);
			if (t == RuleType::Type0 || !r.contains(a)) continue;
			if (t == RuleType::Type1) cr.t1 = 1;
			if (t == RuleType::Type2) cr.t2 = 1;
		}
		cr.own = compute_role(p, s, a);
		if (!partners[size_t(a)].empty()) {
			AtomId b = *partners[size_t(a)].begin();
			cr.partner = compute_role(p, s, b);
			AtomId lo = std::min(a, b), hi = std::max(a, b);
			cr.multiplicity = pair_rules[size_t(lo) * size_t(p.atom_count()) + size_t(hi)];
		}
		classes[cr].push_back(a);
	}
	KernelResult res;
	std::set<AtomId> removed;
	for (auto& [cr, members] : classes) {
		size_t keep = cr.partner.has_value() ? 4 : 1;
		for (size_t i = keep; i < members.size(); ++i) {
			removed.insert(members[i]);
			res.log.push_back({p.name(members[i]), p.name(members[0]), int(members.size()), cr.own});
		}
	}
	res.program = drop_atoms(p, removed);
	fill_bounds(res, int(s.size()), c);
	return res;
}

KernelResult kernelize_incidence(const Program& p, const std::vector<int>& cover, int c) {
	check_rule_sizes(p, c);
	Graph inc = incidence_graph(p);
	if (!verify_vertex_cover(inc, cover))
		throw PreconditionError("kernelize_incidence: S is not a vertex cover of the incidence graph");

	// split rules: H :- aux_r and aux_r :- B+, not B-
	Program split = p.atoms_only();
	std::vector<AtomId> aux(static_cast<size_t>(p.rule_count()));
	for (int i = 0; i < p.rule_count(); ++i) {
		const Rule& r = p.rules[size_t(i)];
		aux[size_t(i)] = split.intern(split.fresh_name("aux_" + r.label));
		Rule head_half, body_half;
		head_half.label = r.label + "_h";
		head_half.head = r.head;
		head_half.pos = {aux[size_t(i)]};
		body_half.label = r.label + "_b";
		body_half.head = {aux[size_t(i)]};
		body_half.pos = r.pos;
		body_half.neg = r.neg;
		split.add_rule(std::move(head_half));
		split.add_rule(std::move(body_half));
	}

	// derived primal cover: (S n atoms) + union of at(r) for covered rules
	std::set<AtomId> derived;
	int n = p.atom_count();
	for (int v : cover) {
		if (v < n) {
			derived.insert(v);
		} else {
			for (AtomId a : p.rules[size_t(v - n)].atoms_sorted()) derived.insert(a);
		}
	}
	std::vector<AtomId> derived_cover(derived.begin(), derived.end());
	return kernelize_primal(split, derived_cover, c + 1);
}

bool decide_consistency_vc(const Program& p, int c, const OracleBudget& budget) {
	Graph g = primal_graph(p);
	auto vc = min_vertex_cover(g);
	if (!vc) throw VerificationError("decide_consistency_vc: no vertex cover found");
	KernelResult kernel = kernelize_primal(p, vc->vertices, c);
	if (kernel.program.atom_count() > budget.atom_cap)
		throw ResourceError("decide_consistency_vc: kernel still has " +
		                    std::to_string(kernel.program.atom_count()) + " atoms, over the enumeration budget");
	return first_answer_set(kernel.program, budget).has_value();
}

} // namespace aspstruct
