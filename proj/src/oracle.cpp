#include "aspstruct/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aspstruct {

namespace {

struct MaskRule {
	Mask head = 0, pos = 0, neg = 0;
};

struct Compiled {
	int n = 0;
	std::vector<MaskRule> rules; // check order: constraints first, small bodies first

	bool is_model(Mask I) const {
		for (const MaskRule& m : rules)
			if (((m.head | m.neg) & I) == 0 && (m.pos & ~I) == 0) return false;
		return true;
	}
};

Compiled compile(const Program& p) {
	if (p.atom_count() > 62)
		throw ResourceError("oracle: program has " + std::to_string(p.atom_count()) + " atoms (limit 62)");
	Compiled c;
	c.n = p.atom_count();
	for (const Rule& r : p.rules) {
		MaskRule m;
		for (AtomId a : r.head) m.head |= 1ull << a;
		for (AtomId a : r.pos) m.pos |= 1ull << a;
		for (AtomId a : r.neg) m.neg |= 1ull << a;
		c.rules.push_back(m);
	}
	std::stable_sort(c.rules.begin(), c.rules.end(), [](const MaskRule& a, const MaskRule& b) {
		auto key = [](const MaskRule& m) {
			return std::pair<int, int>(m.head != 0, __builtin_popcountll(m.pos | m.neg));
		};
		return key(a) < key(b);
	});
	return c;
}

// Reduct of a compiled program under I: drop rules with neg & I, clear neg.
Compiled reduct(const Compiled& c, Mask I) {
	Compiled r;
	r.n = c.n;
	for (const MaskRule& m : c.rules) {
		if (m.neg & I) continue;
		r.rules.push_back({m.head, m.pos, 0});
	}
	return r;
}

// Whether some J strictly below I models the (already reduced) program.
// Single-atom removals are probed first; they expose non-minimality of
// most saturation-style candidates immediately.
bool has_smaller_model(const Compiled& red, Mask I, const OracleBudget& budget) {
	if (__builtin_popcountll(I) > budget.minimality_cap)
		throw ResourceError("minimality check over " + std::to_string(__builtin_popcountll(I)) + " atoms");
	for (Mask bit = I; bit;) {
		Mask low = bit & (~bit + 1);
		bit ^= low;
		if (red.is_model(I ^ low)) return true;
	}
	for (Mask sub = (I - 1) & I; sub; sub = (sub - 1) & I)
		if (red.is_model(sub)) return true;
	if (I != 0 && red.is_model(0)) return true;
	return false;
}

} // namespace

bool satisfies(const Rule& r, Mask interp) {
	for (AtomId a : r.head)
		if (interp & (1ull << a)) return true;
	for (AtomId a : r.neg)
		if (interp & (1ull << a)) return true;
	for (AtomId a : r.pos)
		if (!(interp & (1ull << a))) return true;
	return false;
}

bool satisfies(const Program&, Mask interp, const Rule& r) { return satisfies(r, interp); }

bool is_model(const Program& p, Mask interp) {
	for (const Rule& r : p.rules)
		if (!satisfies(r, interp)) return false;
	return true;
}

Mask mask_of(const Program& p, const std::vector<std::string>& atoms) {
	Mask m = 0;
	for (const auto& name : atoms) {
		auto id = p.find_atom(name);
		if (!id) throw PreconditionError("unknown atom '" + name + "'");
		m |= 1ull << *id;
	}
	return m;
}

std::vector<std::string> atoms_of(const Program& p, Mask m) {
	std::vector<std::string> out;
	for (int a = 0; a < p.atom_count(); ++a)
		if (m & (1ull << a)) out.push_back(p.name(a));
	return out;
}

Program gl_reduct(const Program& p, Mask interp) {
	Program out = p.atoms_only();
	for (const Rule& r : p.rules) {
		bool blocked = false;
		for (AtomId a : r.neg)
			if (interp & (1ull << a)) { blocked = true; break; }
		if (blocked) continue;
		Rule q;
		q.head = r.head;
		q.pos = r.pos;
		q.label = r.label;
		out.add_rule(std::move(q));
	}
	return out;
}

bool is_answer_set(const Program& p, Mask interp, const OracleBudget& budget) {
	Compiled c = compile(p);
	if (!c.is_model(interp)) return false;
	Compiled red = reduct(c, interp);
	return !has_smaller_model(red, interp, budget);
}

std::vector<Mask> enumerate_answer_sets(const Program& p, const OracleBudget& budget) {
	if (p.atom_count() > budget.atom_cap)
		throw ResourceError("enumeration over " + std::to_string(p.atom_count()) +
		                    " atoms exceeds the budget of " + std::to_string(budget.atom_cap));
	Compiled c = compile(p);
	std::vector<Mask> out;
	Mask end = 1ull << c.n;
	for (Mask I = 0; I < end; ++I) {
		if (!c.is_model(I)) continue;
		Compiled red = reduct(c, I);
		if (!has_smaller_model(red, I, budget)) out.push_back(I);
	}
	return out;
}

std::optional<Mask> first_answer_set(const Program& p, const OracleBudget& budget) {
	if (p.atom_count() > budget.atom_cap)
		throw ResourceError("enumeration over " + std::to_string(p.atom_count()) +
		                    " atoms exceeds the budget of " + std::to_string(budget.atom_cap));
	Compiled c = compile(p);
	Mask end = 1ull << c.n;
	for (Mask I = 0; I < end; ++I) {
		if (!c.is_model(I)) continue;
		Compiled red = reduct(c, I);
		if (!has_smaller_model(red, I, budget)) return I;
	}
	return std::nullopt;
}

CorrespondenceReport check_correspondence(const Program& src, const Program& out,
                                          const std::vector<std::string>& projection,
                                          CorrespondenceMode mode,
                                          const OracleBudget& src_budget,
                                          const OracleBudget& out_budget) {
	CorrespondenceReport rep;
	rep.mode = mode;

	if (mode == CorrespondenceMode::Consistency) {
		auto a = first_answer_set(src, src_budget);
		auto b = first_answer_set(out, out_budget);
		rep.pass = a.has_value() == b.has_value();
		if (!rep.pass) {
			rep.detail = a ? "source consistent, output inconsistent" : "source inconsistent, output consistent";
			rep.counterexample = a ? atoms_of(src, *a) : atoms_of(out, *b);
		} else {
			rep.detail = a ? "both consistent" : "both inconsistent";
		}
		return rep;
	}

	std::vector<Mask> as_src = enumerate_answer_sets(src, src_budget);
	std::vector<Mask> as_out = enumerate_answer_sets(out, out_budget);

	// Project output answer sets onto the named atoms, compared by name sets.
	auto name_set = [](const Program& p, Mask m, const std::set<std::string>& keep) {
		std::set<std::string> s;
		for (int a = 0; a < p.atom_count(); ++a)
			if ((m & (1ull << a)) && (keep.empty() || keep.count(p.name(a)))) s.insert(p.name(a));
		return s;
	};
	std::set<std::string> proj(projection.begin(), projection.end());

	std::set<std::set<std::string>> src_sets;
	for (Mask m : as_src) src_sets.insert(name_set(src, m, {}));

	std::map<std::set<std::string>, int> out_projected;
	for (Mask m : as_out) out_projected[name_set(out, m, proj)]++;

	std::set<std::set<std::string>> out_sets;
	for (auto& [s, cnt] : out_projected) out_sets.insert(s);

	if (src_sets != out_sets) {
		rep.pass = false;
		for (const auto& s : out_sets)
			if (!src_sets.count(s)) {
				rep.detail = "projected answer set of the output is not an answer set of the source";
				rep.counterexample = std::vector<std::string>(s.begin(), s.end());
				return rep;
			}
		for (const auto& s : src_sets)
			if (!out_sets.count(s)) {
				rep.detail = "answer set of the source has no counterpart in the output";
				rep.counterexample = std::vector<std::string>(s.begin(), s.end());
				return rep;
			}
	}
	if (mode == CorrespondenceMode::Bijection) {
		for (auto& [s, cnt] : out_projected)
			if (cnt != 1) {
				rep.pass = false;
				rep.detail = "projection is not injective on answer sets of the output (" +
				             std::to_string(cnt) + " preimages)";
				rep.counterexample = std::vector<std::string>(s.begin(), s.end());
				return rep;
			}
	}
	rep.pass = true;
	rep.detail = "answer-set correspondence holds (" + std::to_string(src_sets.size()) + " answer sets)";
	return rep;
}

} // namespace aspstruct
