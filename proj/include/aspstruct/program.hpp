#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "aspstruct/errors.hpp"

namespace aspstruct {

using AtomId = int;

// A ground disjunctive rule H :- B+, not B-. The three blocks are kept as
// sorted atom-id vectors and are pairwise disjoint by construction.
struct Rule {
	std::vector<AtomId> head;
	std::vector<AtomId> pos;
	std::vector<AtomId> neg;
	std::string label;

	bool is_constraint() const { return head.empty(); }
	bool is_fact() const { return !head.empty() && pos.empty() && neg.empty(); }
	int size() const { return int(head.size() + pos.size() + neg.size()); }

	// at(r) in position order: B+ block, then H, then B-, each sorted by id.
	std::vector<AtomId> atoms_in_ord() const;
	std::vector<AtomId> atoms_sorted() const;
	bool contains(AtomId a) const;
	bool same_shape(const Rule& other) const {
		return head == other.head && pos == other.pos && neg == other.neg;
	}
};

struct Program {
	std::vector<std::string> atom_names;
	std::unordered_map<std::string, AtomId> atom_index;
	std::vector<Rule> rules;

	int atom_count() const { return int(atom_names.size()); }
	int rule_count() const { return int(rules.size()); }

	AtomId intern(const std::string& name);
	std::optional<AtomId> find_atom(const std::string& name) const;
	const std::string& name(AtomId a) const { return atom_names.at(size_t(a)); }

	// Returns a name not yet in the atom table: base, base', base'', ...
	std::string fresh_name(const std::string& base) const;

	// Set semantics on rules: structurally identical rules are inserted once.
	// Returns false when the rule was a duplicate. Auto-labels r1, r2, ...
	// when the rule carries no label.
	bool add_rule(Rule r);

	const Rule* find_rule(const std::string& label) const;
	int rule_position(const std::string& label) const;

	// Copy of the atom table with no rules.
	Program atoms_only() const;
};

// --- parsing / printing ----------------------------------------------------

Program parse_program(const std::string& text);
std::string render_rule(const Program& p, const Rule& r);
std::string render_program(const Program& p);

// Structural equality on atom names: both programs contain the same set of
// (H, B+, B-) triples once atoms are identified by name.
bool programs_equal_by_name(const Program& a, const Program& b);

// --- ord -------------------------------------------------------------------

// 1-based position of x in r: B+ first, then H, then B-, id order per block.
int ord(const Rule& r, AtomId x);

// --- normalization ---------------------------------------------------------

struct NormalizeResult {
	Program program;
	std::vector<std::string> projection; // = atom names of the input
	int aux_count = 0;
};

// Body chaining with fresh auxiliary atoms until every rule has at most
// 3 atoms. Atoms listed in chain_first are consumed at the start of the
// chain. Rules with two or more head atoms and more than 3 atoms total are
// rejected.
NormalizeResult normalize(const Program& p, const std::set<std::string>& chain_first = {});

bool is_normalized(const Program& p);

// --- completion ------------------------------------------------------------

// Support rules r1_h | ... | rl_h :- h plus the consistency constraints
// :- r_h, not a (a in B+) and :- r_h, b (b in B- or H, b != h). With
// simplify_singletons the support atom of a sole supporting rule is replaced
// by the head atom itself and tautological support rules are dropped.
Program completion(const Program& p, bool simplify_singletons = true);

// --- dependency graph / tightness -------------------------------------------

// Positive dependency graph: edge a -> b for a in B+_r, b in H_r.
std::vector<std::vector<AtomId>> dependency_graph(const Program& p);
bool is_tight(const Program& p);

enum class Ternary { True, False, Unverifiable };

// Brute-force check that projection is a bijection between the models of
// C(p) and the models of p. Returns Unverifiable when at(C(p)) exceeds the
// cap; never silently defaults.
Ternary is_fully_tight(const Program& p, int atom_cap = 22);

} // namespace aspstruct
