#pragma once

#include <set>
#include <string>
#include <vector>

#include "aspstruct/oracle.hpp"
#include "aspstruct/program.hpp"

namespace aspstruct {

// S-restricted rule shape (H n S, B+ n S, B- n S), atoms by name so logs
// survive re-interning.
struct RuleSkeleton {
	std::vector<std::string> head, pos, neg;
	auto operator<=>(const RuleSkeleton&) const = default;
};

// The role of an atom a outside S: the skeletons of the rules using a, per
// occurrence position.
struct Role {
	std::set<RuleSkeleton> in_head, in_pos, in_neg;
	auto operator<=>(const Role&) const = default;
};

Role compute_role(const Program& p, const std::set<AtomId>& s, AtomId a);

struct RemovalEntry {
	std::string removed;
	std::string kept;
	int class_size = 0;
	Role role;
};

struct KernelResult {
	Program program;
	std::vector<RemovalEntry> log;
	// size bound as stated and its corrected closed form
	double paper_bound = 0;
	double corrected_bound = 0;
};

std::string removal_log_json(const KernelResult& k);

// One representative (least atom id) per role class outside the cover; all
// rules touching removed atoms are deleted.
KernelResult kernelize_primal(const Program& p, const std::vector<AtomId>& cover, int c);

// Compound-role variant: classes whose members occur in type-1/2 rules with
// a partner outside the cover keep four representatives. The cover is of
// the type-0 primal graph.
KernelResult kernelize_extended(const Program& p, const std::vector<AtomId>& cover, int c);

// Splits every rule through a fresh aux atom, derives the primal cover
// (S n atoms) + union of at(r) over covered rules, and kernelizes with c+1.
// The cover is over incidence-graph vertices: atom ids, then rule vertices
// at atom_count()+i.
KernelResult kernelize_incidence(const Program& p, const std::vector<int>& cover, int c);

// min VC of the primal graph -> kernelize_primal -> brute-force consistency.
bool decide_consistency_vc(const Program& p, int c, const OracleBudget& budget = {});

} // namespace aspstruct
