#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aspstruct/program.hpp"

namespace aspstruct {

using Mask = std::uint64_t;

struct OracleBudget {
	int atom_cap = 22;       // full-enumeration bound
	int minimality_cap = 30; // |I| bound for subset scans
};

// I satisfies r iff (H u B-) meets I or B+ is not contained in I.
bool satisfies(const Rule& r, Mask interp);
bool satisfies(const Program& p, Mask interp, const Rule& r);
bool is_model(const Program& p, Mask interp);

Mask mask_of(const Program& p, const std::vector<std::string>& atoms);
std::vector<std::string> atoms_of(const Program& p, Mask m);

// Rules with B- meeting I removed, negative bodies stripped.
Program gl_reduct(const Program& p, Mask interp);

// I is a minimal model of p^I. The subset scan is bounded by
// budget.minimality_cap bits of I.
bool is_answer_set(const Program& p, Mask interp, const OracleBudget& budget = {});

// Exhaustive bitmask-ascending scan; deterministic. The module stays naive
// by design: no propagation, no learning.
std::vector<Mask> enumerate_answer_sets(const Program& p, const OracleBudget& budget = {});

// Early-exit variant for consistency questions.
std::optional<Mask> first_answer_set(const Program& p, const OracleBudget& budget = {});

enum class CorrespondenceMode { Set, Bijection, Consistency };

struct CorrespondenceReport {
	bool pass = false;
	CorrespondenceMode mode = CorrespondenceMode::Set;
	std::string detail;
	std::optional<std::vector<std::string>> counterexample; // interpretation as atom names
};

// Compares AS(src) with the projection of AS(out) onto the named atoms.
CorrespondenceReport check_correspondence(const Program& src, const Program& out,
                                          const std::vector<std::string>& projection,
                                          CorrespondenceMode mode,
                                          const OracleBudget& src_budget = {},
                                          const OracleBudget& out_budget = {});

} // namespace aspstruct
