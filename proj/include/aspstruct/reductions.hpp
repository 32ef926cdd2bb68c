#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aspstruct/program.hpp"
#include "aspstruct/structparams.hpp"

namespace aspstruct {

// --- CNF -----------------------------------------------------------------------

struct Cnf {
	int n_vars = 0;
	std::vector<std::vector<int>> clauses; // DIMACS literals, no trailing 0
};

Cnf parse_dimacs(const std::string& text);

// Guess pair v / nv per variable plus one constraint per clause whose body
// complements every literal. Output is normalized and tight; answer sets
// correspond to the satisfying assignments.
Program sat_to_asp(const Cnf& f);

// --- bit encodings ----------------------------------------------------------------

struct BitEncoding {
	std::vector<AtomId> members; // fixed order (atom id ascending)
	int bits = 0;                // max(1, ceil(log2 |members|)) with the floor

	int ordinal(AtomId x) const;
	// bit i of x's ordinal
	bool bit(AtomId x, int i) const;
};

BitEncoding build_bval(const std::vector<AtomId>& members, bool bit_floor = true);

// Names of the bval atoms for pointer j, e.g. {"b1_0", "nb1_1"}.
std::vector<std::string> bval_names(const BitEncoding& enc, AtomId x, int j);

// --- reduction outputs ------------------------------------------------------------

struct ReductionOutput {
	Program program;
	std::string mode; // fvs | fvs-paths | td | td-local
	std::vector<std::string> projection;
	std::map<std::string, int> provenance; // rule label -> family (0 = variant plumbing)

	int s_size = 0;
	int bits = 0;       // fvs modes
	int td_width = -1;  // td modes: width of the guiding TD
	std::string sat_atom;
	std::string wide_rule_label; // fvs modes: the family-9 rule

	std::vector<std::string> source_atoms;
	std::vector<std::string> rule_labels; // source rule labels, in rule order
	std::map<std::string, std::string> complement; // x -> nx

	// names per saturated group, for witness construction
	std::vector<std::string> bit_atoms, value_atoms;
	std::vector<int> node_bits; // td modes: bits per node
};

std::string reduction_sidecar_json(const ReductionOutput& out);

enum class TightnessCheck { Check, Assume };

struct FvsOptions {
	bool bit_floor = true;
	TightnessCheck tightness = TightnessCheck::Check;
	int tightness_cap = 22;
};

// Fig.-style rule families (1)-(9) over a normalized fully tight program and
// a sparse feedback vertex set of its primal graph.
ReductionOutput reduce_fvs(const Program& p, const std::vector<AtomId>& s, const FvsOptions& opts = {});

// Variant where the sat_r occurrences of families (4),(6),(7) and the x
// occurrences of family (5) are spread over chained copies, so that the
// incidence graph minus the witness decomposes into almost paths.
ReductionOutput reduce_fvs_almost_paths(const Program& p, const std::vector<AtomId>& s,
                                        const FvsOptions& opts = {});

struct FvsWitness {
	Program normalized;              // chained program, wide rule kept intact
	std::vector<std::string> atoms;  // S' = sat, values, bits
	int rule_vertex = -1;            // incidence vertex of the wide rule
	std::vector<int> vertices;       // S'' in incidence-graph vertex ids
	int size_bound = 0;              // 6 max(1, ceil(log2 |S|)) + 8
};

// S'' = {sat, v_j, nv_j, b_j_i, nb_j_i} + the wide-rule vertex, verified to
// be an FVS of the incidence graph of the normalized program.
FvsWitness fvs_witness_for_reduced(const ReductionOutput& out);

struct TdOptions {
	bool bit_floor = true;
	TightnessCheck tightness = TightnessCheck::Check;
	int tightness_cap = 22;
};

// Fig.-style rule families (10)-(19) guided by an annotated nice TD.
ReductionOutput reduce_td(const Program& p, const AnnotatedTd& t, const TdOptions& opts = {});

// Copies sat'_t per node with equivalence rules along tree edges replace the
// root saturation atom in the node-local families.
ReductionOutput reduce_td_localized(const Program& p, const AnnotatedTd& t, const TdOptions& opts = {});

struct TdWitness {
	Program normalized;
	TreeDecomposition td;
	int width_bound = 0; // 20 max(1, ceil(log2 k)) + 14
	bool two_bag = false;
};

// Fine-grained TD of the normalized reduced program (anchor bags per node,
// sliding gadgets per edge), verified, width-bounded.
TdWitness td_witness_for_reduced(const ReductionOutput& out, const AnnotatedTd& t);

// Coarse PD witness for the localized variant over the program as emitted;
// every atom occurs in at most two bags.
struct LocalizedWitness {
	PathDecomposition pd;
	bool two_bag = false;
};
LocalizedWitness localized_td_witness(const ReductionOutput& out, const AnnotatedTd& t);

// --- degree bounding ---------------------------------------------------------------

struct DegreeBoundResult {
	Program program;
	TreeDecomposition witness;
	std::map<std::string, std::vector<std::string>> correspondence; // atom -> copies
	int max_primal_degree = 0;
	int max_incidence_degree = 0;
};

// Node-local atom copies with equivalence chains; rule copies at annotated
// nodes. Path-shaped atom zones use an up/down shadow cycle that keeps every
// copy in at most three rules.
DegreeBoundResult bound_degree(const Program& p, const NiceTd& td);

} // namespace aspstruct
