#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aspstruct/graphs.hpp"
#include "aspstruct/program.hpp"

namespace aspstruct {

// --- vertex cover ------------------------------------------------------------

struct VertexCover {
	std::vector<int> vertices; // sorted
};

// Exact branching with degree-1 and high-degree simplifications. Returns the
// lexicographically least minimum cover; with a budget, a cover of size
// <= budget or nullopt.
std::optional<VertexCover> min_vertex_cover(const Graph& g, std::optional<int> budget = {});
bool verify_vertex_cover(const Graph& g, const std::vector<int>& cover);

// --- feedback vertex set -------------------------------------------------------

struct FeedbackVertexSet {
	std::vector<int> vertices; // sorted
	bool sparse = false;
};

// Exact branching on shortest cycles; lexicographically least witness.
FeedbackVertexSet min_fvs(const Graph& g);
bool verify_fvs(const Graph& g, const std::vector<int>& s);

// Pair condition: every two atoms outside S co-occur in at most one rule.
// Vertices below p.atom_count() are atoms; rule vertices are ignored.
bool verify_sparse_pairs(const Program& p, const std::vector<int>& s);

// Greedy augmentation: add the atom covering the most violating pairs,
// lowest atom id on ties.
FeedbackVertexSet sparsify_fvs(const Program& p, const Graph& g, const FeedbackVertexSet& s);

// Exact smallest set that is an FVS of g and pair-sparse for p.
std::optional<std::vector<int>> min_sparse_fvs(const Program& p, const Graph& g, int vertex_cap = 20);

// --- tree decompositions --------------------------------------------------------

struct TreeDecomposition {
	std::vector<std::vector<int>> bags; // sorted vertex ids
	std::vector<int> parent;            // -1 at the root
	int root = 0;

	int node_count() const { return int(bags.size()); }
	int width() const;
	std::vector<std::vector<int>> children() const;
};

enum class TdStrategy { MinFill, MinDegree, Exact };

struct TdResult {
	TreeDecomposition td;
	bool exact = false; // false: heuristic upper bound
};

TdResult tree_decomposition(const Graph& g, TdStrategy strategy, int exact_cap = 10);
bool verify_td(const Graph& g, const TreeDecomposition& td);

// Nice TD: every node is a leaf, an inner node whose bag differs from its
// child's by at most one vertex, or a join of two children with equal bags.
using NiceTd = TreeDecomposition;

NiceTd make_nice(const TreeDecomposition& td);
bool verify_nice(const NiceTd& td);

// Drops empty leaves and merges consecutive equal-bag inner nodes.
NiceTd prune_nice(const NiceTd& td);

struct AnnotatedTd {
	NiceTd td;
	std::vector<int> atom_node; // per atom id
	std::vector<int> rule_node; // per rule index
};

// Injective assignment of atoms and rules to fresh duplicate nodes whose
// bags contain them.
AnnotatedTd annotate(const NiceTd& td, const Program& p);
bool verify_annotated(const AnnotatedTd& a, const Program& p);

// --- path decompositions ---------------------------------------------------------

struct PathDecomposition {
	std::vector<std::vector<int>> bags; // in path order
	int width() const;
};

struct PdResult {
	PathDecomposition pd;
	bool exact = false;
	bool two_bag_restricted = false;
};

PdResult path_decomposition(const Graph& g, TdStrategy strategy, int exact_cap = 10);
bool verify_pd(const Graph& g, const PathDecomposition& pd);
bool pd_two_bag_restricted(const PathDecomposition& pd);
TreeDecomposition pd_to_td(const PathDecomposition& pd);

// --- linear layouts ---------------------------------------------------------------

struct LinearLayout {
	std::vector<int> position; // vertex -> 1..n
};

// Numbers new bag vertices consecutively along the path; vertices shared
// with the next bag are placed last. Requires every vertex in <= 2 bags.
LinearLayout bandwidth_layout_from_pd(const Graph& g, const PathDecomposition& pd);

int layout_bandwidth(const Graph& g, const LinearLayout& f);
int layout_cutwidth(const Graph& g, const LinearLayout& f);

// Exhaustive search over orderings; lexicographically least optimum.
LinearLayout best_bandwidth_layout(const Graph& g, int exact_cap = 10);
LinearLayout best_cutwidth_layout(const Graph& g, int exact_cap = 10);

// --- treedepth ----------------------------------------------------------------------

struct TremauxTree {
	std::vector<int> parent; // -1 at roots
	std::vector<int> roots;
};

// Stacks S as a root path and attaches a balanced elimination tree of each
// component of G - S below it. Requires G - S to be a forest.
TremauxTree treedepth_witness_from_fvs(const Graph& g, const std::vector<int>& s);

// Height in edges; throws VerificationError when some edge is not between
// an ancestor and a descendant, PreconditionError when T does not span g.
int verify_tremaux(const Graph& g, const TremauxTree& t);

// --- almost paths -------------------------------------------------------------------

struct AlmostPathsReport {
	bool ok = false;
	int longest_path = 0; // edges, over underlying paths
	std::string detail;
};

// G - S must decompose into disjoint paths whose vertices carry at most one
// extra degree-1 neighbor each.
AlmostPathsReport check_almost_paths(const Graph& g, const std::vector<int>& s);

// --- PACE-style serialization ---------------------------------------------------------

std::string td_to_pace(const TreeDecomposition& td, int n_vertices);
TreeDecomposition td_from_pace(const std::string& text);

} // namespace aspstruct
