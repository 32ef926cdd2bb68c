#pragma once

#include <random>

#include "aspstruct/graphs.hpp"
#include "aspstruct/program.hpp"
#include "aspstruct/reductions.hpp"

namespace aspstruct {

using Rng = std::mt19937_64;

struct ProgramShape {
	int max_atoms = 8;
	int max_rules = 6;
	bool allow_disjunctive = true;
	bool tight_only = true; // heads depend only on lower-indexed atoms
};

// Random normalized program; tight by construction when tight_only is set.
Program random_program(Rng& rng, const ProgramShape& shape);

// Rejection-samples random_program until the completion-model check passes.
Program random_fully_tight_program(Rng& rng, const ProgramShape& shape, int tightness_cap = 22,
                                   int max_tries = 2000);

Graph random_graph(Rng& rng, int n, double edge_prob);

Cnf random_cnf(Rng& rng, int n_vars, int n_clauses, int max_clause_len = 3);

// Path decomposition with every vertex in at most two bags, plus a graph it
// decomposes (random edges inside bags).
struct RandomPdInstance {
	Graph graph;
	PathDecomposition pd;
};
RandomPdInstance random_two_bag_pd(Rng& rng, int n_bags, int bag_size);

} // namespace aspstruct
