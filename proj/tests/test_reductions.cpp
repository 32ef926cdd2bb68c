#include "doctest.h"

#include <map>

#include "helpers.hpp"

#include "aspstruct/reductions.hpp"
#include "aspstruct/structparams.hpp"

using namespace aspstruct;
using namespace testutil;

namespace {

std::multiset<std::set<std::string>> family_bodies(const ReductionOutput& out, int family,
                                                   const std::string& must_contain) {
	std::multiset<std::set<std::string>> bodies;
	for (const Rule& r : out.program.rules) {
		auto it = out.provenance.find(r.label);
		if (it == out.provenance.end() || it->second != family) continue;
		std::set<std::string> body;
		bool hit = false;
		for (AtomId a : r.pos) {
			body.insert(out.program.name(a));
			if (out.program.name(a) == must_contain) hit = true;
		}
		if (!must_contain.empty() && !hit) continue;
		bodies.insert(body);
	}
	return bodies;
}

AnnotatedTd annotated_for(const Program& p, int exact_cap = 10) {
	Graph g = primal_graph(p);
	TdResult td = tree_decomposition(g, g.n() <= exact_cap ? TdStrategy::Exact : TdStrategy::MinFill);
	return annotate(prune_nice(make_nice(td.td)), p);
}

} // namespace

TEST_CASE("DIMACS parsing") {
	Cnf f = parse_dimacs("c comment\np cnf 2 2\n1 -2 0\n2 0\n");
	CHECK(f.n_vars == 2);
	CHECK(f.clauses.size() == 2);
	CHECK_THROWS_AS(parse_dimacs("1 0\n"), PreconditionError);
	CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n5 0\n"), PreconditionError);
}

TEST_CASE("SAT encoding") {
	Cnf f;
	f.n_vars = 3;
	f.clauses = {{1, 2, -3}};
	Program p = sat_to_asp(f);
	CHECK(p.rule_count() == 7); // six guesses and one clause constraint
	CHECK(is_normalized(p));
	CHECK(is_tight(p));
	Program constraint = parse_program(":- nv1, nv2, v3.");
	bool found = false;
	for (const Rule& r : p.rules)
		if (r.is_constraint() && r.pos.size() == 3) found = true;
	CHECK(found);
	CHECK(enumerate_answer_sets(p).size() == 7);

	SUBCASE("unsatisfiable formulas yield inconsistent programs") {
		Cnf g;
		g.n_vars = 1;
		g.clauses = {{1}, {-1}};
		CHECK(enumerate_answer_sets(sat_to_asp(g)).empty());
	}
	SUBCASE("no clauses yield the full assignment space") {
		Cnf g;
		g.n_vars = 4;
		g.clauses = {};
		CHECK(enumerate_answer_sets(sat_to_asp(g)).size() == 16);
	}
	SUBCASE("wide clauses are rejected") {
		Cnf g;
		g.n_vars = 4;
		g.clauses = {{1, 2, 3, 4}};
		CHECK_THROWS_AS(sat_to_asp(g), PreconditionError);
	}
	SUBCASE("answer sets count satisfying assignments") {
		Rng rng(89);
		for (int t = 0; t < 40; ++t) {
			Cnf g = random_cnf(rng, 2 + int(rng() % 8), 1 + int(rng() % 10));
			CHECK(static_cast<long long>(enumerate_answer_sets(sat_to_asp(g)).size()) == truth_table_count(g));
		}
	}
}

TEST_CASE("bit encodings") {
	Program p;
	for (int i = 0; i < 4; ++i) p.intern("s" + std::to_string(i));
	SUBCASE("three members need two bits per pointer") {
		BitEncoding enc = build_bval({0, 1, 2}, true);
		CHECK(enc.bits == 2);
		std::set<std::string> positive;
		for (int j = 1; j <= 3; ++j)
			for (int i = 0; i < enc.bits; ++i) positive.insert("b" + std::to_string(j) + "_" + std::to_string(i));
		CHECK(positive.size() == 6);
	}
	SUBCASE("a single member keeps one complemented bit") {
		BitEncoding enc = build_bval({2}, true);
		CHECK(enc.bits == 1);
		CHECK(bval_names(enc, 2, 1) == std::vector<std::string>{"nb1_0"});
	}
	SUBCASE("third member of four encodes binary 10") {
		BitEncoding enc = build_bval({0, 1, 2, 3}, true);
		CHECK(enc.bits == 2);
		CHECK(bval_names(enc, 2, 1) == std::vector<std::string>{"nb1_0", "b1_1"});
	}
	SUBCASE("distinct members get distinct patterns") {
		BitEncoding enc = build_bval({0, 1, 2, 3}, true);
		std::set<std::vector<std::string>> pats;
		for (AtomId x : enc.members) pats.insert(bval_names(enc, x, 2));
		CHECK(pats.size() == 4);
	}
	CHECK_THROWS_AS(build_bval({}, true), PreconditionError);
}

TEST_CASE("R_fvs on the completed running example") {
	Program pi1 = parse_program(kPi1);
	Program pi2 = completion(pi1, true);
	REQUIRE(is_normalized(pi2));
	REQUIRE(is_fully_tight(pi2) == Ternary::True);
	std::vector<AtomId> s2 = {*pi2.find_atom("a"), *pi2.find_atom("c"), *pi2.find_atom("r1_b")};
	REQUIRE(verify_fvs(primal_graph(pi2), s2));
	REQUIRE(verify_sparse_pairs(pi2, s2));

	ReductionOutput out = reduce_fvs(pi2, s2);
	CHECK(out.bits == 2);

	SUBCASE("exactly six positive bit atoms") {
		int positive = 0;
		for (const auto& name : out.bit_atoms)
			if (name[0] == 'b') ++positive;
		CHECK(positive == 6);
	}
	SUBCASE("the four pointer-mismatch rules for r4") {
		auto bodies = family_bodies(out, 4, "sat_r4");
		std::multiset<std::set<std::string>> expect = {{"sat_r4", "b1_0"},
		                                               {"sat_r4", "b1_1"},
		                                               {"sat_r4", "nb2_0"},
		                                               {"sat_r4", "b2_1"}};
		CHECK(bodies == expect);
	}
	SUBCASE("the three satisfaction rules for r4") {
		std::multiset<std::set<std::string>> sat_rules;
		for (int fam : {6, 7, 8})
			for (const auto& b : family_bodies(out, fam, "sat_r4")) sat_rules.insert(b);
		std::multiset<std::set<std::string>> expect = {
		    {"sat_r4", "nv1"}, {"sat_r4", "v2"}, {"sat_r4", "d"}};
		CHECK(sat_rules == expect);
	}
	SUBCASE("provenance covers families 1 through 9 totally") {
		CHECK(out.provenance.size() == size_t(out.program.rule_count()));
		std::set<int> fams;
		for (auto& [label, fam] : out.provenance) {
			CHECK(out.program.find_rule(label) != nullptr);
			fams.insert(fam);
		}
		CHECK(fams == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
	}
	SUBCASE("exactly one wide rule") {
		const Rule* wide = out.program.find_rule(out.wide_rule_label);
		REQUIRE(wide != nullptr);
		CHECK(wide->pos.size() == size_t(pi2.rule_count()));
	}
}

TEST_CASE("R_fvs answer-set correspondence on the micro program") {
	Program pm = parse_program(kPiM);
	std::vector<AtomId> s = {*pm.find_atom("a"), *pm.find_atom("b")};
	ReductionOutput out = reduce_fvs(pm, s);
	CHECK(out.program.atom_count() == 23);
	OracleBudget budget;
	budget.atom_cap = 26;
	budget.minimality_cap = 26;
	CHECK(projected_answer_sets(out.program, out.projection, budget) ==
	      std::set<std::set<std::string>>{{"a"}, {"b"}});

	SUBCASE("saturation forces every auxiliary atom") {
		for (Mask m : enumerate_answer_sets(out.program, budget)) {
			auto nm = names(out.program, m);
			CHECK(nm.count(out.sat_atom));
			for (const auto& b : out.bit_atoms) CHECK(nm.count(b));
			for (const auto& v : out.value_atoms) CHECK(nm.count(v));
			for (const auto& label : out.rule_labels) {
				CHECK(nm.count("sat_" + label));
				CHECK(nm.count("nsat_" + label));
			}
		}
	}
}

TEST_CASE("R_fvs preconditions") {
	Program pm = parse_program(kPiM);
	CHECK_THROWS_AS(reduce_fvs(parse_program("a :- b.\nb :- a."), {0}), PreconditionError);
	CHECK_THROWS_AS(reduce_fvs(parse_program("a :- not b.\nb :- not a."), {0}), PreconditionError);
	// {} is an FVS of the micro program but the pairs are not sparse
	CHECK_THROWS_AS(reduce_fvs(pm, {}), PreconditionError);
	Program wide = parse_program("a :- b, c, d.\n");
	CHECK_THROWS_AS(reduce_fvs(wide, {0}), PreconditionError);
}

TEST_CASE("almost-paths variant") {
	Program pm = parse_program(kPiM);
	std::vector<AtomId> all = {*pm.find_atom("a"), *pm.find_atom("b")};
	ReductionOutput out = reduce_fvs_almost_paths(pm, all);

	SUBCASE("copy chains have the expected length") {
		// per rule: bits per S-occurrence for family 4 plus one per family 6/7 hit
		std::map<std::string, int> copies;
		for (const auto& name : out.program.atom_names)
			for (const auto& label : out.rule_labels)
				if (name.rfind("sat_" + label + "_c", 0) == 0) copies["sat_" + label]++;
		for (const auto& label : out.rule_labels) {
			CHECK(copies["sat_" + label] >= 1);
			CHECK(copies["sat_" + label] <= 3 * out.bits + 3);
		}
	}
	SUBCASE("incidence graph minus the witness is almost paths") {
		FvsWitness w = fvs_witness_for_reduced(out);
		Graph inc = incidence_graph(out.program);
		std::vector<int> removed;
		for (const auto& name : w.atoms) removed.push_back(*out.program.find_atom(name));
		removed.push_back(out.program.atom_count() + out.program.rule_position(out.wide_rule_label));
		AlmostPathsReport rep = check_almost_paths(inc, removed);
		CHECK(rep.ok);
		CHECK(rep.longest_path <= 4 * int(w.vertices.size()));
	}
	SUBCASE("projection matches the plain reduction") {
		Program tiny = parse_program("a.");
		std::vector<AtomId> s = {*tiny.find_atom("a")};
		ReductionOutput variant = reduce_fvs_almost_paths(tiny, s);
		OracleBudget budget;
		budget.atom_cap = 28;
		budget.minimality_cap = 28;
		CHECK(projected_answer_sets(variant.program, variant.projection, budget) ==
		      answer_set_names(tiny));
		ReductionOutput plain = reduce_fvs(tiny, s);
		CHECK(projected_answer_sets(variant.program, variant.projection, budget) ==
		      projected_answer_sets(plain.program, plain.projection, budget));
	}
}

TEST_CASE("FVS witnesses for reduced programs") {
	Program pm = parse_program(kPiM);
	ReductionOutput out = reduce_fvs(pm, {*pm.find_atom("a"), *pm.find_atom("b")});
	FvsWitness w = fvs_witness_for_reduced(out);
	CHECK(w.vertices.size() == 14); // 6*1 + 8
	CHECK(w.size_bound == 14);
	CHECK(is_normalized(w.normalized) == false); // the wide rule stays
	int over = 0;
	for (const Rule& r : w.normalized.rules)
		if (r.size() > 3) ++over;
	CHECK(over == 1);

	SUBCASE("a three-element S needs twenty vertices") {
		Program pi2 = completion(parse_program(kPi1), true);
		std::vector<AtomId> s2 = {*pi2.find_atom("a"), *pi2.find_atom("c"), *pi2.find_atom("r1_b")};
		FvsWitness w2 = fvs_witness_for_reduced(reduce_fvs(pi2, s2));
		CHECK(w2.vertices.size() == 20); // 6*2 + 8
	}
	SUBCASE("removal really leaves an acyclic incidence graph") {
		Graph inc = incidence_graph(w.normalized);
		CHECK(verify_fvs(inc, w.vertices));
	}
}

TEST_CASE("R_td emission shapes") {
	Program pm = parse_program(kPiM);
	AnnotatedTd at = annotated_for(pm);
	ReductionOutput out = reduce_td(pm, at);

	SUBCASE("per-node guess counts") {
		std::map<int, int> fam_count;
		for (auto& [label, fam] : out.provenance) fam_count[fam]++;
		int expect10 = pm.atom_count() + pm.rule_count();
		for (int t = 0; t < at.td.node_count(); ++t) expect10 += 3 * out.node_bits[size_t(t)] + 3;
		CHECK(fam_count[10] == expect10);
		CHECK(fam_count[19] == at.td.node_count());
	}
	SUBCASE("pointer-mismatch count follows ord and bits") {
		std::map<int, int> fam_count;
		for (auto& [label, fam] : out.provenance) fam_count[fam]++;
		int expect13 = 0;
		for (int ri = 0; ri < pm.rule_count(); ++ri)
			expect13 += pm.rules[size_t(ri)].size() * out.node_bits[size_t(at.rule_node[size_t(ri)])];
		CHECK(fam_count[13] == expect13);
		int expect_sat = 0;
		for (const Rule& r : pm.rules) expect_sat += r.size();
		CHECK(fam_count[17] + fam_count[18] == expect_sat);
	}
	SUBCASE("provenance is total") {
		CHECK(out.provenance.size() == size_t(out.program.rule_count()));
		for (auto& [label, fam] : out.provenance) {
			bool ok = (fam >= 10 && fam <= 19);
			CHECK(ok);
		}
	}
}

TEST_CASE("R_td answer-set correspondence at desk scale") {
	OracleBudget budget;
	budget.atom_cap = 32;
	budget.minimality_cap = 32;
	SUBCASE("single fact") {
		Program p = parse_program("a.");
		ReductionOutput out = reduce_td(p, annotated_for(p));
		CHECK(projected_answer_sets(out.program, out.projection, budget) ==
		      std::set<std::set<std::string>>{{"a"}});
	}
	SUBCASE("fact with its own constraint is inconsistent") {
		Program p = parse_program("a.\n:- a.");
		TdOptions opts;
		opts.bit_floor = false; // singleton bags need no bits
		ReductionOutput out = reduce_td(p, annotated_for(p), opts);
		REQUIRE(out.program.atom_count() <= budget.atom_cap);
		CHECK(enumerate_answer_sets(out.program, budget).empty());
	}
	SUBCASE("choice between two atoms, singleton bags") {
		// two atoms that never co-occur keep every bag small enough for the
		// oracle; the guess sits in the disjunctive source rule
		Program p = parse_program("a | b.\n:- b.");
		TdOptions opts;
		opts.bit_floor = false;
		ReductionOutput out = reduce_td(p, annotated_for(p), opts);
		REQUIRE(out.program.atom_count() <= budget.atom_cap);
		CHECK(projected_answer_sets(out.program, out.projection, budget) ==
		      std::set<std::set<std::string>>{{"a"}});
	}
}

TEST_CASE("localized variant") {
	Program p = parse_program("a.");
	Graph g = primal_graph(p);
	PdResult pd = path_decomposition(g, TdStrategy::Exact);
	AnnotatedTd at = annotate(prune_nice(make_nice(pd_to_td(pd.pd))), p);
	TdOptions opts;
	opts.bit_floor = false;
	ReductionOutput out = reduce_td_localized(p, at, opts);

	SUBCASE("projection is preserved") {
		OracleBudget budget;
		budget.atom_cap = 30;
		budget.minimality_cap = 30;
		CHECK(projected_answer_sets(out.program, out.projection, budget) ==
		      std::set<std::set<std::string>>{{"a"}});
	}
	SUBCASE("the coarse witness is a two-bag PD") {
		LocalizedWitness w = localized_td_witness(out, at);
		CHECK(w.two_bag);
		CHECK(verify_pd(primal_graph(out.program), w.pd));
	}
	SUBCASE("bandwidth pipeline composes") {
		LocalizedWitness w = localized_td_witness(out, at);
		Graph og = primal_graph(out.program);
		LinearLayout f = bandwidth_layout_from_pd(og, w.pd);
		CHECK(layout_bandwidth(og, f) <= 2 * w.pd.width() - 1);
	}
}

TEST_CASE("localized variant on the micro program") {
	Program pm = parse_program(kPiM);
	Graph g = primal_graph(pm);
	PdResult pd = path_decomposition(g, TdStrategy::Exact);
	AnnotatedTd at = annotate(prune_nice(make_nice(pd_to_td(pd.pd))), pm);
	ReductionOutput out = reduce_td_localized(pm, at);
	LocalizedWitness w = localized_td_witness(out, at);
	CHECK(w.two_bag);
	Graph og = primal_graph(out.program);
	LinearLayout f = bandwidth_layout_from_pd(og, w.pd);
	CHECK(layout_bandwidth(og, f) <= 2 * w.pd.width() - 1);
	CHECK(layout_cutwidth(og, f) <= og.max_degree() * layout_bandwidth(og, f));
}

TEST_CASE("TD witnesses for reduced programs") {
	SUBCASE("micro program, width-1 decomposition") {
		Program pm = parse_program(kPiM);
		AnnotatedTd at = annotated_for(pm);
		ReductionOutput out = reduce_td(pm, at);
		TdWitness w = td_witness_for_reduced(out, at);
		CHECK(w.width_bound == 34);
		CHECK(w.td.width() <= 34);
		CHECK(verify_td(primal_graph(w.normalized), w.td));
	}
	SUBCASE("width-2 input keeps the same numeric bound") {
		Program p = parse_program(kPi1);
		Program pi2 = completion(p, true);
		AnnotatedTd at = annotated_for(pi2);
		ReductionOutput out = reduce_td(pi2, at);
		TdWitness w = td_witness_for_reduced(out, at);
		CHECK(w.width_bound == 20 * std::max(1, at.td.width() <= 2 ? 1 : 2) + 14);
		CHECK(w.td.width() <= w.width_bound);
	}
}

TEST_CASE("single-node annotated TD mirrors the FVS reduction") {
	Program pm = parse_program(kPiM);
	TreeDecomposition single;
	single.bags = {{0, 1}};
	single.parent = {-1};
	single.root = 0;
	AnnotatedTd at = annotate(make_nice(single), pm);
	ReductionOutput td_out = reduce_td(pm, at);
	ReductionOutput fvs_out = reduce_fvs(pm, {0, 1});

	std::map<int, int> td_fams, fvs_fams;
	for (auto& [l, f] : td_out.provenance) td_fams[f]++;
	for (auto& [l, f] : fvs_out.provenance) fvs_fams[f]++;
	// per-node pointer machinery matches the single global pointer set,
	// with one mismatch family and one satisfaction pair per rule atom
	CHECK(td_fams[13] == fvs_fams[4]);
	CHECK(td_fams[17] + td_fams[18] == fvs_fams[6] + fvs_fams[7] + fvs_fams[8]);
	CHECK(td_fams[19] == at.td.node_count());
}

TEST_CASE("degree bounding") {
	Program pm = parse_program(kPiM);
	Graph g = primal_graph(pm);
	PdResult pd = path_decomposition(g, TdStrategy::Exact);
	NiceTd nice = prune_nice(make_nice(pd_to_td(pd.pd)));
	DegreeBoundResult res = bound_degree(pm, nice);

	CHECK(res.max_primal_degree <= 4);
	CHECK(res.max_incidence_degree <= 3);
	CHECK(verify_td(primal_graph(res.program), res.witness));
	CHECK(res.witness.width() <= 4 * nice.width() + 3);

	SUBCASE("answer sets are preserved bijectively") {
		auto out_sets = enumerate_answer_sets(res.program);
		CHECK(out_sets.size() == enumerate_answer_sets(pm).size());
		std::set<std::set<std::string>> bases;
		for (Mask m : out_sets) {
			std::set<std::string> base;
			for (const auto& nm : names(res.program, m))
				for (auto& [src, copies] : res.correspondence)
					if (std::find(copies.begin(), copies.end(), nm) != copies.end()) base.insert(src);
			bases.insert(base);
		}
		CHECK(bases == answer_set_names(pm));
	}
	SUBCASE("star-heavy programs still meet the degree bounds") {
		std::string text;
		for (int i = 1; i <= 6; ++i) text += "hub :- leaf" + std::to_string(i) + ".\n";
		Program star = parse_program(text);
		Graph sg = primal_graph(star);
		PdResult spd = path_decomposition(sg, TdStrategy::Exact);
		DegreeBoundResult sres = bound_degree(star, prune_nice(make_nice(pd_to_td(spd.pd))));
		CHECK(sres.max_primal_degree <= 4);
		CHECK(sres.max_incidence_degree <= 3);
	}
	SUBCASE("answer-set counts on random programs") {
		Rng rng(97);
		ProgramShape shape;
		shape.max_atoms = 4;
		shape.max_rules = 3;
		for (int t = 0; t < 25; ++t) {
			Program q = random_program(rng, shape);
			Graph qg = primal_graph(q);
			PdResult qpd = path_decomposition(qg, TdStrategy::Exact);
			DegreeBoundResult r = bound_degree(q, prune_nice(make_nice(pd_to_td(qpd.pd))));
			CHECK(r.max_primal_degree <= 4);
			CHECK(r.max_incidence_degree <= 3);
			if (r.program.atom_count() <= 22)
				CHECK(enumerate_answer_sets(r.program).size() == enumerate_answer_sets(q).size());
		}
	}
	SUBCASE("non-normalized inputs are rejected") {
		Program wide = parse_program("a :- b, c, d.");
		Graph wg = primal_graph(wide);
		PdResult wpd = path_decomposition(wg, TdStrategy::Exact);
		CHECK_THROWS_AS(bound_degree(wide, prune_nice(make_nice(pd_to_td(wpd.pd)))), PreconditionError);
	}
}

TEST_CASE("reduction sidecars") {
	Program pm = parse_program(kPiM);
	ReductionOutput out = reduce_fvs(pm, {0, 1});
	std::string js = reduction_sidecar_json(out);
	CHECK(js.find("\"mode\": \"fvs\"") != std::string::npos);
	CHECK(js.find("\"s_size\": 2") != std::string::npos);
	CHECK(js.find("\"projection\"") != std::string::npos);
}
