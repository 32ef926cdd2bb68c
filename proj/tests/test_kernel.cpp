#include "doctest.h"

#include "helpers.hpp"

#include "aspstruct/kernel.hpp"
#include "aspstruct/structparams.hpp"

using namespace aspstruct;
using namespace testutil;

TEST_CASE("roles") {
	Program p = parse_program("s :- x1.\ns :- x2.");
	std::set<AtomId> s{*p.find_atom("s")};
	Role r1 = compute_role(p, s, *p.find_atom("x1"));
	Role r2 = compute_role(p, s, *p.find_atom("x2"));
	CHECK(r1 == r2);
	CHECK(r1.in_pos.size() == 1);
	CHECK(r1.in_head.empty());
	CHECK(r1.in_pos.begin()->head == std::vector<std::string>{"s"});

	SUBCASE("atom in no rule has three empty components") {
		Program q = parse_program("s :- x1.");
		q.intern("lonely");
		Role r = compute_role(q, {*q.find_atom("s")}, *q.find_atom("lonely"));
		CHECK(r.in_head.empty());
		CHECK(r.in_pos.empty());
		CHECK(r.in_neg.empty());
	}
	SUBCASE("b and d of the running example differ") {
		Program q = parse_program(kPi1);
		std::set<AtomId> cover{*q.find_atom("a"), *q.find_atom("c")};
		Role rb = compute_role(q, cover, *q.find_atom("b"));
		Role rd = compute_role(q, cover, *q.find_atom("d"));
		CHECK(rb != rd);
		CHECK(rb.in_pos.empty());
		CHECK(rb.in_head.size() == 2);
	}
	SUBCASE("atoms inside S are rejected") {
		CHECK_THROWS_AS(compute_role(p, s, *p.find_atom("s")), PreconditionError);
	}
}

TEST_CASE("primal kernelization") {
	Program p = parse_program("s :- x1.\ns :- x2.");
	auto cover = std::vector<AtomId>{*p.find_atom("s")};
	KernelResult res = kernelize_primal(p, cover, 2);
	CHECK(res.program.rule_count() == 1);
	CHECK(res.log.size() == 1);
	CHECK(res.log[0].removed == "x2");
	CHECK(res.log[0].kept == "x1");
	CHECK(answer_set_names(res.program) == answer_set_names(p));
	CHECK(answer_set_names(res.program) == std::set<std::set<std::string>>{{}});

	SUBCASE("role-distinct programs are fixpoints") {
		Program q = parse_program(kPi1);
		std::vector<AtomId> c{*q.find_atom("a"), *q.find_atom("c")};
		KernelResult r = kernelize_primal(q, c, 3);
		CHECK(programs_equal_by_name(r.program, q));
		CHECK(r.log.empty());
	}
	SUBCASE("rule size above c is rejected") {
		CHECK_THROWS_AS(kernelize_primal(parse_program(":- a, b, c."), {0, 1, 2}, 2), PreconditionError);
	}
	SUBCASE("non-covers are rejected") {
		Program q = parse_program(kPi1);
		CHECK_THROWS_AS(kernelize_primal(q, {*q.find_atom("a")}, 3), PreconditionError);
	}
	SUBCASE("removal log serializes") {
		std::string js = removal_log_json(res);
		CHECK(js.find("\"removed\": \"x2\"") != std::string::npos);
		CHECK(js.find("bound_corrected") != std::string::npos);
	}
}

TEST_CASE("kernel soundness on random programs") {
	Rng rng(71);
	ProgramShape shape;
	shape.max_atoms = 12;
	shape.max_rules = 10;
	shape.tight_only = false;
	int checked = 0;
	for (int t = 0; t < 120; ++t) {
		Program p = random_program(rng, shape);
		Graph g = primal_graph(p);
		auto vc = min_vertex_cover(g);
		REQUIRE(vc.has_value());
		REQUIRE(verify_vertex_cover(g, vc->vertices));
		KernelResult res = kernelize_primal(p, vc->vertices, 3);

		bool before = first_answer_set(p).has_value();
		bool after = first_answer_set(res.program).has_value();
		CHECK(before == after);
		CHECK(res.program.atom_count() <= res.corrected_bound);
		// monotonicity: kernel atoms are source atoms
		for (const auto& name : res.program.atom_names) CHECK(p.find_atom(name).has_value());
		++checked;
	}
	CHECK(checked == 120);
}

TEST_CASE("equal roles make interchangeable atoms") {
	// Thm-style interpretation check: for a ~ b, adding b to a model keeps
	// model-ness exactly when a is present
	Program p = parse_program("s :- x1.\ns :- x2.\n:- x1, s.\n:- x2, s.");
	std::set<AtomId> s{*p.find_atom("s")};
	AtomId a = *p.find_atom("x1"), b = *p.find_atom("x2");
	REQUIRE(compute_role(p, s, a) == compute_role(p, s, b));
	for (Mask m = 0; m < (1ull << p.atom_count()); ++m) {
		if (m & (1ull << a)) CHECK(is_model(p, m | (1ull << b)) == is_model(p, m));
	}
}

TEST_CASE("extended kernelization keeps four representatives") {
	std::string text;
	for (int i = 1; i <= 5; ++i)
		text += "a" + std::to_string(i) + " :- not b" + std::to_string(i) + ".\n";
	Program p = parse_program(text);
	KernelResult res = kernelize_extended(p, {}, 2);
	CHECK(res.program.rule_count() == 4);
	CHECK(first_answer_set(res.program).has_value() == first_answer_set(p).has_value());

	SUBCASE("without type-1/2 rules it matches the primal kernel") {
		Program q = parse_program("s :- x1, x2.\ns :- x3, x4.");
		auto vc = min_vertex_cover(typed_primal_graphs(q).g0);
		KernelResult ext = kernelize_extended(q, vc->vertices, 3);
		KernelResult prim = kernelize_primal(q, vc->vertices, 3);
		CHECK(programs_equal_by_name(ext.program, prim.program));
	}
	SUBCASE("classes of at most four members are unchanged") {
		std::string small;
		for (int i = 1; i <= 4; ++i)
			small += "a" + std::to_string(i) + " :- not b" + std::to_string(i) + ".\n";
		Program q = parse_program(small);
		CHECK(programs_equal_by_name(kernelize_extended(q, {}, 2).program, q));
	}
	SUBCASE("two special partners violate the precondition") {
		Program q = parse_program("a :- not b.\na | c.");
		CHECK_THROWS_AS(kernelize_extended(q, {}, 2), PreconditionError);
	}
	SUBCASE("random consistency equivalence") {
		Rng rng(73);
		for (int t = 0; t < 60; ++t) {
			ProgramShape shape;
			shape.max_atoms = 9;
			Program q = random_program(rng, shape);
			auto vc = min_vertex_cover(typed_primal_graphs(q).g0);
			REQUIRE(vc.has_value());
			KernelResult res;
			try {
				res = kernelize_extended(q, vc->vertices, 3);
			} catch (const PreconditionError&) {
				continue; // partner multiplicity violated; not in scope
			}
			CHECK(first_answer_set(res.program).has_value() == first_answer_set(q).has_value());
		}
	}
}

TEST_CASE("incidence kernelization") {
	Program p = parse_program(kPi1);
	SUBCASE("the derived cover expands covered rules") {
		// a valid incidence cover: every atom
		std::vector<int> cover;
		for (int a = 0; a < p.atom_count(); ++a) cover.push_back(a);
		KernelResult res = kernelize_incidence(p, cover, 3);
		// split program: answer sets project onto the original ones
		std::set<std::set<std::string>> proj = projected_answer_sets(res.program, p.atom_names);
		CHECK(proj == answer_set_names(p));
	}
	SUBCASE("covering by rules works as well") {
		std::vector<int> cover;
		for (int i = 0; i < p.rule_count(); ++i) cover.push_back(p.atom_count() + i);
		KernelResult res = kernelize_incidence(p, cover, 3);
		CHECK(first_answer_set(res.program).has_value());
	}
	SUBCASE("invalid incidence covers are rejected") {
		CHECK_THROWS_AS(kernelize_incidence(p, {*p.find_atom("a"), *p.find_atom("c")}, 3),
		                PreconditionError);
	}
	SUBCASE("random consistency equivalence through splitting") {
		Rng rng(79);
		ProgramShape shape;
		shape.max_atoms = 7;
		for (int t = 0; t < 50; ++t) {
			Program q = random_program(rng, shape);
			auto vc = min_vertex_cover(incidence_graph(q));
			REQUIRE(vc.has_value());
			KernelResult res = kernelize_incidence(q, vc->vertices, 3);
			CHECK(first_answer_set(res.program).has_value() == first_answer_set(q).has_value());
		}
	}
}

TEST_CASE("consistency decision through the kernel") {
	CHECK(decide_consistency_vc(parse_program(kPi1), 3));
	CHECK_FALSE(decide_consistency_vc(parse_program("a :- not b.\nb :- not a.\n:- a.\n:- b."), 3));
	CHECK(decide_consistency_vc(parse_program(""), 3));

	SUBCASE("agrees with the oracle everywhere") {
		Rng rng(83);
		ProgramShape shape;
		shape.max_atoms = 8;
		shape.tight_only = false;
		for (int t = 0; t < 60; ++t) {
			Program q = random_program(rng, shape);
			CHECK(decide_consistency_vc(q, 3) == first_answer_set(q).has_value());
		}
	}
}
