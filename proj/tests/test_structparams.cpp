#include "doctest.h"

#include "helpers.hpp"

#include "aspstruct/structparams.hpp"

using namespace aspstruct;
using namespace testutil;

namespace {

Graph complete_graph(int n) {
	Graph g;
	for (int i = 0; i < n; ++i) g.add_vertex(VertexKind::Atom, "v" + std::to_string(i));
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
	return g;
}

Graph path_graph(int n) {
	Graph g;
	for (int i = 0; i < n; ++i) g.add_vertex(VertexKind::Atom, "v" + std::to_string(i));
	for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
	return g;
}

} // namespace

TEST_CASE("minimum vertex cover") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	auto vc = min_vertex_cover(g);
	REQUIRE(vc.has_value());
	CHECK(vc->vertices == std::vector<int>{1, 2}); // a, c
	CHECK(verify_vertex_cover(g, vc->vertices));

	CHECK(min_vertex_cover(Graph{})->vertices.empty());
	CHECK(min_vertex_cover(complete_graph(4))->vertices.size() == 3);

	SUBCASE("budget cuts off") {
		CHECK_FALSE(min_vertex_cover(complete_graph(4), 2).has_value());
		CHECK(min_vertex_cover(complete_graph(4), 3).has_value());
	}
	SUBCASE("verification is edge-by-edge") {
		CHECK_FALSE(verify_vertex_cover(g, {1})); // edge {c,d} uncovered
		CHECK(verify_vertex_cover(Graph{}, {}));
	}
	SUBCASE("agrees with subset enumeration") {
		Rng rng(31);
		for (int n = 1; n <= 5; ++n)
			for (unsigned mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask) {
				Graph h;
				for (int i = 0; i < n; ++i) h.add_vertex(VertexKind::Atom, "v");
				int bit = 0;
				for (int i = 0; i < n; ++i)
					for (int j = i + 1; j < n; ++j)
						if (mask & (1u << bit++)) h.add_edge(i, j);
				CHECK(int(min_vertex_cover(h)->vertices.size()) == brute_min_vc(h));
			}
		for (int t = 0; t < 40; ++t) {
			Graph h = random_graph(rng, 6 + int(rng() % 3), 0.4);
			CHECK(int(min_vertex_cover(h)->vertices.size()) == brute_min_vc(h));
		}
	}
}

TEST_CASE("minimum feedback vertex set") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	FeedbackVertexSet fvs = min_fvs(g);
	CHECK(fvs.vertices.size() == 1);
	bool a_or_c = fvs.vertices == std::vector<int>{1} || fvs.vertices == std::vector<int>{2};
	CHECK(a_or_c);
	CHECK(fvs.vertices == std::vector<int>{1}); // lexicographically least: a
	CHECK(verify_fvs(g, fvs.vertices));

	CHECK(min_fvs(path_graph(5)).vertices.empty());
	SUBCASE("two disjoint triangles") {
		Graph h;
		for (int i = 0; i < 6; ++i) h.add_vertex(VertexKind::Atom, "v");
		h.add_edge(0, 1);
		h.add_edge(1, 2);
		h.add_edge(0, 2);
		h.add_edge(3, 4);
		h.add_edge(4, 5);
		h.add_edge(3, 5);
		CHECK(min_fvs(h).vertices.size() == 2);
	}
	SUBCASE("agrees with subset enumeration") {
		Rng rng(37);
		for (int t = 0; t < 40; ++t) {
			Graph h = random_graph(rng, 5 + int(rng() % 3), 0.45);
			CHECK(int(min_fvs(h).vertices.size()) == brute_min_fvs(h));
		}
	}
}

TEST_CASE("sparsification of feedback vertex sets") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	int a = *p.find_atom("a"), c = *p.find_atom("c");

	SUBCASE("{a} is already sparse and stays") {
		FeedbackVertexSet s;
		s.vertices = {a};
		FeedbackVertexSet out = sparsify_fvs(p, g, s);
		CHECK(out.vertices == std::vector<int>{a});
		CHECK(verify_sparse_pairs(p, out.vertices));
	}
	SUBCASE("{c} grows to {a,c}") {
		FeedbackVertexSet s;
		s.vertices = {c};
		FeedbackVertexSet out = sparsify_fvs(p, g, s);
		CHECK(out.vertices == std::vector<int>{a, c});
	}
	SUBCASE("sparse input is a fixpoint") {
		FeedbackVertexSet s;
		s.vertices = {a, c};
		CHECK(sparsify_fvs(p, g, s).vertices == std::vector<int>{a, c});
	}
	SUBCASE("non-FVS input is rejected") {
		FeedbackVertexSet s;
		s.vertices = {*p.find_atom("b")};
		CHECK_THROWS_AS(sparsify_fvs(p, g, s), PreconditionError);
	}
	SUBCASE("exact smallest sparse FVS") {
		auto best = min_sparse_fvs(p, g);
		REQUIRE(best.has_value());
		CHECK(best->size() == 1);
		CHECK(*best == std::vector<int>{a});
		// the completion, by contrast, needs three vertices
		Program pi2 = completion(p, true);
		auto best2 = min_sparse_fvs(pi2, primal_graph(pi2));
		REQUIRE(best2.has_value());
		CHECK(best2->size() == 3);
	}
}

TEST_CASE("tree decompositions") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	TdResult exact = tree_decomposition(g, TdStrategy::Exact);
	CHECK(exact.td.width() == 2);
	CHECK(exact.exact);
	CHECK(verify_td(g, exact.td));

	CHECK(tree_decomposition(path_graph(6), TdStrategy::Exact).td.width() == 1);
	CHECK(tree_decomposition(complete_graph(5), TdStrategy::Exact).td.width() == 4);

	SUBCASE("heuristics stay valid") {
		Rng rng(41);
		for (int t = 0; t < 30; ++t) {
			Graph h = random_graph(rng, 4 + int(rng() % 8), 0.35);
			for (TdStrategy s : {TdStrategy::MinFill, TdStrategy::MinDegree}) {
				TdResult r = tree_decomposition(h, s);
				CHECK(verify_td(h, r.td));
			}
		}
	}
	SUBCASE("exact width agrees with the all-orders oracle") {
		Rng rng(43);
		for (int t = 0; t < 25; ++t) {
			Graph h = random_graph(rng, 4 + int(rng() % 3), 0.45);
			CHECK(tree_decomposition(h, TdStrategy::Exact).td.width() == brute_treewidth(h));
		}
	}
	SUBCASE("verification catches uncovered edges") {
		TreeDecomposition td;
		td.bags = {{0, 1, 2}, {1, 2, 3}};
		td.parent = {1, -1};
		td.root = 1;
		CHECK(verify_td(g, td)); // bags {a,b,c},{a,c,d} in interned ids b=0,a=1,c=2,d=3
		Graph bad = g;
		bad.add_edge(0, 3); // edge {b,d} lives in no bag
		CHECK_FALSE(verify_td(bad, td));
	}
	SUBCASE("exact beyond the cap is a resource error") {
		CHECK_THROWS_AS(tree_decomposition(random_graph(*(new Rng(1)), 12, 0.3), TdStrategy::Exact, 10),
		                ResourceError);
	}
}

TEST_CASE("nice tree decompositions") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	TreeDecomposition td;
	td.bags = {{0, 1, 2}, {1, 2, 3}};
	td.parent = {1, -1};
	td.root = 1;

	NiceTd nice = make_nice(td);
	CHECK(verify_td(g, nice));
	CHECK(verify_nice(nice));
	CHECK(nice.width() == td.width());

	SUBCASE("single bag becomes an introduce chain from the empty bag") {
		TreeDecomposition single;
		single.bags = {{0, 1}};
		single.parent = {-1};
		single.root = 0;
		NiceTd n = make_nice(single);
		CHECK(verify_nice(n));
		CHECK(n.width() == 1);
		bool has_empty_leaf = false;
		auto ch = n.children();
		for (int t = 0; t < n.node_count(); ++t)
			if (ch[size_t(t)].empty() && n.bags[size_t(t)].empty()) has_empty_leaf = true;
		CHECK(has_empty_leaf);
	}
	SUBCASE("width is preserved on random graphs, including joins") {
		Rng rng(47);
		for (int t = 0; t < 30; ++t) {
			Graph h = random_graph(rng, 4 + int(rng() % 6), 0.4);
			TdResult r = tree_decomposition(h, TdStrategy::MinFill);
			NiceTd n = make_nice(r.td);
			CHECK(verify_td(h, n));
			CHECK(verify_nice(n));
			CHECK(n.width() == r.td.width());
			NiceTd pruned = prune_nice(n);
			CHECK(verify_td(h, pruned));
			CHECK(verify_nice(pruned));
			CHECK(pruned.width() == n.width());
		}
	}
}

TEST_CASE("annotation") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	TreeDecomposition td;
	td.bags = {{0, 1, 2}, {1, 2, 3}};
	td.parent = {1, -1};
	td.root = 1;
	NiceTd nice = make_nice(td);
	int before = nice.node_count();

	AnnotatedTd a = annotate(nice, p);
	CHECK(verify_annotated(a, p));
	CHECK(a.td.width() == nice.width());
	CHECK(a.td.node_count() <= before + p.atom_count() + p.rule_count());
	CHECK(verify_td(g, a.td));

	SUBCASE("single-rule program on a single-bag TD") {
		Program q = parse_program("a :- b.");
		TreeDecomposition s;
		s.bags = {{0, 1}};
		s.parent = {-1};
		s.root = 0;
		AnnotatedTd sa = annotate(make_nice(s), q);
		CHECK(verify_annotated(sa, q));
	}
	SUBCASE("uncoverable rules are diagnosed") {
		Program q = parse_program(":- a, b, c.");
		TreeDecomposition s;
		s.bags = {{0, 1}, {1, 2}};
		s.parent = {1, -1};
		s.root = 1;
		CHECK_THROWS_AS(annotate(make_nice(s), q), PreconditionError);
	}
}

TEST_CASE("path decompositions") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	PdResult exact = path_decomposition(g, TdStrategy::Exact);
	CHECK(exact.pd.width() == 2);
	CHECK(verify_pd(g, exact.pd));

	PdResult path = path_decomposition(path_graph(5), TdStrategy::Exact);
	CHECK(path.pd.width() == 1);
	CHECK(path_decomposition(complete_graph(4), TdStrategy::Exact).pd.width() == 3);

	SUBCASE("exact width agrees with the all-orders oracle") {
		Rng rng(53);
		for (int t = 0; t < 20; ++t) {
			Graph h = random_graph(rng, 4 + int(rng() % 3), 0.4);
			CHECK(path_decomposition(h, TdStrategy::Exact).pd.width() == brute_pathwidth(h));
		}
	}
	SUBCASE("heuristic PDs verify") {
		Rng rng(59);
		for (int t = 0; t < 20; ++t) {
			Graph h = random_graph(rng, 5 + int(rng() % 8), 0.3);
			PdResult r = path_decomposition(h, TdStrategy::MinFill);
			CHECK(verify_pd(h, r.pd));
		}
	}
}

TEST_CASE("bandwidth layouts from restricted path decompositions") {
	SUBCASE("a path uses its natural order") {
		Graph g = path_graph(4);
		PathDecomposition pd;
		pd.bags = {{0, 1}, {1, 2}, {2, 3}};
		LinearLayout f = bandwidth_layout_from_pd(g, pd);
		CHECK(f.position == std::vector<int>{1, 2, 3, 4});
		CHECK(layout_bandwidth(g, f) == 1);
	}
	SUBCASE("single-bag clique") {
		Graph g = complete_graph(3);
		PathDecomposition pd;
		pd.bags = {{0, 1, 2}};
		LinearLayout f = bandwidth_layout_from_pd(g, pd);
		CHECK(layout_bandwidth(g, f) == 2);
		CHECK(layout_bandwidth(g, f) <= 2 * pd.width() - 1);
	}
	SUBCASE("the 2k-1 bound holds on random restricted PDs") {
		Rng rng(61);
		for (int t = 0; t < 200; ++t) {
			RandomPdInstance inst = random_two_bag_pd(rng, 2 + int(rng() % 5), 2 + int(rng() % 3));
			REQUIRE(pd_two_bag_restricted(inst.pd));
			REQUIRE(verify_pd(inst.graph, inst.pd));
			LinearLayout f = bandwidth_layout_from_pd(inst.graph, inst.pd);
			CHECK(layout_bandwidth(inst.graph, f) <= 2 * inst.pd.width() - 1);
		}
	}
	SUBCASE("unrestricted PDs are rejected") {
		Graph g = path_graph(3);
		PathDecomposition pd;
		pd.bags = {{0, 1}, {0, 1, 2}, {0, 2}};
		CHECK_THROWS_AS(bandwidth_layout_from_pd(g, pd), PreconditionError);
	}
}

TEST_CASE("layout measures") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	LinearLayout bw = best_bandwidth_layout(g);
	CHECK(layout_bandwidth(g, bw) == 2);
	LinearLayout cw = best_cutwidth_layout(g);
	CHECK(layout_cutwidth(g, cw) == 3);

	Graph edgeless;
	edgeless.add_vertex(VertexKind::Atom, "u");
	edgeless.add_vertex(VertexKind::Atom, "v");
	LinearLayout id;
	id.position = {1, 2};
	CHECK(layout_bandwidth(edgeless, id) == 0);
	CHECK(layout_cutwidth(edgeless, id) == 0);

	SUBCASE("non-bijective layouts are rejected") {
		LinearLayout badf;
		badf.position = {1, 1};
		CHECK_THROWS_AS(layout_bandwidth(edgeless, badf), PreconditionError);
	}
	SUBCASE("cutwidth is at most degree times bandwidth") {
		Rng rng(67);
		for (int t = 0; t < 60; ++t) {
			Graph h = random_graph(rng, 3 + int(rng() % 5), 0.5);
			std::vector<int> perm(size_t(h.n()));
			for (int i = 0; i < h.n(); ++i) perm[size_t(i)] = i + 1;
			std::shuffle(perm.begin(), perm.end(), rng);
			LinearLayout f;
			f.position = perm;
			CHECK(layout_cutwidth(h, f) <= h.max_degree() * layout_bandwidth(h, f));
		}
	}
}

TEST_CASE("treedepth witnesses") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	TremauxTree t = treedepth_witness_from_fvs(g, {*p.find_atom("a")});
	CHECK(verify_tremaux(g, t) == 2);
	// the tree of the worked example: a above c, c above b and d
	CHECK(t.parent[size_t(*p.find_atom("c"))] == *p.find_atom("a"));
	CHECK(t.parent[size_t(*p.find_atom("b"))] == *p.find_atom("c"));
	CHECK(t.parent[size_t(*p.find_atom("d"))] == *p.find_atom("c"));

	SUBCASE("degenerate shapes") {
		Graph one;
		one.add_vertex(VertexKind::Atom, "v");
		CHECK(verify_tremaux(one, treedepth_witness_from_fvs(one, {})) == 0);
		Graph g4 = path_graph(4);
		TremauxTree chain = treedepth_witness_from_fvs(g4, {0, 1, 2, 3});
		CHECK(verify_tremaux(g4, chain) == 3);
	}
	SUBCASE("P3 rooted at the middle has height 1") {
		Graph g3 = path_graph(3);
		TremauxTree t3 = treedepth_witness_from_fvs(g3, {});
		CHECK(verify_tremaux(g3, t3) == 1);
	}
	SUBCASE("non-ancestor edges are rejected") {
		Graph g2 = path_graph(2);
		TremauxTree bad;
		bad.parent = {-1, -1};
		bad.roots = {0, 1};
		CHECK_THROWS_AS(verify_tremaux(g2, bad), VerificationError);
	}
	SUBCASE("non-forest remainders are rejected") {
		CHECK_THROWS_AS(treedepth_witness_from_fvs(complete_graph(4), {0}), PreconditionError);
	}
	SUBCASE("log-height bound on paths") {
		Graph long_path = path_graph(16);
		TremauxTree lt = treedepth_witness_from_fvs(long_path, {});
		CHECK(verify_tremaux(long_path, lt) <= 4); // ceil(log2(16))
	}
}

TEST_CASE("almost-paths checker") {
	SUBCASE("caterpillar with one pendant per spine vertex") {
		Graph g;
		for (int i = 0; i < 8; ++i) g.add_vertex(VertexKind::Atom, "v");
		g.add_edge(0, 1);
		g.add_edge(1, 2);
		g.add_edge(2, 3);
		g.add_edge(0, 4);
		g.add_edge(1, 5);
		g.add_edge(2, 6);
		g.add_edge(3, 7);
		auto rep = check_almost_paths(g, {});
		CHECK(rep.ok);
		CHECK(rep.longest_path >= 3);
	}
	SUBCASE("triangles need one removal") {
		Graph g = complete_graph(3);
		CHECK_FALSE(check_almost_paths(g, {}).ok);
		CHECK(check_almost_paths(g, {0}).ok);
	}
	SUBCASE("double pendants fail") {
		Graph g;
		for (int i = 0; i < 5; ++i) g.add_vertex(VertexKind::Atom, "v");
		g.add_edge(0, 1);
		g.add_edge(1, 2);
		g.add_edge(1, 3);
		g.add_edge(1, 4); // vertex 1 carries three neighbors off any path
		CHECK_FALSE(check_almost_paths(g, {}).ok);
	}
}

TEST_CASE("PACE serialization round-trips") {
	Program p = parse_program(kPi1);
	Graph g = primal_graph(p);
	TdResult r = tree_decomposition(g, TdStrategy::Exact);
	std::string pace = td_to_pace(r.td, g.n());
	TreeDecomposition back = td_from_pace(pace);
	CHECK(back.width() == r.td.width());
	CHECK(verify_td(g, back));
	CHECK_THROWS_AS(td_from_pace("b 1 2\n"), PreconditionError);
}
