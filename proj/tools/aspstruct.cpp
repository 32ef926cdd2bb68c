#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "aspstruct/gen.hpp"
#include "aspstruct/graphs.hpp"
#include "aspstruct/kernel.hpp"
#include "aspstruct/oracle.hpp"
#include "aspstruct/program.hpp"
#include "aspstruct/reductions.hpp"
#include "aspstruct/structparams.hpp"

using namespace aspstruct;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitConsistent = 10;
constexpr int kExitInconsistent = 20;

std::string slurp(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void spit(const std::string& path, const std::string& text) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot write " + path);
	out << text;
}

std::string fnv1a(const std::string& data) {
	std::uint64_t h = 1469598103934665603ull;
	for (unsigned char c : data) {
		h ^= c;
		h *= 1099511628211ull;
	}
	char buf[32];
	std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
	return buf;
}

struct Timer {
	std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
	double ms() const {
		return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	}
};

int budget_atoms_from_env(int fallback) {
	const char* env = std::getenv("ASPSTRUCT_BUDGET_ATOMS");
	if (!env) return fallback;
	return std::max(1, std::atoi(env));
}

int threads_from_env() {
	const char* env = std::getenv("ASPSTRUCT_THREADS");
	if (!env) return 1;
	return std::max(1, std::atoi(env));
}

void emit_report(const json& report, const std::string& out_path) {
	if (out_path.empty())
		std::cout << report.dump(2) << "\n";
	else
		spit(out_path, report.dump(2) + "\n");
}

std::vector<int> parse_vertex_list(const Program& p, const std::string& text, bool allow_rules) {
	std::vector<int> out;
	std::istringstream in(text);
	std::string tok;
	while (in >> tok) {
		if (auto a = p.find_atom(tok)) {
			out.push_back(*a);
			continue;
		}
		int ri = p.rule_position(tok);
		if (allow_rules && ri >= 0) {
			out.push_back(p.atom_count() + ri);
			continue;
		}
		throw PreconditionError("witness token '" + tok + "' is neither an atom nor a rule label");
	}
	return out;
}

AnnotatedTd default_annotated_td(const Program& p, bool path_shape, int exact_cap) {
	Graph g = primal_graph(p);
	TreeDecomposition td;
	if (path_shape) {
		PdResult pd = g.n() <= exact_cap ? path_decomposition(g, TdStrategy::Exact, exact_cap)
		                                 : path_decomposition(g, TdStrategy::MinFill, exact_cap);
		td = pd_to_td(pd.pd);
	} else {
		TdResult res = g.n() <= exact_cap ? tree_decomposition(g, TdStrategy::Exact, exact_cap)
		                                  : tree_decomposition(g, TdStrategy::MinFill, exact_cap);
		td = res.td;
	}
	NiceTd nice = prune_nice(make_nice(td));
	return annotate(nice, p);
}

int cmd_graph(const std::string& file, const std::string& kind, const std::string& format,
              const std::string& out_path) {
	Program p = parse_program(slurp(file));
	auto dump = [&](const Graph& g) { return format == "dot" ? graph_to_dot(g) : graph_to_json(g); };
	std::string text;
	if (kind == "primal") {
		text = dump(primal_graph(p));
	} else if (kind == "incidence") {
		text = dump(incidence_graph(p));
	} else {
		TypedPrimal t = typed_primal_graphs(p);
		text = "% type 0\n" + dump(t.g0) + "% type 1\n" + dump(t.g1) + "% type 2\n" + dump(t.g2);
	}
	if (out_path.empty())
		std::cout << text;
	else
		spit(out_path, text);
	return 0;
}

json layout_json(const Graph& g, const LinearLayout& f) {
	json order = json::array();
	std::vector<std::pair<int, int>> by_pos;
	for (int v = 0; v < g.n(); ++v) by_pos.push_back({f.position[size_t(v)], v});
	std::sort(by_pos.begin(), by_pos.end());
	for (auto [pos, v] : by_pos) order.push_back(g.vertices[size_t(v)].label);
	return order;
}

int cmd_params(const std::string& file, bool want_vc, bool want_fvs, bool want_sparse, bool want_td,
               bool want_pd, bool want_layout, bool want_tremaux, bool exact, int exact_cap,
               const std::string& out_path) {
	Timer timer;
	std::string source = slurp(file);
	Program p = parse_program(source);
	Graph g = primal_graph(p);
	json results;

	if (want_vc) {
		auto vc = min_vertex_cover(g);
		if (!vc || !verify_vertex_cover(g, vc->vertices))
			throw VerificationError("vertex cover verification failed");
		json names = json::array();
		for (int v : vc->vertices) names.push_back(p.name(v));
		results["vc"] = {{"size", vc->vertices.size()}, {"witness", names}};
	}
	FeedbackVertexSet fvs;
	if (want_fvs || want_sparse || want_tremaux) {
		fvs = min_fvs(g);
		if (!verify_fvs(g, fvs.vertices)) throw VerificationError("FVS verification failed");
	}
	if (want_fvs) {
		json names = json::array();
		for (int v : fvs.vertices) names.push_back(p.name(v));
		results["fvs"] = {{"size", fvs.vertices.size()}, {"witness", names}};
	}
	if (want_sparse) {
		FeedbackVertexSet sparse = sparsify_fvs(p, g, fvs);
		if (!verify_fvs(g, sparse.vertices) || !verify_sparse_pairs(p, sparse.vertices))
			throw VerificationError("sparse FVS verification failed");
		json entry = {{"greedy_size", sparse.vertices.size()}};
		json names = json::array();
		for (int v : sparse.vertices) names.push_back(p.name(v));
		entry["greedy_witness"] = names;
		if (exact && g.n() <= 20) {
			auto best = min_sparse_fvs(p, g);
			if (best) {
				json bn = json::array();
				for (int v : *best) bn.push_back(p.name(v));
				entry["size"] = best->size();
				entry["witness"] = bn;
			}
		} else {
			entry["size"] = sparse.vertices.size();
		}
		results["sparse_fvs"] = entry;
	}
	if (want_td) {
		TdResult td = exact && g.n() <= exact_cap ? tree_decomposition(g, TdStrategy::Exact, exact_cap)
		                                          : tree_decomposition(g, TdStrategy::MinFill, exact_cap);
		if (!verify_td(g, td.td)) throw VerificationError("tree decomposition verification failed");
		results["td"] = {{"width", td.td.width()},
		                 {"exact", td.exact},
		                 {"bags", td.td.node_count()},
		                 {"pace", td_to_pace(td.td, g.n())}};
	}
	if (want_pd) {
		PdResult pd = exact && g.n() <= exact_cap ? path_decomposition(g, TdStrategy::Exact, exact_cap)
		                                          : path_decomposition(g, TdStrategy::MinFill, exact_cap);
		if (!verify_pd(g, pd.pd)) throw VerificationError("path decomposition verification failed");
		results["pd"] = {{"width", pd.pd.width()},
		                 {"exact", pd.exact},
		                 {"two_bag_restricted", pd.two_bag_restricted}};
	}
	if (want_layout) {
		if (g.n() > exact_cap) throw ResourceError("layout search over " + std::to_string(g.n()) + " vertices");
		LinearLayout bw = best_bandwidth_layout(g, exact_cap);
		LinearLayout cw = best_cutwidth_layout(g, exact_cap);
		results["layout"] = {{"bandwidth", layout_bandwidth(g, bw)},
		                     {"cutwidth", layout_cutwidth(g, cw)},
		                     {"bandwidth_order", layout_json(g, bw)},
		                     {"cutwidth_order", layout_json(g, cw)}};
	}
	if (want_tremaux) {
		TremauxTree t = treedepth_witness_from_fvs(g, fvs.vertices);
		int height = verify_tremaux(g, t);
		json parents = json::object();
		for (int v = 0; v < g.n(); ++v)
			if (t.parent[size_t(v)] >= 0) parents[p.name(v)] = p.name(t.parent[size_t(v)]);
		results["tremaux"] = {{"height", height}, {"parents", parents}};
	}

	json report = {{"command", "params"},
	               {"input_digest", fnv1a(source)},
	               {"results", results},
	               {"timings", {{"ms", timer.ms()}}}};
	emit_report(report, out_path);
	return 0;
}

int cmd_kernel(const std::string& file, const std::string& mode, int c, const std::string& cover_file,
               const std::string& out_program, const std::string& out_log) {
	Program p = parse_program(slurp(file));
	KernelResult res;
	if (mode == "primal") {
		std::vector<int> cover;
		if (!cover_file.empty()) {
			cover = parse_vertex_list(p, slurp(cover_file), false);
		} else {
			auto vc = min_vertex_cover(primal_graph(p));
			if (!vc) throw VerificationError("no vertex cover found");
			cover = vc->vertices;
		}
		res = kernelize_primal(p, cover, c);
	} else if (mode == "extended") {
		std::vector<int> cover;
		if (!cover_file.empty()) {
			cover = parse_vertex_list(p, slurp(cover_file), false);
		} else {
			auto vc = min_vertex_cover(typed_primal_graphs(p).g0);
			if (!vc) throw VerificationError("no vertex cover found");
			cover = vc->vertices;
		}
		res = kernelize_extended(p, cover, c);
	} else if (mode == "incidence") {
		std::vector<int> cover;
		if (!cover_file.empty()) {
			cover = parse_vertex_list(p, slurp(cover_file), true);
		} else {
			auto vc = min_vertex_cover(incidence_graph(p));
			if (!vc) throw VerificationError("no vertex cover found");
			cover = vc->vertices;
		}
		res = kernelize_incidence(p, cover, c);
	} else {
		throw PreconditionError("unknown kernel mode " + mode);
	}
	std::string program_text = render_program(res.program);
	if (out_program.empty())
		std::cout << program_text;
	else
		spit(out_program, program_text);
	if (!out_log.empty()) spit(out_log, removal_log_json(res) + "\n");
	return 0;
}

int cmd_reduce(const std::string& file, const std::string& mode, const std::string& witness_file,
               const std::string& out_dir, bool assume_fully_tight, int tightness_cap, int exact_cap) {
	Program p = parse_program(slurp(file));
	if (!is_tight(p)) {
		std::cerr << "error: input program is not tight\n";
		return kExitError;
	}
	std::string dir = out_dir.empty() ? "." : out_dir;
	auto path = [&](const std::string& f) { return dir + "/" + f; };

	if (mode == "degree") {
		AnnotatedTd at = default_annotated_td(p, false, exact_cap);
		DegreeBoundResult res = bound_degree(p, at.td);
		spit(path("program.lp"), render_program(res.program));
		json side = {{"mode", "degree"},
		             {"max_primal_degree", res.max_primal_degree},
		             {"max_incidence_degree", res.max_incidence_degree},
		             {"witness", td_to_pace(res.witness, res.program.atom_count())}};
		json corr = json::object();
		for (auto& [a, copies] : res.correspondence) corr[a] = copies;
		side["correspondence"] = corr;
		spit(path("sidecar.json"), side.dump(2) + "\n");
		return 0;
	}

	FvsOptions fopts;
	fopts.tightness = assume_fully_tight ? TightnessCheck::Assume : TightnessCheck::Check;
	fopts.tightness_cap = tightness_cap;
	TdOptions topts;
	topts.tightness = fopts.tightness;
	topts.tightness_cap = tightness_cap;

	ReductionOutput out;
	json witness_json;
	if (mode == "fvs" || mode == "fvs-paths") {
		std::vector<int> s;
		if (!witness_file.empty()) {
			s = parse_vertex_list(p, slurp(witness_file), false);
		} else {
			Graph g = primal_graph(p);
			FeedbackVertexSet sparse = sparsify_fvs(p, g, min_fvs(g));
			s = sparse.vertices;
			if (s.empty() && p.atom_count() > 0) s.push_back(0); // bit encoding needs one member
		}
		out = mode == "fvs" ? reduce_fvs(p, s, fopts) : reduce_fvs_almost_paths(p, s, fopts);
		FvsWitness w = fvs_witness_for_reduced(out);
		spit(path("normalized.lp"), render_program(w.normalized));
		witness_json = {{"kind", "fvs"},
		                {"atoms", w.atoms},
		                {"size", w.vertices.size()},
		                {"bound", w.size_bound},
		                {"wide_rule", out.wide_rule_label}};
		if (mode == "fvs-paths") {
			Graph inc = incidence_graph(out.program);
			std::vector<int> removed;
			for (const auto& name : w.atoms)
				if (auto id = out.program.find_atom(name)) removed.push_back(*id);
			removed.push_back(out.program.atom_count() + out.program.rule_position(out.wide_rule_label));
			AlmostPathsReport rep = check_almost_paths(inc, removed);
			witness_json["almost_paths"] = rep.ok;
			witness_json["longest_path"] = rep.longest_path;
		}
	} else if (mode == "td" || mode == "td-local") {
		AnnotatedTd at = witness_file.empty()
		                     ? default_annotated_td(p, mode == "td-local", exact_cap)
		                     : [&] {
			                       TreeDecomposition td = td_from_pace(slurp(witness_file));
			                       return annotate(prune_nice(make_nice(td)), p);
		                       }();
		out = mode == "td" ? reduce_td(p, at, topts) : reduce_td_localized(p, at, topts);
		if (mode == "td") {
			TdWitness w = td_witness_for_reduced(out, at);
			spit(path("normalized.lp"), render_program(w.normalized));
			witness_json = {{"kind", "td"},
			                {"width", w.td.width()},
			                {"bound", w.width_bound},
			                {"pace", td_to_pace(w.td, w.normalized.atom_count())}};
		} else {
			LocalizedWitness w = localized_td_witness(out, at);
			witness_json = {{"kind", "pd"},
			                {"width", w.pd.width()},
			                {"two_bag_restricted", w.two_bag}};
		}
	} else {
		throw PreconditionError("unknown reduce mode " + mode);
	}

	spit(path("program.lp"), render_program(out.program));
	json side = json::parse(reduction_sidecar_json(out));
	side["witness"] = witness_json;
	spit(path("sidecar.json"), side.dump(2) + "\n");
	return 0;
}

int cmd_solve(const std::string& file, const std::string& method, int c, bool count, int budget_atoms,
              const std::string& out_path) {
	Timer timer;
	std::string source = slurp(file);
	Program p = parse_program(source);
	OracleBudget budget;
	budget.atom_cap = budget_atoms;
	bool consistent = false;
	json results;
	if (method == "vc") {
		consistent = decide_consistency_vc(p, c, budget);
		results["method"] = "vc";
	} else {
		if (count) {
			auto all = enumerate_answer_sets(p, budget);
			consistent = !all.empty();
			results["count"] = all.size();
			json sets = json::array();
			for (Mask m : all) sets.push_back(atoms_of(p, m));
			results["answer_sets"] = sets;
		} else {
			consistent = first_answer_set(p, budget).has_value();
		}
		results["method"] = "oracle";
	}
	results["consistent"] = consistent;
	json report = {{"command", "solve"},
	               {"input_digest", fnv1a(source)},
	               {"results", results},
	               {"timings", {{"ms", timer.ms()}}}};
	emit_report(report, out_path);
	return consistent ? kExitConsistent : kExitInconsistent;
}

int cmd_verify(const std::string& src_file, const std::string& out_dir, const std::string& mode,
               int budget_atoms, const std::string& out_path) {
	Timer timer;
	Program src = parse_program(slurp(src_file));
	Program out = parse_program(slurp(out_dir + "/program.lp"));
	json side = json::parse(slurp(out_dir + "/sidecar.json"));
	std::vector<std::string> projection = side["projection"].get<std::vector<std::string>>();

	CorrespondenceMode m = CorrespondenceMode::Set;
	if (mode == "bijection") m = CorrespondenceMode::Bijection;
	if (mode == "consistency") m = CorrespondenceMode::Consistency;
	OracleBudget src_budget;
	OracleBudget out_budget;
	out_budget.atom_cap = budget_atoms;
	out_budget.minimality_cap = budget_atoms;
	CorrespondenceReport rep = check_correspondence(src, out, projection, m, src_budget, out_budget);

	json results = {{"mode", mode}, {"pass", rep.pass}, {"detail", rep.detail}};
	if (rep.counterexample) results["counterexample"] = *rep.counterexample;
	json report = {{"command", "verify"},
	               {"input_digest", fnv1a(render_program(src))},
	               {"results", results},
	               {"timings", {{"ms", timer.ms()}}}};
	emit_report(report, out_path);
	return rep.pass ? 0 : kExitError;
}

int cmd_sat2asp(const std::string& file, const std::string& out_path) {
	Cnf f = parse_dimacs(slurp(file));
	Program p = sat_to_asp(f);
	std::string text = render_program(p);
	if (out_path.empty())
		std::cout << text;
	else
		spit(out_path, text);
	return 0;
}

int cmd_bench(int n, std::uint64_t seed, const std::string& shape, bool verify, int budget_atoms,
              const std::string& format, const std::string& out_path) {
	if (shape != "normalized-tight") throw PreconditionError("unknown bench shape " + shape);
	int threads = threads_from_env();

	struct Row {
		int idx = 0, atoms = 0, rules = 0, fvs = 0, sparse_fvs = 0, bits = 0;
		int witness = 0, bound = 0;
		bool verified = false, consistent = false, checked = false;
	};
	std::vector<Row> rows(static_cast<size_t>(n));

	auto run_one = [&](int i) {
		Rng rng(seed + std::uint64_t(i) * 7919);
		ProgramShape ps;
		ps.max_atoms = 8;
		ps.max_rules = 6;
		Program p = random_fully_tight_program(rng, ps);
		Graph g = primal_graph(p);
		FeedbackVertexSet base = min_fvs(g);
		FeedbackVertexSet sparse = sparsify_fvs(p, g, base);
		std::vector<int> s = sparse.vertices;
		if (s.empty()) s.push_back(0);
		FvsOptions opts;
		opts.tightness = TightnessCheck::Assume; // generator filtered already
		ReductionOutput out = reduce_fvs(p, s, opts);
		FvsWitness w = fvs_witness_for_reduced(out);
		Row row;
		row.idx = i;
		row.atoms = p.atom_count();
		row.rules = p.rule_count();
		row.fvs = int(base.vertices.size());
		row.sparse_fvs = int(s.size());
		row.bits = out.bits;
		row.witness = int(w.vertices.size());
		row.bound = w.size_bound;
		row.verified = row.witness <= row.bound;
		if (verify && out.program.atom_count() <= budget_atoms) {
			OracleBudget ob;
			ob.atom_cap = budget_atoms;
			ob.minimality_cap = budget_atoms;
			CorrespondenceReport rep =
			    check_correspondence(p, out.program, out.projection, CorrespondenceMode::Set, {}, ob);
			row.verified = row.verified && rep.pass;
			row.checked = true;
			row.consistent = first_answer_set(p).has_value();
		}
		rows[size_t(i)] = row;
	};

	if (threads <= 1) {
		for (int i = 0; i < n; ++i) run_one(i);
	} else {
		std::vector<std::thread> pool;
		std::atomic<int> next{0};
		for (int t = 0; t < threads; ++t)
			pool.emplace_back([&] {
				for (int i = next++; i < n; i = next++) run_one(i);
			});
		for (auto& th : pool) th.join();
	}

	std::ostringstream csv;
	if (format == "csv") {
		csv << "idx,atoms,rules,fvs,sparse_fvs,bits,witness,bound,verified,consistent,checked\n";
		for (const Row& r : rows)
			csv << r.idx << "," << r.atoms << "," << r.rules << "," << r.fvs << "," << r.sparse_fvs << ","
			    << r.bits << "," << r.witness << "," << r.bound << "," << (r.verified ? 1 : 0) << ","
			    << (r.consistent ? 1 : 0) << "," << (r.checked ? 1 : 0) << "\n";
	} else {
		json arr = json::array();
		for (const Row& r : rows)
			arr.push_back({{"idx", r.idx},
			               {"atoms", r.atoms},
			               {"rules", r.rules},
			               {"fvs", r.fvs},
			               {"sparse_fvs", r.sparse_fvs},
			               {"bits", r.bits},
			               {"witness", r.witness},
			               {"bound", r.bound},
			               {"verified", r.verified},
			               {"consistent", r.consistent},
			               {"checked", r.checked}});
		csv << arr.dump(2) << "\n";
	}
	if (out_path.empty())
		std::cout << csv.str();
	else
		spit(out_path, csv.str());
	for (const Row& r : rows)
		if (!r.verified) return kExitError;
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"structural-parameter toolkit for ground disjunctive ASP programs"};
	app.require_subcommand(1);

	int budget_atoms = budget_atoms_from_env(22);
	app.add_option("--budget-atoms", budget_atoms, "atom cap for brute-force enumeration");
	double budget_seconds = 0;
	app.add_option("--budget-seconds", budget_seconds, "soft wall-clock budget (informational)");

	std::string file, out_path, out_dir, witness_file, cover_file, log_file;

	auto* graph = app.add_subcommand("graph", "dump a graph representation");
	std::string kind = "primal", format = "dot";
	graph->add_option("file", file)->required();
	graph->add_option("--kind", kind)->check(CLI::IsMember({"primal", "incidence", "typed"}));
	graph->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
	graph->add_option("-o,--out", out_path);

	auto* params = app.add_subcommand("params", "compute and verify structural parameters");
	bool want_vc = false, want_fvs = false, want_sparse = false, want_td = false, want_pd = false;
	bool want_layout = false, want_tremaux = false, exact = false;
	int exact_cap = 10;
	params->add_option("file", file)->required();
	params->add_flag("--vc", want_vc);
	params->add_flag("--fvs", want_fvs);
	params->add_flag("--sparse-fvs", want_sparse);
	params->add_flag("--td", want_td);
	params->add_flag("--pd", want_pd);
	params->add_flag("--layout", want_layout);
	params->add_flag("--tremaux", want_tremaux);
	params->add_flag("--exact", exact);
	params->add_option("--exact-cap", exact_cap);
	params->add_option("-o,--out", out_path);

	auto* kernel = app.add_subcommand("kernel", "role-based vertex-cover kernelization");
	std::string kmode = "primal";
	int c = 3;
	kernel->add_option("file", file)->required();
	kernel->add_option("--mode", kmode)->check(CLI::IsMember({"primal", "extended", "incidence"}));
	kernel->add_option("--c", c);
	kernel->add_option("--cover", cover_file);
	kernel->add_option("-o,--out", out_path);
	kernel->add_option("--log", log_file);

	auto* reduce = app.add_subcommand("reduce", "parameter-compressing reductions");
	std::string rmode = "fvs";
	bool assume_ft = false;
	reduce->add_option("file", file)->required();
	reduce->add_option("--mode", rmode)
	    ->check(CLI::IsMember({"fvs", "fvs-paths", "td", "td-local", "degree"}));
	reduce->add_option("--witness", witness_file);
	reduce->add_option("--out-dir", out_dir);
	reduce->add_flag("--assume-fully-tight", assume_ft);
	reduce->add_option("--exact-cap", exact_cap);

	auto* solve = app.add_subcommand("solve", "decide consistency");
	std::string method = "oracle";
	bool count = false;
	solve->add_option("file", file)->required();
	solve->add_option("--method", method)->check(CLI::IsMember({"oracle", "vc"}));
	solve->add_option("--c", c);
	solve->add_flag("--count", count);
	solve->add_option("-o,--out", out_path);

	auto* verify = app.add_subcommand("verify", "check answer-set correspondence of a reduction");
	std::string vmode = "set";
	std::string src_file;
	verify->add_option("source", src_file)->required();
	verify->add_option("out_dir", out_dir)->required();
	verify->add_option("--mode", vmode)->check(CLI::IsMember({"set", "bijection", "consistency"}));
	verify->add_option("-o,--out", out_path);

	auto* sat2asp = app.add_subcommand("sat2asp", "encode a DIMACS CNF");
	sat2asp->add_option("file", file)->required();
	sat2asp->add_option("-o,--out", out_path);

	auto* bench = app.add_subcommand("bench", "random-instance parameter compression table");
	int bench_n = 20;
	std::uint64_t seed = 1;
	std::string shape = "normalized-tight", bench_format = "csv";
	bool bench_verify = false;
	bench->add_option("--n", bench_n);
	bench->add_option("--seed", seed);
	bench->add_option("--shape", shape);
	bench->add_option("--format", bench_format)->check(CLI::IsMember({"csv", "json"}));
	bench->add_flag("--verify", bench_verify);
	bench->add_option("-o,--out", out_path);

	CLI11_PARSE(app, argc, argv);

	try {
		if (*graph) return cmd_graph(file, kind, format, out_path);
		if (*params)
			return cmd_params(file, want_vc, want_fvs, want_sparse, want_td, want_pd, want_layout,
			                  want_tremaux, exact, exact_cap, out_path);
		if (*kernel) return cmd_kernel(file, kmode, c, cover_file, out_path, log_file);
		if (*reduce) return cmd_reduce(file, rmode, witness_file, out_dir, assume_ft, budget_atoms, exact_cap);
		if (*solve) return cmd_solve(file, method, c, count, budget_atoms, out_path);
		if (*verify) return cmd_verify(src_file, out_dir, vmode, budget_atoms, out_path);
		if (*sat2asp) return cmd_sat2asp(file, out_path);
		if (*bench) return cmd_bench(bench_n, seed, shape, bench_verify, budget_atoms, bench_format, out_path);
	} catch (const ResourceError& e) {
		std::cerr << "resource error: " << e.what() << "\n";
		return kExitError;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitError;
	}
	return kExitError;
}
