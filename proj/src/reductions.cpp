#include "aspstruct/reductions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

#include "aspstruct/graphs.hpp"
#include "aspstruct/oracle.hpp"

namespace aspstruct {

// --- CNF ------------------------------------------------------------------------

Cnf parse_dimacs(const std::string& text) {
	Cnf f;
	std::istringstream in(text);
	std::string line;
	bool header = false;
	int expected_clauses = -1;
	while (std::getline(in, line)) {
		if (line.empty() || line[0] == 'c') continue;
		std::istringstream ls(line);
		if (line[0] == 'p') {
			std::string p, cnf;
			ls >> p >> cnf >> f.n_vars >> expected_clauses;
			if (cnf != "cnf" || f.n_vars < 0 || expected_clauses < 0)
				throw PreconditionError("dimacs: malformed problem line");
			header = true;
			continue;
		}
		if (!header) throw PreconditionError("dimacs: clause before problem line");
		int lit;
		std::vector<int> clause;
		while (ls >> lit) {
			if (lit == 0) {
				f.clauses.push_back(clause);
				clause.clear();
				continue;
			}
			if (std::abs(lit) > f.n_vars) throw PreconditionError("dimacs: literal out of range");
			clause.push_back(lit);
		}
		if (!clause.empty()) f.clauses.push_back(clause); // clause spanning to EOL without 0
	}
	if (!header) throw PreconditionError("dimacs: missing problem line");
	return f;
}

Program sat_to_asp(const Cnf& f) {
	Program p;
	std::vector<AtomId> pos(size_t(f.n_vars) + 1), neg(size_t(f.n_vars) + 1);
	for (int i = 1; i <= f.n_vars; ++i) {
		pos[size_t(i)] = p.intern("v" + std::to_string(i));
		neg[size_t(i)] = p.intern("nv" + std::to_string(i));
	}
	for (int i = 1; i <= f.n_vars; ++i) {
		Rule a, b;
		a.head = {pos[size_t(i)]};
		a.neg = {neg[size_t(i)]};
		b.head = {neg[size_t(i)]};
		b.neg = {pos[size_t(i)]};
		p.add_rule(std::move(a));
		p.add_rule(std::move(b));
	}
	for (const auto& clause : f.clauses) {
		if (clause.empty()) throw PreconditionError("sat_to_asp: empty clause");
		if (clause.size() > 3) throw PreconditionError("sat_to_asp: clause with more than 3 literals");
		Rule c;
		std::set<AtomId> body;
		for (int lit : clause) body.insert(lit > 0 ? neg[size_t(lit)] : pos[size_t(-lit)]);
		c.pos.assign(body.begin(), body.end());
		p.add_rule(std::move(c));
	}
	return p;
}

// --- bit encodings ------------------------------------------------------------------

int BitEncoding::ordinal(AtomId x) const {
	auto it = std::find(members.begin(), members.end(), x);
	if (it == members.end()) throw PreconditionError("bval: atom not in the encoded set");
	return int(it - members.begin());
}

bool BitEncoding::bit(AtomId x, int i) const { return (ordinal(x) >> i) & 1; }

BitEncoding build_bval(const std::vector<AtomId>& members, bool bit_floor) {
	if (members.empty()) throw PreconditionError("build_bval: empty set");
	BitEncoding enc;
	enc.members = members;
	std::sort(enc.members.begin(), enc.members.end());
	int need = 0;
	while ((1 << need) < int(enc.members.size())) ++need;
	enc.bits = bit_floor ? std::max(1, need) : need;
	return enc;
}

std::vector<std::string> bval_names(const BitEncoding& enc, AtomId x, int j) {
	std::vector<std::string> out;
	for (int i = 0; i < enc.bits; ++i) {
		std::string base = "b" + std::to_string(j) + "_" + std::to_string(i);
		out.push_back(enc.bit(x, i) ? base : "n" + base);
	}
	return out;
}

std::string reduction_sidecar_json(const ReductionOutput& out) {
	nlohmann::json j;
	j["mode"] = out.mode;
	j["projection"] = out.projection;
	nlohmann::json prov = nlohmann::json::object();
	for (auto& [label, fam] : out.provenance) prov[label] = fam;
	j["provenance"] = prov;
	j["parameters"] = {{"s_size", out.s_size}, {"bits", out.bits}, {"k", out.td_width}};
	j["sat_atom"] = out.sat_atom;
	if (!out.wide_rule_label.empty()) j["wide_rule"] = out.wide_rule_label;
	return j.dump(2);
}

// --- R_fvs -----------------------------------------------------------------------------

namespace {

void check_fvs_preconditions(const Program& p, const std::vector<AtomId>& s, TightnessCheck mode, int cap) {
	if (!is_normalized(p)) throw PreconditionError("reduce_fvs: program is not normalized");
	if (!is_tight(p)) throw PreconditionError("reduce_fvs: program is not tight");
	Graph g = primal_graph(p);
	if (!verify_fvs(g, std::vector<int>(s.begin(), s.end())))
		throw PreconditionError("reduce_fvs: S is not a feedback vertex set of the primal graph");
	if (!verify_sparse_pairs(p, std::vector<int>(s.begin(), s.end())))
		throw PreconditionError("reduce_fvs: S is not sparse");
	if (mode == TightnessCheck::Check) {
		Ternary ft = is_fully_tight(p, cap);
		if (ft == Ternary::False) throw PreconditionError("reduce_fvs: program is not fully tight");
		if (ft == Ternary::Unverifiable)
			throw ResourceError("reduce_fvs: full tightness unverifiable at this scale; pass an explicit assertion");
	}
}

struct FvsEmitter {
	const Program& p;
	bool variant; // almost-paths copies
	ReductionOutput out;
	BitEncoding enc;
	std::vector<AtomId> s_sorted;
	std::set<AtomId> s_set;

	// atom ids in the output program
	std::vector<AtomId> x_atom, nx_atom;          // per source atom
	std::vector<AtomId> satr_atom, nsatr_atom;    // per rule
	std::vector<std::vector<AtomId>> bit_atom;    // [j-1][i] positive
	std::vector<std::vector<AtomId>> nbit_atom;   // [j-1][i]
	std::vector<AtomId> v_atom, nv_atom;          // [j-1]
	AtomId sat = -1;

	// variant bookkeeping
	std::vector<std::vector<AtomId>> satr_copies;        // per rule
	std::vector<int> satr_next;                          // next unused copy
	std::vector<std::array<AtomId, 3>> x_slot, nx_slot;  // per source atom, per pointer

	std::map<int, int> family_counter;

	FvsEmitter(const Program& p_, bool variant_) : p(p_), variant(variant_) {}

	std::string next_label(int family) {
		int k = ++family_counter[family];
		return "f" + std::to_string(family) + "_" + std::to_string(k);
	}

	void add(int family, Rule r) {
		r.label = next_label(family);
		out.provenance[r.label] = family;
		out.program.add_rule(std::move(r));
	}

	AtomId bval_atom(AtomId x, int j, int i) {
		return enc.bit(x, i) ? bit_atom[size_t(j - 1)][size_t(i)] : nbit_atom[size_t(j - 1)][size_t(i)];
	}
	AtomId bval_flipped(AtomId x, int j, int i) {
		return enc.bit(x, i) ? nbit_atom[size_t(j - 1)][size_t(i)] : bit_atom[size_t(j - 1)][size_t(i)];
	}

	AtomId satr_for_occurrence(int rule_idx) {
		if (!variant) return satr_atom[size_t(rule_idx)];
		return satr_copies[size_t(rule_idx)][size_t(satr_next[size_t(rule_idx)]++)];
	}

	void intern_atoms(bool bit_floor) {
		Program& q = out.program;
		for (int a = 0; a < p.atom_count(); ++a) {
			x_atom.push_back(q.intern(p.name(a)));
			std::string nx = q.fresh_name("n" + p.name(a));
			nx_atom.push_back(q.intern(nx));
			out.complement[p.name(a)] = nx;
		}
		for (const Rule& r : p.rules) {
			satr_atom.push_back(q.intern(q.fresh_name("sat_" + r.label)));
			nsatr_atom.push_back(q.intern(q.fresh_name("nsat_" + r.label)));
		}
		enc = build_bval(s_sorted, bit_floor);
		bit_atom.assign(3, {});
		nbit_atom.assign(3, {});
		for (int j = 1; j <= 3; ++j)
			for (int i = 0; i < enc.bits; ++i) {
				std::string base = "b" + std::to_string(j) + "_" + std::to_string(i);
				bit_atom[size_t(j - 1)].push_back(q.intern(q.fresh_name(base)));
				nbit_atom[size_t(j - 1)].push_back(q.intern(q.fresh_name("n" + base)));
				out.bit_atoms.push_back(q.name(bit_atom[size_t(j - 1)].back()));
				out.bit_atoms.push_back(q.name(nbit_atom[size_t(j - 1)].back()));
			}
		for (int j = 1; j <= 3; ++j) {
			v_atom.push_back(q.intern(q.fresh_name("v" + std::to_string(j))));
			nv_atom.push_back(q.intern(q.fresh_name("nv" + std::to_string(j))));
			out.value_atoms.push_back(q.name(v_atom.back()));
			out.value_atoms.push_back(q.name(nv_atom.back()));
		}
		sat = q.intern(q.fresh_name("sat"));
		out.sat_atom = q.name(sat);

		if (variant) {
			// one sat_r copy per family-(4),(6),(7) occurrence
			satr_copies.assign(size_t(p.rule_count()), {});
			satr_next.assign(size_t(p.rule_count()), 0);
			for (int ri = 0; ri < p.rule_count(); ++ri) {
				const Rule& r = p.rules[size_t(ri)];
				int occ = 0;
				for (AtomId x : r.atoms_in_ord())
					if (s_set.count(x)) occ += enc.bits; // family 4
				for (AtomId x : r.head)
					if (s_set.count(x)) ++occ; // family 6
				for (AtomId x : r.neg)
					if (s_set.count(x)) ++occ;
				for (AtomId x : r.pos)
					if (s_set.count(x)) ++occ; // family 7
				for (int c = 0; c < occ; ++c)
					satr_copies[size_t(ri)].push_back(
					    q.intern(q.fresh_name("sat_" + r.label + "_c" + std::to_string(c + 1))));
			}
			// per-pointer slots for the family-(5) occurrences of x and nx
			x_slot.assign(size_t(p.atom_count()), {});
			nx_slot.assign(size_t(p.atom_count()), {});
			for (AtomId a : s_sorted) {
				x_slot[size_t(a)][0] = x_atom[size_t(a)];
				nx_slot[size_t(a)][0] = nx_atom[size_t(a)];
				for (int j = 2; j <= 3; ++j) {
					x_slot[size_t(a)][size_t(j - 1)] =
					    q.intern(q.fresh_name(p.name(a) + "_c" + std::to_string(j)));
					nx_slot[size_t(a)][size_t(j - 1)] =
					    q.intern(q.fresh_name(out.complement[p.name(a)] + "_c" + std::to_string(j)));
				}
			}
		}
	}

	void emit() {
		// (1) guess interpretation, pointers, values
		for (int a = 0; a < p.atom_count(); ++a) {
			Rule r;
			r.head = {x_atom[size_t(a)], nx_atom[size_t(a)]};
			add(1, std::move(r));
		}
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			Rule r;
			r.head = {satr_atom[size_t(ri)], nsatr_atom[size_t(ri)]};
			add(1, std::move(r));
		}
		for (int j = 1; j <= 3; ++j)
			for (int i = 0; i < enc.bits; ++i) {
				Rule r;
				r.head = {bit_atom[size_t(j - 1)][size_t(i)], nbit_atom[size_t(j - 1)][size_t(i)]};
				add(1, std::move(r));
			}
		for (int j = 1; j <= 3; ++j) {
			Rule r;
			r.head = {v_atom[size_t(j - 1)], nv_atom[size_t(j - 1)]};
			add(1, std::move(r));
		}
		// (2) saturate pointers and values
		for (int j = 1; j <= 3; ++j)
			for (int i = 0; i < enc.bits; ++i) {
				for (AtomId b : {bit_atom[size_t(j - 1)][size_t(i)], nbit_atom[size_t(j - 1)][size_t(i)]}) {
					Rule r;
					r.head = {b};
					r.pos = {sat};
					add(2, std::move(r));
				}
			}
		for (int j = 1; j <= 3; ++j)
			for (AtomId v : {v_atom[size_t(j - 1)], nv_atom[size_t(j - 1)]}) {
				Rule r;
				r.head = {v};
				r.pos = {sat};
				add(2, std::move(r));
			}
		// (3) saturate rule guesses, require sat
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			for (AtomId h : {satr_atom[size_t(ri)], nsatr_atom[size_t(ri)]}) {
				Rule r;
				r.head = {h};
				r.pos = {sat};
				add(3, std::move(r));
			}
		}
		{
			Rule r;
			r.neg = {sat};
			add(3, std::move(r));
		}
		// (4) pointer mismatch per rule and addressed S-atom
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			const Rule& src = p.rules[size_t(ri)];
			for (AtomId x : src.atoms_in_ord()) {
				if (!s_set.count(x)) continue;
				int j = ord(src, x);
				for (int i = 0; i < enc.bits; ++i) {
					Rule r;
					r.head = {sat};
					r.pos = {satr_for_occurrence(ri), bval_flipped(x, j, i)};
					add(4, std::move(r));
				}
			}
		}
		// (5) synchronize pointer values with S-atoms
		for (AtomId a : s_sorted) {
			for (int j = 1; j <= 3; ++j) {
				AtomId xa = variant ? x_slot[size_t(a)][size_t(j - 1)] : x_atom[size_t(a)];
				AtomId nxa = variant ? nx_slot[size_t(a)][size_t(j - 1)] : nx_atom[size_t(a)];
				Rule r1;
				r1.head = {sat};
				for (int i = 0; i < enc.bits; ++i) r1.pos.push_back(bval_atom(a, j, i));
				r1.pos.push_back(nv_atom[size_t(j - 1)]);
				r1.pos.push_back(xa);
				add(5, std::move(r1));
				Rule r2;
				r2.head = {sat};
				for (int i = 0; i < enc.bits; ++i) r2.pos.push_back(bval_atom(a, j, i));
				r2.pos.push_back(v_atom[size_t(j - 1)]);
				r2.pos.push_back(nxa);
				add(5, std::move(r2));
			}
		}
		// (6) head or negative-body atom of S set true
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			const Rule& src = p.rules[size_t(ri)];
			for (AtomId x : src.atoms_in_ord()) {
				if (!s_set.count(x)) continue;
				bool hn = std::binary_search(src.head.begin(), src.head.end(), x) ||
				          std::binary_search(src.neg.begin(), src.neg.end(), x);
				if (!hn) continue;
				Rule r;
				r.head = {sat};
				r.pos = {satr_for_occurrence(ri), v_atom[size_t(ord(src, x) - 1)]};
				add(6, std::move(r));
			}
		}
		// (7) positive-body atom of S set false
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			const Rule& src = p.rules[size_t(ri)];
			for (AtomId x : src.atoms_in_ord()) {
				if (!s_set.count(x)) continue;
				if (!std::binary_search(src.pos.begin(), src.pos.end(), x)) continue;
				Rule r;
				r.head = {sat};
				r.pos = {satr_for_occurrence(ri), nv_atom[size_t(ord(src, x) - 1)]};
				add(7, std::move(r));
			}
		}
		// (8) atoms outside S witness satisfaction directly
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			const Rule& src = p.rules[size_t(ri)];
			for (AtomId x : src.atoms_in_ord()) {
				if (s_set.count(x)) continue;
				bool hn = std::binary_search(src.head.begin(), src.head.end(), x) ||
				          std::binary_search(src.neg.begin(), src.neg.end(), x);
				Rule r;
				r.head = {sat};
				r.pos = {satr_atom[size_t(ri)], hn ? x_atom[size_t(x)] : nx_atom[size_t(x)]};
				add(8, std::move(r));
			}
		}
		// (9) some rule must be checked
		{
			Rule r;
			r.head = {sat};
			for (int ri = 0; ri < p.rule_count(); ++ri) r.pos.push_back(nsatr_atom[size_t(ri)]);
			r.label = next_label(9);
			out.provenance[r.label] = 9;
			out.wide_rule_label = r.label;
			out.program.add_rule(std::move(r));
		}
		// (0) variant chains
		if (variant) {
			for (int ri = 0; ri < p.rule_count(); ++ri) {
				AtomId prev = satr_atom[size_t(ri)];
				for (AtomId c : satr_copies[size_t(ri)]) {
					Rule r;
					r.head = {c};
					r.pos = {prev};
					add(0, std::move(r));
					prev = c;
				}
			}
			for (AtomId a : s_sorted) {
				for (int j = 2; j <= 3; ++j) {
					Rule r;
					r.head = {x_slot[size_t(a)][size_t(j - 1)]};
					r.pos = {x_slot[size_t(a)][size_t(j - 2)]};
					add(0, std::move(r));
					Rule r2;
					r2.head = {nx_slot[size_t(a)][size_t(j - 1)]};
					r2.pos = {nx_slot[size_t(a)][size_t(j - 2)]};
					add(0, std::move(r2));
				}
			}
		}
	}
};

ReductionOutput run_reduce_fvs(const Program& p, const std::vector<AtomId>& s, const FvsOptions& opts,
                               bool variant) {
	check_fvs_preconditions(p, s, opts.tightness, opts.tightness_cap);
	if (s.empty()) throw PreconditionError("reduce_fvs: S must be non-empty to build the bit encoding");
	FvsEmitter em(p, variant);
	em.s_sorted.assign(s.begin(), s.end());
	std::sort(em.s_sorted.begin(), em.s_sorted.end());
	em.s_set.insert(s.begin(), s.end());
	em.out.mode = variant ? "fvs-paths" : "fvs";
	em.out.projection = p.atom_names;
	em.out.source_atoms = p.atom_names;
	for (const Rule& r : p.rules) em.out.rule_labels.push_back(r.label);
	em.out.s_size = int(s.size());
	em.intern_atoms(opts.bit_floor);
	em.out.bits = em.enc.bits;
	em.emit();
	return std::move(em.out);
}

} // namespace

ReductionOutput reduce_fvs(const Program& p, const std::vector<AtomId>& s, const FvsOptions& opts) {
	return run_reduce_fvs(p, s, opts, false);
}

ReductionOutput reduce_fvs_almost_paths(const Program& p, const std::vector<AtomId>& s,
                                        const FvsOptions& opts) {
	return run_reduce_fvs(p, s, opts, true);
}

FvsWitness fvs_witness_for_reduced(const ReductionOutput& out) {
	if (out.mode != "fvs" && out.mode != "fvs-paths")
		throw PreconditionError("fvs_witness_for_reduced: not an R_fvs output");
	FvsWitness w;

	// normalize everything except the wide rule, chaining source atoms and
	// their complements first
	Program rest;
	rest = out.program.atoms_only();
	const Rule* wide = nullptr;
	for (const Rule& r : out.program.rules) {
		if (r.label == out.wide_rule_label) {
			wide = &r;
			continue;
		}
		rest.add_rule(r);
	}
	if (!wide) throw PreconditionError("fvs_witness_for_reduced: wide rule missing");
	std::set<std::string> first;
	for (const auto& x : out.source_atoms) {
		first.insert(x);
		auto it = out.complement.find(x);
		if (it != out.complement.end()) first.insert(it->second);
	}
	NormalizeResult norm = normalize(rest, first);
	w.normalized = std::move(norm.program);
	w.normalized.add_rule(*wide);

	w.atoms.push_back(out.sat_atom);
	for (const auto& b : out.bit_atoms) w.atoms.push_back(b);
	for (const auto& v : out.value_atoms) w.atoms.push_back(v);

	Graph inc = incidence_graph(w.normalized);
	for (const auto& name : w.atoms) {
		auto id = w.normalized.find_atom(name);
		if (!id) throw VerificationError("fvs_witness_for_reduced: atom " + name + " missing");
		w.vertices.push_back(*id);
	}
	int wide_pos = w.normalized.rule_position(out.wide_rule_label);
	if (wide_pos < 0) throw VerificationError("fvs_witness_for_reduced: wide rule lost in normalization");
	w.rule_vertex = w.normalized.atom_count() + wide_pos;
	w.vertices.push_back(w.rule_vertex);

	if (!verify_fvs(inc, w.vertices))
		throw VerificationError("fvs_witness_for_reduced: witness is not an FVS of the incidence graph");
	int m = std::max(1, out.bits);
	w.size_bound = 6 * m + 8;
	if (int(w.vertices.size()) > w.size_bound)
		throw VerificationError("fvs_witness_for_reduced: witness larger than its bound");
	return w;
}

// --- R_td ------------------------------------------------------------------------------

namespace {

struct TdEmitter {
	const Program& p;
	const AnnotatedTd& at;
	bool localized;
	ReductionOutput out;

	std::vector<BitEncoding> enc;              // per node (empty bags: bits 0)
	std::vector<AtomId> x_atom, nx_atom;       // per source atom
	std::vector<AtomId> satr_atom, nsatr_atom; // per rule
	std::vector<std::vector<std::vector<AtomId>>> bit_atom, nbit_atom; // [t][j-1][i]
	std::vector<std::vector<AtomId>> v_atom, nv_atom;                  // [t][j-1]
	std::vector<AtomId> satn_atom; // per node (19 chain)
	std::vector<AtomId> satp_atom; // per node: localized copies; == sat_root in plain mode
	std::vector<std::vector<int>> rules_at;    // node -> rule indices
	std::map<int, int> family_counter;

	TdEmitter(const Program& p_, const AnnotatedTd& at_, bool localized_) : p(p_), at(at_), localized(localized_) {}

	std::string next_label(int family) {
		int k = ++family_counter[family];
		return "f" + std::to_string(family) + "_" + std::to_string(k);
	}

	void add(int family, Rule r) {
		r.label = next_label(family);
		out.provenance[r.label] = family;
		out.program.add_rule(std::move(r));
	}

	AtomId bval_atom(int t, AtomId x, int j, int i) {
		return enc[size_t(t)].bit(x, i) ? bit_atom[size_t(t)][size_t(j - 1)][size_t(i)]
		                                : nbit_atom[size_t(t)][size_t(j - 1)][size_t(i)];
	}
	AtomId bval_flipped(int t, AtomId x, int j, int i) {
		return enc[size_t(t)].bit(x, i) ? nbit_atom[size_t(t)][size_t(j - 1)][size_t(i)]
		                                : bit_atom[size_t(t)][size_t(j - 1)][size_t(i)];
	}

	void intern_atoms(bool bit_floor) {
		Program& q = out.program;
		const NiceTd& td = at.td;
		int nodes = td.node_count();
		for (int a = 0; a < p.atom_count(); ++a) {
			x_atom.push_back(q.intern(p.name(a)));
			std::string nx = q.fresh_name("n" + p.name(a));
			nx_atom.push_back(q.intern(nx));
			out.complement[p.name(a)] = nx;
		}
		for (const Rule& r : p.rules) {
			satr_atom.push_back(q.intern(q.fresh_name("sat_" + r.label)));
			nsatr_atom.push_back(q.intern(q.fresh_name("nsat_" + r.label)));
		}
		enc.resize(static_cast<size_t>(nodes));
		bit_atom.assign(size_t(nodes), {});
		nbit_atom.assign(size_t(nodes), {});
		v_atom.assign(size_t(nodes), {});
		nv_atom.assign(size_t(nodes), {});
		for (int t = 0; t < nodes; ++t) {
			const auto& bag = td.bags[size_t(t)];
			int bits = 0;
			if (!bag.empty()) {
				enc[size_t(t)] = build_bval(bag, bit_floor);
				bits = enc[size_t(t)].bits;
			}
			out.node_bits.push_back(bits);
			bit_atom[size_t(t)].assign(3, {});
			nbit_atom[size_t(t)].assign(3, {});
			for (int j = 1; j <= 3; ++j)
				for (int i = 0; i < bits; ++i) {
					std::string base =
					    "b" + std::to_string(t) + "_" + std::to_string(j) + "_" + std::to_string(i);
					bit_atom[size_t(t)][size_t(j - 1)].push_back(q.intern(q.fresh_name(base)));
					nbit_atom[size_t(t)][size_t(j - 1)].push_back(q.intern(q.fresh_name("n" + base)));
					out.bit_atoms.push_back(q.name(bit_atom[size_t(t)][size_t(j - 1)].back()));
					out.bit_atoms.push_back(q.name(nbit_atom[size_t(t)][size_t(j - 1)].back()));
				}
			for (int j = 1; j <= 3; ++j) {
				v_atom[size_t(t)].push_back(
				    q.intern(q.fresh_name("v" + std::to_string(t) + "_" + std::to_string(j))));
				nv_atom[size_t(t)].push_back(
				    q.intern(q.fresh_name("nv" + std::to_string(t) + "_" + std::to_string(j))));
				out.value_atoms.push_back(q.name(v_atom[size_t(t)].back()));
				out.value_atoms.push_back(q.name(nv_atom[size_t(t)].back()));
			}
		}
		for (int t = 0; t < nodes; ++t)
			satn_atom.push_back(q.intern(q.fresh_name("sat_n" + std::to_string(t))));
		out.sat_atom = q.name(satn_atom[size_t(td.root)]);
		satp_atom.assign(size_t(nodes), satn_atom[size_t(td.root)]);
		if (localized) {
			for (int t = 0; t < nodes; ++t)
				if (t != td.root) satp_atom[size_t(t)] = q.intern(q.fresh_name("satp_n" + std::to_string(t)));
		}
		rules_at.assign(size_t(nodes), {});
		for (int ri = 0; ri < p.rule_count(); ++ri) rules_at[size_t(at.rule_node[size_t(ri)])].push_back(ri);
	}

	void emit() {
		const NiceTd& td = at.td;
		int nodes = td.node_count();
		auto children = td.children();

		// (10) guesses
		for (int a = 0; a < p.atom_count(); ++a) {
			Rule r;
			r.head = {x_atom[size_t(a)], nx_atom[size_t(a)]};
			add(10, std::move(r));
		}
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			Rule r;
			r.head = {satr_atom[size_t(ri)], nsatr_atom[size_t(ri)]};
			add(10, std::move(r));
		}
		for (int t = 0; t < nodes; ++t) {
			for (int j = 1; j <= 3; ++j)
				for (size_t i = 0; i < bit_atom[size_t(t)][size_t(j - 1)].size(); ++i) {
					Rule r;
					r.head = {bit_atom[size_t(t)][size_t(j - 1)][i], nbit_atom[size_t(t)][size_t(j - 1)][i]};
					add(10, std::move(r));
				}
			for (int j = 1; j <= 3; ++j) {
				Rule r;
				r.head = {v_atom[size_t(t)][size_t(j - 1)], nv_atom[size_t(t)][size_t(j - 1)]};
				add(10, std::move(r));
			}
		}
		// (11) saturate bits, require the saturation atom
		for (int t = 0; t < nodes; ++t) {
			for (int j = 1; j <= 3; ++j)
				for (size_t i = 0; i < bit_atom[size_t(t)][size_t(j - 1)].size(); ++i)
					for (AtomId b : {bit_atom[size_t(t)][size_t(j - 1)][i], nbit_atom[size_t(t)][size_t(j - 1)][i]}) {
						Rule r;
						r.head = {b};
						r.pos = {satp_atom[size_t(t)]};
						add(11, std::move(r));
					}
			Rule c;
			c.neg = {satp_atom[size_t(t)]};
			if (!localized && t != td.root) continue; // one global constraint in plain mode
			add(11, std::move(c));
		}
		// (12) saturate values and rule guesses
		for (int t = 0; t < nodes; ++t)
			for (int j = 1; j <= 3; ++j)
				for (AtomId v : {v_atom[size_t(t)][size_t(j - 1)], nv_atom[size_t(t)][size_t(j - 1)]}) {
					Rule r;
					r.head = {v};
					r.pos = {satp_atom[size_t(t)]};
					add(12, std::move(r));
				}
		for (int ri = 0; ri < p.rule_count(); ++ri)
			for (AtomId h : {satr_atom[size_t(ri)], nsatr_atom[size_t(ri)]}) {
				Rule r;
				r.head = {h};
				r.pos = {satp_atom[size_t(at.rule_node[size_t(ri)])]};
				add(12, std::move(r));
			}
		// (13) pointer mismatch at the rule's node
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			const Rule& src = p.rules[size_t(ri)];
			int t = at.rule_node[size_t(ri)];
			for (AtomId x : src.atoms_in_ord()) {
				int j = ord(src, x);
				for (int i = 0; i < out.node_bits[size_t(t)]; ++i) {
					Rule r;
					r.head = {satp_atom[size_t(t)]};
					r.pos = {satr_atom[size_t(ri)], bval_flipped(t, x, j, i)};
					add(13, std::move(r));
				}
			}
		}
		// (14)/(15) value sync at the atom's node
		for (int a = 0; a < p.atom_count(); ++a) {
			int t = at.atom_node[size_t(a)];
			for (int j = 1; j <= 3; ++j) {
				Rule r1;
				r1.head = {satp_atom[size_t(t)]};
				for (int i = 0; i < out.node_bits[size_t(t)]; ++i) r1.pos.push_back(bval_atom(t, a, j, i));
				r1.pos.push_back(nv_atom[size_t(t)][size_t(j - 1)]);
				r1.pos.push_back(x_atom[size_t(a)]);
				add(14, std::move(r1));
				Rule r2;
				r2.head = {satp_atom[size_t(t)]};
				for (int i = 0; i < out.node_bits[size_t(t)]; ++i) r2.pos.push_back(bval_atom(t, a, j, i));
				r2.pos.push_back(v_atom[size_t(t)][size_t(j - 1)]);
				r2.pos.push_back(nx_atom[size_t(a)]);
				add(15, std::move(r2));
			}
		}
		// (16) propagate pointers and values between neighboring nodes
		for (int t = 0; t < nodes; ++t) {
			for (int c : children[size_t(t)]) {
				std::vector<int> shared;
				std::set_intersection(td.bags[size_t(t)].begin(), td.bags[size_t(t)].end(),
				                      td.bags[size_t(c)].begin(), td.bags[size_t(c)].end(),
				                      std::back_inserter(shared));
				if (shared.empty()) continue;
				// pointer-pattern propagation in both orientations: the
				// correctness argument spreads a pointer target across the
				// atom's whole zone, not only downward
				for (AtomId x : shared)
					for (int j = 1; j <= 3; ++j) {
						for (int i = 0; i < out.node_bits[size_t(c)]; ++i) {
							Rule r;
							r.head = {satp_atom[size_t(t)]};
							for (int i2 = 0; i2 < out.node_bits[size_t(t)]; ++i2)
								r.pos.push_back(bval_atom(t, x, j, i2));
							r.pos.push_back(bval_flipped(c, x, j, i));
							add(16, std::move(r));
						}
						for (int i = 0; i < out.node_bits[size_t(t)]; ++i) {
							Rule r;
							r.head = {satp_atom[size_t(t)]};
							for (int i2 = 0; i2 < out.node_bits[size_t(c)]; ++i2)
								r.pos.push_back(bval_atom(c, x, j, i2));
							r.pos.push_back(bval_flipped(t, x, j, i));
							add(16, std::move(r));
						}
					}
				for (int j = 1; j <= 3; ++j) {
					Rule r1;
					r1.head = {satp_atom[size_t(t)]};
					r1.pos = {nv_atom[size_t(t)][size_t(j - 1)], v_atom[size_t(c)][size_t(j - 1)]};
					add(16, std::move(r1));
					Rule r2;
					r2.head = {satp_atom[size_t(t)]};
					r2.pos = {v_atom[size_t(t)][size_t(j - 1)], nv_atom[size_t(c)][size_t(j - 1)]};
					add(16, std::move(r2));
				}
			}
		}
		// (17)/(18) rule satisfaction through pointer values
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			const Rule& src = p.rules[size_t(ri)];
			int t = at.rule_node[size_t(ri)];
			for (AtomId x : src.atoms_in_ord()) {
				int j = ord(src, x);
				bool hn = std::binary_search(src.head.begin(), src.head.end(), x) ||
				          std::binary_search(src.neg.begin(), src.neg.end(), x);
				Rule r;
				r.head = {satp_atom[size_t(t)]};
				r.pos = {satr_atom[size_t(ri)],
				         hn ? v_atom[size_t(t)][size_t(j - 1)] : nv_atom[size_t(t)][size_t(j - 1)]};
				add(hn ? 17 : 18, std::move(r));
			}
		}
		// (19) aggregate rule checks along the tree
		for (int t = 0; t < nodes; ++t) {
			Rule r;
			r.head = {satn_atom[size_t(t)]};
			for (int c : children[size_t(t)]) r.pos.push_back(satn_atom[size_t(c)]);
			for (int ri : rules_at[size_t(t)]) r.pos.push_back(nsatr_atom[size_t(ri)]);
			add(19, std::move(r));
		}
		// (0) localized equivalence chains
		if (localized) {
			for (int t = 0; t < nodes; ++t)
				for (int c : children[size_t(t)]) {
					Rule r1;
					r1.head = {satp_atom[size_t(t)]};
					r1.pos = {satp_atom[size_t(c)]};
					add(0, std::move(r1));
					Rule r2;
					r2.head = {satp_atom[size_t(c)]};
					r2.pos = {satp_atom[size_t(t)]};
					add(0, std::move(r2));
				}
		}
	}
};

void check_td_preconditions(const Program& p, const AnnotatedTd& t, TightnessCheck mode, int cap) {
	if (!is_normalized(p)) throw PreconditionError("reduce_td: program is not normalized");
	if (!is_tight(p)) throw PreconditionError("reduce_td: program is not tight");
	if (!verify_annotated(t, p)) throw PreconditionError("reduce_td: invalid annotated TD");
	if (!verify_td(primal_graph(p), t.td)) throw PreconditionError("reduce_td: not a TD of the primal graph");
	if (mode == TightnessCheck::Check) {
		Ternary ft = is_fully_tight(p, cap);
		if (ft == Ternary::False) throw PreconditionError("reduce_td: program is not fully tight");
		if (ft == Ternary::Unverifiable)
			throw ResourceError("reduce_td: full tightness unverifiable at this scale; pass an explicit assertion");
	}
}

ReductionOutput run_reduce_td(const Program& p, const AnnotatedTd& t, const TdOptions& opts, bool localized) {
	check_td_preconditions(p, t, opts.tightness, opts.tightness_cap);
	TdEmitter em(p, t, localized);
	em.out.mode = localized ? "td-local" : "td";
	em.out.projection = p.atom_names;
	em.out.source_atoms = p.atom_names;
	for (const Rule& r : p.rules) em.out.rule_labels.push_back(r.label);
	em.out.td_width = t.td.width();
	em.out.s_size = 0;
	em.intern_atoms(opts.bit_floor);
	int maxbits = 0;
	for (int b : em.out.node_bits) maxbits = std::max(maxbits, b);
	em.out.bits = maxbits;
	em.emit();
	return std::move(em.out);
}

} // namespace

ReductionOutput reduce_td(const Program& p, const AnnotatedTd& t, const TdOptions& opts) {
	return run_reduce_td(p, t, opts, false);
}

ReductionOutput reduce_td_localized(const Program& p, const AnnotatedTd& t, const TdOptions& opts) {
	return run_reduce_td(p, t, opts, true);
}

// --- TD witnesses -----------------------------------------------------------------------

namespace {

// Bag-building bookkeeping shared by the witness constructions.
struct TdNames {
	const ReductionOutput& out;
	int nodes;

	explicit TdNames(const ReductionOutput& o, const AnnotatedTd& t) : out(o), nodes(t.td.node_count()) {}

	std::string bit(int t, int j, int i, bool positive) const {
		std::string base = "b" + std::to_string(t) + "_" + std::to_string(j) + "_" + std::to_string(i);
		return positive ? base : "n" + base;
	}
	std::string val(int t, int j, bool positive) const {
		std::string base = "v" + std::to_string(t) + "_" + std::to_string(j);
		return positive ? base : "n" + base;
	}
	std::string satn(int t) const { return "sat_n" + std::to_string(t); }
	std::string satp(int t, int root, bool localized) const {
		if (!localized || t == root) return satn(root);
		return "satp_n" + std::to_string(t);
	}

	void add_bits(std::vector<std::string>& bag, int t, std::optional<int> only_j = {}) const {
		for (int j = 1; j <= 3; ++j) {
			if (only_j && j > *only_j) continue;
			for (int i = 0; i < out.node_bits[size_t(t)]; ++i) {
				bag.push_back(bit(t, j, i, true));
				bag.push_back(bit(t, j, i, false));
			}
			bag.push_back(val(t, j, true));
			bag.push_back(val(t, j, false));
		}
	}
	void add_pointer(std::vector<std::string>& bag, int t, int j) const {
		for (int i = 0; i < out.node_bits[size_t(t)]; ++i) {
			bag.push_back(bit(t, j, i, true));
			bag.push_back(bit(t, j, i, false));
		}
		bag.push_back(val(t, j, true));
		bag.push_back(val(t, j, false));
	}
};

} // namespace

TdWitness td_witness_for_reduced(const ReductionOutput& out, const AnnotatedTd& at) {
	if (out.mode != "td" && out.mode != "td-local")
		throw PreconditionError("td_witness_for_reduced: not an R_td output");
	bool localized = out.mode == "td-local";
	const NiceTd& td = at.td;
	int nodes = td.node_count();
	auto children = td.children();
	TdNames names(out, at);

	NormalizeResult norm = normalize(out.program);
	TdWitness w;
	w.normalized = std::move(norm.program);

	// anchor bag per node plus three sliding gadgets per tree edge
	std::vector<std::vector<std::string>> bags;
	std::vector<int> parent;
	std::vector<int> anchor(size_t(nodes), -1);

	// rules and atoms assigned per node
	std::vector<std::vector<int>> rules_at(static_cast<size_t>(nodes));
	std::vector<std::vector<int>> atoms_at(static_cast<size_t>(nodes));
	for (int ri = 0; ri < int(at.rule_node.size()); ++ri) rules_at[size_t(at.rule_node[size_t(ri)])].push_back(ri);
	for (int a = 0; a < int(at.atom_node.size()); ++a) atoms_at[size_t(at.atom_node[size_t(a)])].push_back(a);

	// breadth-first so parents are created before children
	std::vector<int> order;
	{
		std::vector<int> stack{td.root};
		while (!stack.empty()) {
			int t = stack.back();
			stack.pop_back();
			order.push_back(t);
			for (int c : children[size_t(t)]) stack.push_back(c);
		}
	}
	for (int t : order) {
		std::vector<std::string> abag;
		abag.push_back(names.satp(t, td.root, localized));
		abag.push_back(names.satn(t));
		names.add_bits(abag, t);
		for (int c : children[size_t(t)]) abag.push_back(names.satn(c));
		for (int ri : rules_at[size_t(t)]) {
			abag.push_back("sat_" + out.rule_labels[size_t(ri)]);
			abag.push_back("nsat_" + out.rule_labels[size_t(ri)]);
		}
		for (int a : atoms_at[size_t(t)]) {
			abag.push_back(out.source_atoms[size_t(a)]);
			abag.push_back(out.complement.at(out.source_atoms[size_t(a)]));
		}
		int p = td.parent[size_t(t)];
		int link = -1;
		if (p >= 0) {
			// E1, E2, E3 between the parent anchor and this anchor
			for (int j = 1; j <= 3; ++j) {
				std::vector<std::string> ebag;
				ebag.push_back(names.satp(p, td.root, localized));
				ebag.push_back(names.satp(t, td.root, localized));
				ebag.push_back(names.satn(t));
				// parent bits from pointer j on; child bits up to pointer j
				for (int jj = j; jj <= 3; ++jj) names.add_pointer(ebag, p, jj);
				for (int jj = 1; jj <= j; ++jj) names.add_pointer(ebag, t, jj);
				bags.push_back(ebag);
				parent.push_back(link < 0 ? anchor[size_t(p)] : link);
				link = int(bags.size()) - 1;
			}
		}
		bags.push_back(abag);
		parent.push_back(link < 0 ? (p < 0 ? -1 : anchor[size_t(p)]) : link);
		anchor[size_t(t)] = int(bags.size()) - 1;
	}

	// place normalization auxiliaries: a duplicate bag per chained rule
	std::map<std::string, std::vector<std::string>> aux_of; // original label -> aux atoms
	for (const auto& name : w.normalized.atom_names) {
		if (!out.program.find_atom(name)) {
			auto pos = name.rfind("_x");
			if (pos != std::string::npos) aux_of[name.substr(0, pos)].push_back(name);
		}
	}
	for (auto& [label, auxes] : aux_of) {
		const Rule* orig = out.program.find_rule(label);
		if (!orig) throw VerificationError("td_witness: aux for unknown rule " + label);
		std::vector<std::string> ratoms;
		for (AtomId a : orig->atoms_sorted()) ratoms.push_back(out.program.name(a));
		int home = -1;
		for (size_t i = 0; i < bags.size() && home < 0; ++i) {
			bool all = true;
			for (const auto& nm : ratoms)
				if (std::find(bags[i].begin(), bags[i].end(), nm) == bags[i].end()) { all = false; break; }
			if (all) home = int(i);
		}
		if (home < 0) throw VerificationError("td_witness: no bag covers rule " + label);
		std::vector<std::string> dup = bags[size_t(home)];
		for (const auto& a : auxes) dup.push_back(a);
		bags.push_back(dup);
		parent.push_back(parent[size_t(home)]);
		parent[size_t(home)] = int(bags.size()) - 1;
		if (parent.back() == -1) {
			// new root
		}
	}

	// resolve names to normalized-program atom ids
	w.td.bags.clear();
	for (auto& bag : bags) {
		std::vector<int> ids;
		for (const auto& nm : bag) {
			auto id = w.normalized.find_atom(nm);
			if (id) ids.push_back(*id);
		}
		std::sort(ids.begin(), ids.end());
		ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
		w.td.bags.push_back(std::move(ids));
	}
	w.td.parent = parent;
	w.td.root = -1;
	for (size_t i = 0; i < parent.size(); ++i)
		if (parent[i] < 0) w.td.root = int(i);

	int k = std::max(1, td.width());
	int logk = 0;
	while ((1 << logk) < k) ++logk;
	w.width_bound = 20 * std::max(1, logk) + 14;
	if (!verify_td(primal_graph(w.normalized), w.td))
		throw VerificationError("td_witness_for_reduced: constructed TD is invalid");
	if (w.td.width() > w.width_bound)
		throw VerificationError("td_witness_for_reduced: width " + std::to_string(w.td.width()) +
		                        " exceeds the bound " + std::to_string(w.width_bound));
	w.two_bag = false;
	return w;
}

LocalizedWitness localized_td_witness(const ReductionOutput& out, const AnnotatedTd& at) {
	if (out.mode != "td-local") throw PreconditionError("localized_td_witness: not a localized output");
	const NiceTd& td = at.td;
	int nodes = td.node_count();
	auto children = td.children();
	TdNames names(out, at);

	// the tree must be a path; order bags root-down
	std::vector<int> path;
	{
		int t = td.root;
		while (true) {
			path.push_back(t);
			const auto& ch = children[size_t(t)];
			if (ch.empty()) break;
			if (ch.size() > 1) throw PreconditionError("localized_td_witness: tree is not a path");
			t = ch[0];
		}
		if (int(path.size()) != nodes) throw PreconditionError("localized_td_witness: tree is not a path");
	}

	std::vector<std::vector<int>> rules_at(static_cast<size_t>(nodes));
	std::vector<std::vector<int>> atoms_at(static_cast<size_t>(nodes));
	for (int ri = 0; ri < int(at.rule_node.size()); ++ri) rules_at[size_t(at.rule_node[size_t(ri)])].push_back(ri);
	for (int a = 0; a < int(at.atom_node.size()); ++a) atoms_at[size_t(at.atom_node[size_t(a)])].push_back(a);

	LocalizedWitness w;
	for (int t : path) {
		std::vector<std::string> bag;
		bag.push_back(names.satp(t, td.root, true));
		bag.push_back(names.satn(t));
		names.add_bits(bag, t);
		for (int c : children[size_t(t)]) {
			bag.push_back(names.satp(c, td.root, true));
			bag.push_back(names.satn(c));
			names.add_bits(bag, c);
		}
		for (int ri : rules_at[size_t(t)]) {
			bag.push_back("sat_" + out.rule_labels[size_t(ri)]);
			bag.push_back("nsat_" + out.rule_labels[size_t(ri)]);
		}
		for (int a : atoms_at[size_t(t)]) {
			bag.push_back(out.source_atoms[size_t(a)]);
			bag.push_back(out.complement.at(out.source_atoms[size_t(a)]));
		}
		std::vector<int> ids;
		for (const auto& nm : bag) {
			auto id = out.program.find_atom(nm);
			if (id) ids.push_back(*id);
		}
		std::sort(ids.begin(), ids.end());
		ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
		w.pd.bags.push_back(std::move(ids));
	}
	if (!verify_pd(primal_graph(out.program), w.pd))
		throw VerificationError("localized_td_witness: constructed PD is invalid");
	w.two_bag = pd_two_bag_restricted(w.pd);
	return w;
}

// --- degree bounding ----------------------------------------------------------------------

DegreeBoundResult bound_degree(const Program& p, const NiceTd& td) {
	if (!is_normalized(p)) throw PreconditionError("bound_degree: program is not normalized");
	Graph g = primal_graph(p);
	if (!verify_td(g, td)) throw PreconditionError("bound_degree: invalid tree decomposition");

	// assign rules to covering nodes, injectively; avoid join nodes, insert
	// duplicates only when no free node remains
	NiceTd t = td;
	auto children_of = [&](const NiceTd& x) { return x.children(); };
	std::vector<int> rule_node(size_t(p.rule_count()), -1);
	{
		std::vector<char> used(size_t(t.node_count()), 0);
		for (int ri = 0; ri < p.rule_count(); ++ri) {
			auto atoms = p.rules[size_t(ri)].atoms_sorted();
			auto ch = children_of(t);
			int pick = -1, dup_base = -1;
			for (int n = 0; n < t.node_count(); ++n) {
				const auto& bag = t.bags[size_t(n)];
				if (!std::includes(bag.begin(), bag.end(), atoms.begin(), atoms.end())) continue;
				if (dup_base < 0) dup_base = n;
				if (used[size_t(n)] || ch[size_t(n)].size() > 1) continue;
				pick = n;
				break;
			}
			if (pick < 0) {
				if (dup_base < 0)
					throw PreconditionError("bound_degree: rule " + p.rules[size_t(ri)].label +
					                        " is covered by no bag");
				// duplicate above dup_base
				int d = t.node_count();
				t.bags.push_back(t.bags[size_t(dup_base)]);
				t.parent.push_back(t.parent[size_t(dup_base)]);
				t.parent[size_t(dup_base)] = d;
				if (t.parent[size_t(d)] < 0) t.root = d;
				used.push_back(0);
				pick = d;
			}
			used[size_t(pick)] = 1;
			rule_node[size_t(ri)] = pick;
		}
	}

	int nodes = t.node_count();
	auto ch = t.children();

	DegreeBoundResult res;
	Program& q = res.program;

	// copies per (node, atom in bag)
	std::map<std::pair<int, int>, AtomId> copy_id;   // (node, atom) -> output atom
	std::map<std::pair<int, int>, AtomId> shadow_id; // only on long path zones
	for (int a = 0; a < p.atom_count(); ++a) {
		std::vector<int> zone;
		for (int n = 0; n < nodes; ++n)
			if (std::binary_search(t.bags[size_t(n)].begin(), t.bags[size_t(n)].end(), a)) zone.push_back(n);
		for (int n : zone) {
			AtomId id = q.intern(q.fresh_name(p.name(a) + "_t" + std::to_string(n)));
			copy_id[{n, a}] = id;
			res.correspondence[p.name(a)].push_back(q.name(id));
		}
		if (zone.size() <= 1) continue;

		// zone adjacency inside the tree
		std::map<int, std::vector<int>> zadj;
		for (int n : zone) {
			int par = t.parent[size_t(n)];
			if (par >= 0 && std::binary_search(t.bags[size_t(par)].begin(), t.bags[size_t(par)].end(), a)) {
				zadj[n].push_back(par);
				zadj[par].push_back(n);
			}
		}
		bool is_path = true;
		for (int n : zone)
			if (zadj[n].size() > 2) is_path = false;

		if (zone.size() == 2 || !is_path) {
			// equivalence pairs per zone edge
			std::set<std::pair<int, int>> done;
			for (int n : zone)
				for (int m : zadj[n]) {
					auto key = std::minmax(n, m);
					if (!done.insert({key.first, key.second}).second) continue;
					Rule r1, r2;
					r1.head = {copy_id[{n, a}]};
					r1.pos = {copy_id[{m, a}]};
					r2.head = {copy_id[{m, a}]};
					r2.pos = {copy_id[{n, a}]};
					r1.label = "eq_" + p.name(a) + "_" + std::to_string(n) + "_" + std::to_string(m) + "_u";
					r2.label = "eq_" + p.name(a) + "_" + std::to_string(n) + "_" + std::to_string(m) + "_d";
					q.add_rule(std::move(r1));
					q.add_rule(std::move(r2));
				}
			continue;
		}

		// path zone of length >= 3: up-chain through the copies, down-chain
		// through fresh shadows, closed into one cycle
		std::vector<int> seq;
		int start = -1;
		for (int n : zone)
			if (zadj[n].size() == 1) start = std::min(start < 0 ? n : start, n);
		seq.push_back(start);
		int prev = -1, cur = start;
		while (int(seq.size()) < int(zone.size())) {
			for (int m : zadj[cur])
				if (m != prev) {
					prev = cur;
					cur = m;
					break;
				}
			seq.push_back(cur);
		}
		for (int n : seq) {
			AtomId sid = q.intern(q.fresh_name(p.name(a) + "_s" + std::to_string(n)));
			shadow_id[{n, a}] = sid;
			res.correspondence[p.name(a)].push_back(q.name(sid));
		}
		auto link = [&](AtomId head, AtomId body, const std::string& label) {
			Rule r;
			r.head = {head};
			r.pos = {body};
			r.label = label;
			q.add_rule(std::move(r));
		};
		std::string base = "eq_" + p.name(a) + "_";
		for (size_t i = 0; i + 1 < seq.size(); ++i)
			link(copy_id[{seq[i + 1], a}], copy_id[{seq[i], a}], base + "up" + std::to_string(i));
		link(shadow_id[{seq.back(), a}], copy_id[{seq.back(), a}], base + "turn");
		for (size_t i = seq.size() - 1; i > 0; --i)
			link(shadow_id[{seq[i - 1], a}], shadow_id[{seq[i], a}], base + "dn" + std::to_string(i));
		link(copy_id[{seq[0], a}], shadow_id[{seq[0], a}], base + "close");
	}

	// rule copies at their nodes
	for (int ri = 0; ri < p.rule_count(); ++ri) {
		const Rule& r = p.rules[size_t(ri)];
		int n = rule_node[size_t(ri)];
		Rule c;
		c.label = r.label + "_t" + std::to_string(n);
		for (AtomId a : r.head) c.head.push_back(copy_id.at({n, a}));
		for (AtomId a : r.pos) c.pos.push_back(copy_id.at({n, a}));
		for (AtomId a : r.neg) c.neg.push_back(copy_id.at({n, a}));
		q.add_rule(std::move(c));
	}

	// witness TD over the copies
	res.witness.bags.assign(size_t(nodes), {});
	res.witness.parent = t.parent;
	res.witness.root = t.root;
	for (int n = 0; n < nodes; ++n) {
		std::vector<int>& bag = res.witness.bags[size_t(n)];
		for (int a : t.bags[size_t(n)]) {
			bag.push_back(copy_id.at({n, a}));
			auto sh = shadow_id.find({n, a});
			if (sh != shadow_id.end()) bag.push_back(sh->second);
		}
		for (int c : ch[size_t(n)])
			for (int a : t.bags[size_t(c)]) {
				if (!std::binary_search(t.bags[size_t(n)].begin(), t.bags[size_t(n)].end(), a)) continue;
				bag.push_back(copy_id.at({c, a}));
				auto sh = shadow_id.find({c, a});
				if (sh != shadow_id.end()) bag.push_back(sh->second);
			}
		std::sort(bag.begin(), bag.end());
		bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
	}
	Graph gq = primal_graph(q);
	if (!verify_td(gq, res.witness))
		throw VerificationError("bound_degree: constructed witness TD is invalid");
	res.max_primal_degree = gq.max_degree();
	res.max_incidence_degree = incidence_graph(q).max_degree();
	return res;
}

} // namespace aspstruct
