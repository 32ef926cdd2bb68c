#include "aspstruct/program.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>

namespace aspstruct {

std::vector<AtomId> Rule::atoms_in_ord() const {
	std::vector<AtomId> out;
	out.reserve(size_t(size()));
	out.insert(out.end(), pos.begin(), pos.end());
	out.insert(out.end(), head.begin(), head.end());
	out.insert(out.end(), neg.begin(), neg.end());
	return out;
}

std::vector<AtomId> Rule::atoms_sorted() const {
	std::vector<AtomId> out = atoms_in_ord();
	std::sort(out.begin(), out.end());
	return out;
}

bool Rule::contains(AtomId a) const {
	return std::binary_search(head.begin(), head.end(), a) ||
	       std::binary_search(pos.begin(), pos.end(), a) ||
	       std::binary_search(neg.begin(), neg.end(), a);
}

AtomId Program::intern(const std::string& name) {
	auto it = atom_index.find(name);
	if (it != atom_index.end()) return it->second;
	AtomId id = AtomId(atom_names.size());
	atom_names.push_back(name);
	atom_index.emplace(name, id);
	return id;
}

std::optional<AtomId> Program::find_atom(const std::string& name) const {
	auto it = atom_index.find(name);
	if (it == atom_index.end()) return std::nullopt;
	return it->second;
}

std::string Program::fresh_name(const std::string& base) const {
	std::string name = base;
	while (atom_index.count(name)) name += '\'';
	return name;
}

bool Program::add_rule(Rule r) {
	std::sort(r.head.begin(), r.head.end());
	std::sort(r.pos.begin(), r.pos.end());
	std::sort(r.neg.begin(), r.neg.end());
	for (const Rule& q : rules)
		if (q.same_shape(r)) return false;
	if (r.label.empty()) r.label = "r" + std::to_string(rules.size() + 1);
	rules.push_back(std::move(r));
	return true;
}

const Rule* Program::find_rule(const std::string& label) const {
	for (const Rule& r : rules)
		if (r.label == label) return &r;
	return nullptr;
}

int Program::rule_position(const std::string& label) const {
	for (size_t i = 0; i < rules.size(); ++i)
		if (rules[i].label == label) return int(i);
	return -1;
}

Program Program::atoms_only() const {
	Program q;
	q.atom_names = atom_names;
	q.atom_index = atom_index;
	return q;
}

// --- parser ------------------------------------------------------------------

namespace {

struct Token {
	enum Kind { Ident, Pipe, Semi, Comma, If, Dot, End } kind;
	std::string text;
	int line, col;
};

struct Lexer {
	const std::string& src;
	size_t pos = 0;
	int line = 1, col = 1;

	explicit Lexer(const std::string& s) : src(s) {}

	void advance() {
		if (pos < src.size() && src[pos] == '\n') { ++line; col = 1; }
		else ++col;
		++pos;
	}

	void skip_ws() {
		while (pos < src.size()) {
			char c = src[pos];
			if (c == '%') {
				while (pos < src.size() && src[pos] != '\n') advance();
			} else if (std::isspace(static_cast<unsigned char>(c))) {
				advance();
			} else {
				break;
			}
		}
	}

	Token next() {
		skip_ws();
		if (pos >= src.size()) return {Token::End, "", line, col};
		int l = line, c = col;
		char ch = src[pos];
		if (ch == '|') { advance(); return {Token::Pipe, "|", l, c}; }
		if (ch == ';') { advance(); return {Token::Semi, ";", l, c}; }
		if (ch == ',') { advance(); return {Token::Comma, ",", l, c}; }
		if (ch == '.') { advance(); return {Token::Dot, ".", l, c}; }
		if (ch == ':') {
			advance();
			if (pos < src.size() && src[pos] == '-') { advance(); return {Token::If, ":-", l, c}; }
			throw ParseError("expected ':-'", l, c);
		}
		if (ch >= 'a' && ch <= 'z') {
			std::string ident;
			while (pos < src.size()) {
				char d = src[pos];
				if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
					ident += d;
					advance();
				} else {
					break;
				}
			}
			return {Token::Ident, ident, l, c};
		}
		throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
	}
};

} // namespace

Program parse_program(const std::string& text) {
	Program p;
	Lexer lex(text);
	Token tok = lex.next();
	while (tok.kind != Token::End) {
		int rule_line = tok.line, rule_col = tok.col;
		std::vector<std::string> head_names;
		std::vector<std::pair<std::string, bool>> body; // (atom, negated)

		if (tok.kind == Token::Ident) {
			head_names.push_back(tok.text);
			tok = lex.next();
			while (tok.kind == Token::Pipe || tok.kind == Token::Semi) {
				tok = lex.next();
				if (tok.kind != Token::Ident) throw ParseError("expected atom after head separator", tok.line, tok.col);
				head_names.push_back(tok.text);
				tok = lex.next();
			}
		}
		if (tok.kind == Token::If) {
			tok = lex.next();
			while (true) {
				bool negated = false;
				if (tok.kind != Token::Ident) throw ParseError("expected body literal", tok.line, tok.col);
				if (tok.text == "not") {
					Token peek = lex.next();
					if (peek.kind == Token::Ident) {
						negated = true;
						tok = peek;
					} else {
						// "not" immediately before a delimiter is the atom named not
						body.emplace_back("not", false);
						tok = peek;
						if (tok.kind == Token::Comma) { tok = lex.next(); continue; }
						break;
					}
				}
				body.emplace_back(tok.text, negated);
				tok = lex.next();
				if (tok.kind == Token::Comma) { tok = lex.next(); continue; }
				break;
			}
		}
		if (tok.kind != Token::Dot)
			throw ParseError("expected '.' at end of rule", tok.line, tok.col);

		if (head_names.empty() && body.empty())
			throw ParseError("empty rule", rule_line, rule_col);

		Rule r;
		std::set<std::string> seen;
		auto check_dup = [&](const std::string& name) {
			if (!seen.insert(name).second)
				throw ParseError("atom '" + name + "' occurs more than once in one rule", rule_line, rule_col);
		};
		for (const auto& h : head_names) {
			check_dup(h);
			r.head.push_back(p.intern(h));
		}
		for (const auto& [name, negated] : body) {
			check_dup(name);
			AtomId a = p.intern(name);
			(negated ? r.neg : r.pos).push_back(a);
		}
		p.add_rule(std::move(r));
		tok = lex.next();
	}
	return p;
}

std::string render_rule(const Program& p, const Rule& r) {
	std::string out;
	for (size_t i = 0; i < r.head.size(); ++i) {
		if (i) out += " | ";
		out += p.name(r.head[i]);
	}
	if (!r.pos.empty() || !r.neg.empty()) {
		if (!r.head.empty()) out += " ";
		out += ":- ";
		bool first = true;
		for (AtomId a : r.pos) {
			if (!first) out += ", ";
			out += p.name(a);
			first = false;
		}
		for (AtomId a : r.neg) {
			if (!first) out += ", ";
			out += "not " + p.name(a);
			first = false;
		}
	}
	out += ".";
	return out;
}

std::string render_program(const Program& p) {
	std::string out;
	for (const Rule& r : p.rules) {
		out += render_rule(p, r);
		out += "\n";
	}
	return out;
}

namespace {

// Name-based rule key for structural comparison across programs.
std::vector<std::vector<std::string>> rule_key(const Program& p, const Rule& r) {
	std::vector<std::vector<std::string>> key(3);
	for (AtomId a : r.head) key[0].push_back(p.name(a));
	for (AtomId a : r.pos) key[1].push_back(p.name(a));
	for (AtomId a : r.neg) key[2].push_back(p.name(a));
	for (auto& block : key) std::sort(block.begin(), block.end());
	return key;
}

} // namespace

bool programs_equal_by_name(const Program& a, const Program& b) {
	std::multiset<std::vector<std::vector<std::string>>> ka, kb;
	for (const Rule& r : a.rules) ka.insert(rule_key(a, r));
	for (const Rule& r : b.rules) kb.insert(rule_key(b, r));
	return ka == kb;
}

int ord(const Rule& r, AtomId x) {
	std::vector<AtomId> atoms = r.atoms_in_ord();
	for (size_t i = 0; i < atoms.size(); ++i)
		if (atoms[i] == x) return int(i) + 1;
	throw PreconditionError("ord: atom not in rule " + r.label);
}

// --- normalization -------------------------------------------------------------

NormalizeResult normalize(const Program& p, const std::set<std::string>& chain_first) {
	NormalizeResult res;
	res.program = p.atoms_only();
	res.projection = p.atom_names;

	for (const Rule& r : p.rules) {
		if (r.size() <= 3) {
			res.program.add_rule(r);
			continue;
		}
		if (r.head.size() >= 2)
			throw PreconditionError("normalize: rule " + r.label +
			                        " has a disjunctive head and more than 3 atoms; disjunctive heads are not split");

		// Body literals in chain order: chain_first atoms first, then B+ and
		// B- in ord order.
		std::vector<std::pair<AtomId, bool>> lits;
		for (AtomId a : r.pos) lits.emplace_back(a, false);
		for (AtomId a : r.neg) lits.emplace_back(a, true);
		std::stable_partition(lits.begin(), lits.end(), [&](const std::pair<AtomId, bool>& l) {
			return chain_first.count(p.name(l.first)) > 0;
		});

		// aux1 :- l1, l2;  aux_i :- aux_{i-1}, l_{i+1};  head :- aux_last, l_k
		size_t k = lits.size();
		AtomId prev = -1;
		for (size_t i = 0; i + 1 < k; ++i) {
			Rule chain;
			bool last = (i + 2 == k);
			if (last) {
				chain.head = r.head;
				chain.label = r.label;
			} else {
				AtomId aux = res.program.intern(res.program.fresh_name(r.label + "_x" + std::to_string(i + 1)));
				chain.head = {aux};
				chain.label = r.label + "_n" + std::to_string(i + 1);
				res.aux_count++;
			}
			if (i == 0) {
				(lits[0].second ? chain.neg : chain.pos).push_back(lits[0].first);
			} else {
				chain.pos.push_back(prev);
			}
			auto& block = lits[i + 1].second ? chain.neg : chain.pos;
			block.push_back(lits[i + 1].first);
			prev = last ? -1 : chain.head[0];
			res.program.add_rule(std::move(chain));
		}
	}
	return res;
}

bool is_normalized(const Program& p) {
	for (const Rule& r : p.rules)
		if (r.size() > 3) return false;
	return true;
}

// --- completion ------------------------------------------------------------------

Program completion(const Program& p, bool simplify_singletons) {
	Program out = p.atoms_only();
	for (const Rule& r : p.rules) out.add_rule(r);

	// H(h) in rule order, per head atom.
	std::map<AtomId, std::vector<const Rule*>> heads;
	for (const Rule& r : p.rules)
		for (AtomId h : r.head) heads[h].push_back(&r);

	// Support token for (r, h): the fresh atom r_h, or h itself when H(h) is
	// a simplified singleton.
	std::map<std::pair<std::string, AtomId>, AtomId> support;
	for (auto& [h, rs] : heads) {
		bool singleton = simplify_singletons && rs.size() == 1;
		Rule supp;
		for (const Rule* r : rs) {
			AtomId tok;
			if (singleton) {
				tok = h;
			} else {
				tok = out.intern(out.fresh_name(r->label + "_" + p.name(h)));
			}
			support[{r->label, h}] = tok;
			supp.head.push_back(tok);
		}
		supp.pos.push_back(h);
		if (singleton) continue; // tautological h :- h
		out.add_rule(std::move(supp));
	}
	for (auto& [h, rs] : heads) {
		for (const Rule* r : rs) {
			AtomId tok = support[{r->label, h}];
			for (AtomId a : r->pos) {
				Rule c;
				c.pos.push_back(tok);
				c.neg.push_back(a);
				out.add_rule(std::move(c));
			}
			std::vector<AtomId> others = r->neg;
			for (AtomId b : r->head)
				if (b != h) others.push_back(b);
			std::sort(others.begin(), others.end());
			for (AtomId b : others) {
				Rule c;
				c.pos.push_back(tok);
				c.pos.push_back(b);
				out.add_rule(std::move(c));
			}
		}
	}
	return out;
}

// --- tightness ------------------------------------------------------------------

std::vector<std::vector<AtomId>> dependency_graph(const Program& p) {
	std::vector<std::set<AtomId>> succ(static_cast<size_t>(p.atom_count()));
	for (const Rule& r : p.rules)
		for (AtomId a : r.pos)
			for (AtomId b : r.head) succ[size_t(a)].insert(b);
	std::vector<std::vector<AtomId>> out(succ.size());
	for (size_t i = 0; i < succ.size(); ++i) out[i].assign(succ[i].begin(), succ[i].end());
	return out;
}

bool is_tight(const Program& p) {
	auto g = dependency_graph(p);
	int n = int(g.size());
	std::vector<int> state(size_t(n), 0); // 0 unseen, 1 on stack, 2 done
	std::vector<std::pair<int, size_t>> stack;
	for (int s = 0; s < n; ++s) {
		if (state[size_t(s)]) continue;
		stack.push_back({s, 0});
		state[size_t(s)] = 1;
		while (!stack.empty()) {
			auto& [v, i] = stack.back();
			if (i < g[size_t(v)].size()) {
				int w = g[size_t(v)][i++];
				if (state[size_t(w)] == 1) return false;
				if (state[size_t(w)] == 0) {
					state[size_t(w)] = 1;
					stack.push_back({w, 0});
				}
			} else {
				state[size_t(v)] = 2;
				stack.pop_back();
			}
		}
	}
	return true;
}

namespace {

// All models of p over its atom table, as bitmasks.
std::vector<std::uint64_t> all_models(const Program& p) {
	int n = p.atom_count();
	if (n > 30) throw ResourceError("model enumeration over " + std::to_string(n) + " atoms");
	struct M { std::uint64_t head, pos, neg; };
	std::vector<M> rules;
	for (const Rule& r : p.rules) {
		M m{0, 0, 0};
		for (AtomId a : r.head) m.head |= 1ull << a;
		for (AtomId a : r.pos) m.pos |= 1ull << a;
		for (AtomId a : r.neg) m.neg |= 1ull << a;
		rules.push_back(m);
	}
	std::vector<std::uint64_t> out;
	std::uint64_t end = n == 64 ? 0 : (1ull << n);
	for (std::uint64_t I = 0; I < end; ++I) {
		bool ok = true;
		for (const M& m : rules) {
			if (((m.head | m.neg) & I) == 0 && (m.pos & ~I) == 0) { ok = false; break; }
		}
		if (ok) out.push_back(I);
	}
	return out;
}

} // namespace

Ternary is_fully_tight(const Program& p, int atom_cap) {
	if (!is_tight(p)) throw PreconditionError("is_fully_tight: program is not tight");
	Program comp = completion(p, true);
	if (comp.atom_count() > atom_cap) return Ternary::Unverifiable;

	int n = p.atom_count();
	std::uint64_t proj = n == 64 ? ~0ull : ((1ull << n) - 1);

	std::vector<std::uint64_t> models_p = all_models(p);
	std::vector<std::uint64_t> models_c = all_models(comp);

	// Projection must be a bijection between models of C(p) and models of p.
	std::map<std::uint64_t, int> count;
	for (std::uint64_t m : models_p) count[m] = 0;
	for (std::uint64_t mc : models_c) {
		auto it = count.find(mc & proj);
		if (it == count.end()) return Ternary::False; // cannot happen: C(p) contains p
		it->second++;
	}
	for (auto& [m, c] : count)
		if (c != 1) return Ternary::False;
	return Ternary::True;
}

} // namespace aspstruct
