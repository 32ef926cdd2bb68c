#include "aspstruct/structparams.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace aspstruct {

// --- vertex cover ------------------------------------------------------------

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// Cover existence on an explicit edge list with an inclusion budget.
bool vc_branch(EdgeList edges, int n, int k) {
	std::vector<int> deg(size_t(n), 0);
	while (true) {
		if (edges.empty()) return true;
		if (k <= 0) return false;
		std::fill(deg.begin(), deg.end(), 0);
		for (auto [u, v] : edges) {
			deg[size_t(u)]++;
			deg[size_t(v)]++;
		}
		// force vertices of degree > k
		int forced = -1;
		for (int v = 0; v < n; ++v)
			if (deg[size_t(v)] > k) { forced = v; break; }
		// degree-1: take the neighbor
		if (forced < 0) {
			for (auto [u, v] : edges) {
				if (deg[size_t(u)] == 1) { forced = v; break; }
				if (deg[size_t(v)] == 1) { forced = u; break; }
			}
		}
		if (forced >= 0) {
			EdgeList rest;
			for (auto e : edges)
				if (e.first != forced && e.second != forced) rest.push_back(e);
			edges.swap(rest);
			--k;
			continue;
		}
		break;
	}
	// branch on a max-degree vertex
	int best = -1;
	for (auto [u, v] : edges) {
		if (best < 0 || deg[size_t(u)] > deg[size_t(best)]) best = u;
		if (deg[size_t(v)] > deg[size_t(best)]) best = v;
	}
	std::vector<int> nbrs;
	for (auto [u, v] : edges) {
		if (u == best) nbrs.push_back(v);
		if (v == best) nbrs.push_back(u);
	}
	{
		EdgeList rest;
		for (auto e : edges)
			if (e.first != best && e.second != best) rest.push_back(e);
		if (vc_branch(std::move(rest), n, k - 1)) return true;
	}
	if (int(nbrs.size()) > k) return false;
	EdgeList rest;
	std::set<int> ns(nbrs.begin(), nbrs.end());
	for (auto e : edges)
		if (!ns.count(e.first) && !ns.count(e.second)) rest.push_back(e);
	return vc_branch(std::move(rest), n, k - int(ns.size()));
}

// Min cover size given vertices already included / excluded. Excluded
// vertices force their neighbors in. Returns nullopt when infeasible.
std::optional<int> vc_min_size(const Graph& g, std::set<int> in, std::set<int> out) {
	// propagate exclusions
	bool changed = true;
	while (changed) {
		changed = false;
		for (auto [u, v] : g.edges) {
			bool uo = out.count(u), vo = out.count(v);
			if (uo && vo) return std::nullopt;
			if (uo && !in.count(v)) { in.insert(v); changed = true; }
			if (vo && !in.count(u)) { in.insert(u); changed = true; }
		}
	}
	EdgeList rem;
	for (auto [u, v] : g.edges)
		if (!in.count(u) && !in.count(v)) rem.push_back({u, v});
	for (int k = 0; k <= g.n(); ++k)
		if (vc_branch(rem, g.n(), k)) return int(in.size()) + k;
	return std::nullopt;
}

} // namespace

std::optional<VertexCover> min_vertex_cover(const Graph& g, std::optional<int> budget) {
	auto base = vc_min_size(g, {}, {});
	if (!base) return std::nullopt;
	int kstar = *base;
	if (budget && kstar > *budget) return std::nullopt;

	// lexicographically least witness of size kstar
	std::set<int> in, out;
	for (int v = 0; v < g.n() && int(in.size()) < kstar; ++v) {
		auto with_v = in;
		with_v.insert(v);
		auto sz = vc_min_size(g, with_v, out);
		if (sz && *sz == kstar) {
			in = std::move(with_v);
		} else {
			out.insert(v);
			if (!vc_min_size(g, in, out)) { out.erase(v); in.insert(v); }
		}
	}
	VertexCover vc;
	vc.vertices.assign(in.begin(), in.end());
	return vc;
}

bool verify_vertex_cover(const Graph& g, const std::vector<int>& cover) {
	std::set<int> s(cover.begin(), cover.end());
	for (auto [u, v] : g.edges)
		if (!s.count(u) && !s.count(v)) return false;
	return true;
}

// --- feedback vertex set ----------------------------------------------------------

namespace {

// Shortest cycle in g restricted to alive vertices; empty when acyclic.
std::vector<int> shortest_cycle(const Graph& g, const std::vector<char>& alive) {
	auto adj = g.adjacency();
	int n = g.n();
	std::vector<int> best;
	for (int s = 0; s < n; ++s) {
		if (!alive[size_t(s)]) continue;
		// BFS tree from s; first cross edge closes a cycle through s-ish region
		std::vector<int> dist(size_t(n), -1), par(size_t(n), -1);
		std::deque<int> q{s};
		dist[size_t(s)] = 0;
		while (!q.empty()) {
			int v = q.front();
			q.pop_front();
			for (int w : adj[size_t(v)]) {
				if (!alive[size_t(w)]) continue;
				if (dist[size_t(w)] < 0) {
					dist[size_t(w)] = dist[size_t(v)] + 1;
					par[size_t(w)] = v;
					q.push_back(w);
				} else if (w != par[size_t(v)] && v < w) {
					// cycle: path(v) + path(w) + edge
					std::vector<int> pv, pw;
					for (int x = v; x >= 0; x = par[size_t(x)]) pv.push_back(x);
					for (int x = w; x >= 0; x = par[size_t(x)]) pw.push_back(x);
					std::set<int> onv(pv.begin(), pv.end());
					int meet = -1;
					for (int x : pw)
						if (onv.count(x)) { meet = x; break; }
					std::vector<int> cyc;
					for (int x : pv) {
						cyc.push_back(x);
						if (x == meet) break;
					}
					std::vector<int> half;
					for (int x : pw) {
						if (x == meet) break;
						half.push_back(x);
					}
					std::reverse(half.begin(), half.end());
					for (int x : half) cyc.push_back(x);
					if (best.empty() || cyc.size() < best.size()) best = cyc;
				}
			}
		}
	}
	return best;
}

bool fvs_exists(const Graph& g, std::vector<char> alive, const std::vector<char>& forbidden, int k) {
	// trim degree <= 1 repeatedly
	auto adj = g.adjacency();
	bool changed = true;
	std::vector<int> deg(size_t(g.n()), 0);
	while (changed) {
		changed = false;
		std::fill(deg.begin(), deg.end(), 0);
		for (auto [u, v] : g.edges)
			if (alive[size_t(u)] && alive[size_t(v)]) {
				deg[size_t(u)]++;
				deg[size_t(v)]++;
			}
		for (int v = 0; v < g.n(); ++v)
			if (alive[size_t(v)] && deg[size_t(v)] <= 1) {
				alive[size_t(v)] = 0;
				changed = true;
			}
	}
	auto cyc = shortest_cycle(g, alive);
	if (cyc.empty()) return true;
	if (k == 0) return false;
	for (int v : cyc) {
		if (forbidden[size_t(v)]) continue;
		auto next = alive;
		next[size_t(v)] = 0;
		if (fvs_exists(g, std::move(next), forbidden, k - 1)) return true;
	}
	return false;
}

int fvs_min_size(const Graph& g, const std::vector<char>& alive, const std::vector<char>& forbidden) {
	for (int k = 0; k <= g.n(); ++k)
		if (fvs_exists(g, alive, forbidden, k)) return k;
	return -1; // unreachable: deleting everything is acyclic unless forbidden blocks
}

} // namespace

FeedbackVertexSet min_fvs(const Graph& g) {
	int n = g.n();
	std::vector<char> alive(size_t(n), 1), forbidden(size_t(n), 0);
	int kstar = fvs_min_size(g, alive, forbidden);
	if (kstar < 0) throw VerificationError("min_fvs: no feedback vertex set found");

	FeedbackVertexSet out;
	int used = 0;
	for (int v = 0; v < n && used < kstar; ++v) {
		auto with_v = alive;
		with_v[size_t(v)] = 0;
		int rest = fvs_min_size(g, with_v, forbidden);
		if (rest >= 0 && used + 1 + rest == kstar) {
			alive = std::move(with_v);
			out.vertices.push_back(v);
			++used;
		} else {
			forbidden[size_t(v)] = 1;
		}
	}
	return out;
}

bool verify_fvs(const Graph& g, const std::vector<int>& s) {
	std::vector<int> keep(size_t(g.n()), 1);
	for (int v : s) keep[size_t(v)] = 0;
	return g.induced(keep).is_acyclic();
}

bool verify_sparse_pairs(const Program& p, const std::vector<int>& s) {
	std::set<int> in(s.begin(), s.end());
	int n = p.atom_count();
	std::map<std::pair<int, int>, int> shared;
	for (const Rule& r : p.rules) {
		auto atoms = r.atoms_sorted();
		for (size_t i = 0; i < atoms.size(); ++i)
			for (size_t j = i + 1; j < atoms.size(); ++j) {
				if (atoms[i] >= n || atoms[j] >= n) continue;
				if (in.count(atoms[i]) || in.count(atoms[j])) continue;
				if (++shared[{atoms[i], atoms[j]}] > 1) return false;
			}
	}
	return true;
}

FeedbackVertexSet sparsify_fvs(const Program& p, const Graph& g, const FeedbackVertexSet& s) {
	if (!verify_fvs(g, s.vertices))
		throw PreconditionError("sparsify_fvs: input is not a feedback vertex set");
	std::set<int> in(s.vertices.begin(), s.vertices.end());
	int n = p.atom_count();

	while (true) {
		// violating atom pairs: co-occur in two or more rules, both outside
		std::map<std::pair<int, int>, int> shared;
		for (const Rule& r : p.rules) {
			auto atoms = r.atoms_sorted();
			for (size_t i = 0; i < atoms.size(); ++i)
				for (size_t j = i + 1; j < atoms.size(); ++j) {
					if (atoms[i] >= n || atoms[j] >= n) continue;
					if (in.count(atoms[i]) || in.count(atoms[j])) continue;
					shared[{atoms[i], atoms[j]}]++;
				}
		}
		std::vector<int> cover_count(size_t(n), 0);
		int violations = 0;
		for (auto& [pair, cnt] : shared)
			if (cnt > 1) {
				++violations;
				cover_count[size_t(pair.first)]++;
				cover_count[size_t(pair.second)]++;
			}
		if (!violations) break;
		int pick = int(std::max_element(cover_count.begin(), cover_count.end()) - cover_count.begin());
		in.insert(pick);
	}
	FeedbackVertexSet out;
	out.vertices.assign(in.begin(), in.end());
	out.sparse = true;
	return out;
}

std::optional<std::vector<int>> min_sparse_fvs(const Program& p, const Graph& g, int vertex_cap) {
	int n = g.n();
	if (n > vertex_cap)
		throw ResourceError("min_sparse_fvs: exact search over " + std::to_string(n) + " vertices");
	for (int k = 0; k <= n; ++k) {
		// subsets of size k in lexicographic order
		std::vector<int> idx(static_cast<size_t>(k));
		std::iota(idx.begin(), idx.end(), 0);
		while (true) {
			std::vector<int> s(idx.begin(), idx.end());
			if (verify_fvs(g, s) && verify_sparse_pairs(p, s)) return s;
			int i = k - 1;
			while (i >= 0 && idx[size_t(i)] == n - k + i) --i;
			if (i < 0) break;
			idx[size_t(i)]++;
			for (int j = i + 1; j < k; ++j) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
		}
		if (k == 0 && n == 0) break;
	}
	return std::nullopt;
}

// --- tree decompositions -------------------------------------------------------------

int TreeDecomposition::width() const {
	int w = 0;
	for (const auto& b : bags) w = std::max(w, int(b.size()));
	return w - 1;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
	std::vector<std::vector<int>> ch(bags.size());
	for (size_t i = 0; i < parent.size(); ++i)
		if (parent[i] >= 0) ch[size_t(parent[i])].push_back(int(i));
	return ch;
}

namespace {

// TD from an elimination order: bag(v) = {v} + neighbors in the fill graph
// at elimination time; parent = node of the earliest-eliminated bag member.
TreeDecomposition td_from_order(const Graph& g, const std::vector<int>& order) {
	int n = g.n();
	std::vector<std::set<int>> adj(static_cast<size_t>(n));
	for (auto [u, v] : g.edges) {
		adj[size_t(u)].insert(v);
		adj[size_t(v)].insert(u);
	}
	std::vector<int> pos(static_cast<size_t>(n));
	for (int i = 0; i < n; ++i) pos[size_t(order[size_t(i)])] = i;

	TreeDecomposition td;
	td.bags.resize(static_cast<size_t>(n));
	td.parent.assign(size_t(n), -1);
	std::vector<std::vector<int>> later(static_cast<size_t>(n)); // bag contents beyond v
	for (int i = 0; i < n; ++i) {
		int v = order[size_t(i)];
		std::vector<int> nb(adj[size_t(v)].begin(), adj[size_t(v)].end());
		later[size_t(i)] = nb;
		td.bags[size_t(i)] = nb;
		td.bags[size_t(i)].push_back(v);
		std::sort(td.bags[size_t(i)].begin(), td.bags[size_t(i)].end());
		for (size_t a = 0; a < nb.size(); ++a)
			for (size_t b = a + 1; b < nb.size(); ++b) {
				adj[size_t(nb[a])].insert(nb[b]);
				adj[size_t(nb[b])].insert(nb[a]);
			}
		for (int w : nb) adj[size_t(w)].erase(v);
		adj[size_t(v)].clear();
	}
	int prev_root = -1;
	for (int i = 0; i < n; ++i) {
		if (later[size_t(i)].empty()) {
			// component root: chain roots so T stays a tree
			if (prev_root >= 0) td.parent[size_t(prev_root)] = i;
			prev_root = i;
			continue;
		}
		int first = *std::min_element(later[size_t(i)].begin(), later[size_t(i)].end(),
		                              [&](int a, int b) { return pos[size_t(a)] < pos[size_t(b)]; });
		td.parent[size_t(i)] = pos[size_t(first)];
	}
	td.root = prev_root >= 0 ? prev_root : 0;
	if (n == 0) {
		td.bags = {{}};
		td.parent = {-1};
		td.root = 0;
	}
	return td;
}

std::vector<int> greedy_order(const Graph& g, bool min_fill) {
	int n = g.n();
	std::vector<std::set<int>> adj(static_cast<size_t>(n));
	for (auto [u, v] : g.edges) {
		adj[size_t(u)].insert(v);
		adj[size_t(v)].insert(u);
	}
	std::vector<char> done(size_t(n), 0);
	std::vector<int> order;
	for (int step = 0; step < n; ++step) {
		int best = -1;
		long best_score = 0;
		for (int v = 0; v < n; ++v) {
			if (done[size_t(v)]) continue;
			long score;
			if (min_fill) {
				long fill = 0;
				std::vector<int> nb(adj[size_t(v)].begin(), adj[size_t(v)].end());
				for (size_t a = 0; a < nb.size(); ++a)
					for (size_t b = a + 1; b < nb.size(); ++b)
						if (!adj[size_t(nb[a])].count(nb[b])) ++fill;
				score = fill;
			} else {
				score = long(adj[size_t(v)].size());
			}
			if (best < 0 || score < best_score) {
				best = v;
				best_score = score;
			}
		}
		order.push_back(best);
		done[size_t(best)] = 1;
		std::vector<int> nb(adj[size_t(best)].begin(), adj[size_t(best)].end());
		for (size_t a = 0; a < nb.size(); ++a)
			for (size_t b = a + 1; b < nb.size(); ++b) {
				adj[size_t(nb[a])].insert(nb[b]);
				adj[size_t(nb[b])].insert(nb[a]);
			}
		for (int w : nb) adj[size_t(w)].erase(best);
		adj[size_t(best)].clear();
	}
	return order;
}

// Exact treewidth via the elimination-order subset DP; n <= ~20.
std::vector<int> exact_order(const Graph& g) {
	int n = g.n();
	auto adj = g.adjacency();
	// q(S, v): forward degree of v when S is already eliminated
	auto q = [&](std::uint32_t S, int v) {
		std::uint32_t seen = 1u << v;
		std::vector<int> stack{v};
		int count = 0;
		while (!stack.empty()) {
			int x = stack.back();
			stack.pop_back();
			for (int w : adj[size_t(x)]) {
				if (seen & (1u << w)) continue;
				seen |= 1u << w;
				if (S & (1u << w)) stack.push_back(w); // pass through eliminated vertices
				else ++count;
			}
		}
		return count;
	};
	std::vector<int> f(size_t(1) << n, 0), choice(size_t(1) << n, -1);
	for (std::uint32_t S = 1; S < (1u << n); ++S) {
		int best = INT32_MAX, bv = -1;
		for (int v = 0; v < n; ++v) {
			if (!(S & (1u << v))) continue;
			std::uint32_t rest = S ^ (1u << v);
			int cost = std::max(f[rest], q(rest, v));
			if (cost < best) {
				best = cost;
				bv = v;
			}
		}
		f[S] = best;
		choice[S] = bv;
	}
	std::vector<int> order(static_cast<size_t>(n));
	std::uint32_t S = (n == 32 ? ~0u : ((1u << n) - 1));
	for (int i = n - 1; i >= 0; --i) {
		int v = choice[S];
		order[size_t(i)] = v;
		S ^= 1u << v;
	}
	return order;
}

} // namespace

TdResult tree_decomposition(const Graph& g, TdStrategy strategy, int exact_cap) {
	TdResult res;
	if (g.n() == 0) {
		res.td.bags = {{}};
		res.td.parent = {-1};
		res.td.root = 0;
		res.exact = true;
		return res;
	}
	std::vector<int> order;
	if (strategy == TdStrategy::Exact) {
		if (g.n() > exact_cap)
			throw ResourceError("exact tree decomposition over " + std::to_string(g.n()) + " vertices (cap " +
			                    std::to_string(exact_cap) + ")");
		order = exact_order(g);
		res.exact = true;
	} else {
		order = greedy_order(g, strategy == TdStrategy::MinFill);
	}
	res.td = td_from_order(g, order);
	return res;
}

bool verify_td(const Graph& g, const TreeDecomposition& td) {
	int n = g.n();
	if (td.bags.empty() || td.bags.size() != td.parent.size()) return false;
	// tree shape: exactly one root, parents acyclic
	int roots = 0;
	for (size_t i = 0; i < td.parent.size(); ++i) {
		if (td.parent[i] < 0) ++roots;
		else if (td.parent[i] >= int(td.bags.size())) return false;
	}
	if (roots != 1) return false;
	for (size_t i = 0; i < td.bags.size(); ++i) {
		int v = int(i), steps = 0;
		while (v >= 0) {
			v = td.parent[size_t(v)];
			if (++steps > int(td.bags.size())) return false; // parent cycle
		}
	}
	// (i) vertex coverage
	std::vector<char> covered(size_t(n), 0);
	for (const auto& b : td.bags)
		for (int v : b) {
			if (v < 0 || v >= n) return false;
			covered[size_t(v)] = 1;
		}
	for (int v = 0; v < n; ++v)
		if (!covered[size_t(v)]) return false;
	// (ii) edge coverage
	for (auto [u, v] : g.edges) {
		bool ok = false;
		for (const auto& b : td.bags)
			if (std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v)) {
				ok = true;
				break;
			}
		if (!ok) return false;
	}
	// (iii) connectedness of every vertex's bag set
	auto ch = td.children();
	for (int v = 0; v < n; ++v) {
		std::vector<int> nodes;
		for (size_t i = 0; i < td.bags.size(); ++i)
			if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) nodes.push_back(int(i));
		if (nodes.empty()) return false;
		std::set<int> want(nodes.begin(), nodes.end());
		std::set<int> seen{nodes[0]};
		std::vector<int> stack{nodes[0]};
		while (!stack.empty()) {
			int t = stack.back();
			stack.pop_back();
			std::vector<int> adj = ch[size_t(t)];
			if (td.parent[size_t(t)] >= 0) adj.push_back(td.parent[size_t(t)]);
			for (int u : adj)
				if (want.count(u) && !seen.count(u)) {
					seen.insert(u);
					stack.push_back(u);
				}
		}
		if (seen.size() != want.size()) return false;
	}
	return true;
}

// --- nice TDs ---------------------------------------------------------------------------

namespace {

struct NiceBuilder {
	NiceTd out;

	int add(std::vector<int> bag, int parent_hint = -2) {
		std::sort(bag.begin(), bag.end());
		out.bags.push_back(std::move(bag));
		out.parent.push_back(parent_hint);
		return int(out.bags.size()) - 1;
	}

	// chain of forget/introduce nodes transforming `from` into `to`;
	// returns the top node (bag == to), child linked under it.
	int transition(int below, const std::vector<int>& from, const std::vector<int>& to) {
		std::vector<int> cur = from;
		int top = below;
		for (int v : from)
			if (!std::binary_search(to.begin(), to.end(), v)) {
				cur.erase(std::find(cur.begin(), cur.end(), v));
				int node = add(cur);
				out.parent[size_t(top)] = node;
				top = node;
			}
		for (int v : to)
			if (!std::binary_search(from.begin(), from.end(), v)) {
				cur.push_back(v);
				int node = add(cur);
				out.parent[size_t(top)] = node;
				top = node;
			}
		return top;
	}

	// leaf chain from the empty bag up to `bag`
	int leaf_chain(const std::vector<int>& bag) {
		int top = add({});
		std::vector<int> cur;
		for (int v : bag) {
			cur.push_back(v);
			int node = add(cur);
			out.parent[size_t(top)] = node;
			top = node;
		}
		return top;
	}
};

int build_nice(const TreeDecomposition& td, const std::vector<std::vector<int>>& ch, int t, NiceBuilder& nb) {
	const auto& bag = td.bags[size_t(t)];
	const auto& kids = ch[size_t(t)];
	if (kids.empty()) return nb.leaf_chain(bag);
	std::vector<int> tops;
	for (int c : kids) {
		int sub = build_nice(td, ch, c, nb);
		tops.push_back(nb.transition(sub, td.bags[size_t(c)], bag));
	}
	int acc = tops[0];
	for (size_t i = 1; i < tops.size(); ++i) {
		int join = nb.add(bag);
		nb.out.parent[size_t(acc)] = join;
		nb.out.parent[size_t(tops[i])] = join;
		acc = join;
	}
	return acc;
}

} // namespace

NiceTd make_nice(const TreeDecomposition& td) {
	NiceBuilder nb;
	int top = build_nice(td, td.children(), td.root, nb);
	nb.out.parent[size_t(top)] = -1;
	nb.out.root = top;
	return nb.out;
}

bool verify_nice(const NiceTd& td) {
	auto ch = td.children();
	for (size_t t = 0; t < td.bags.size(); ++t) {
		const auto& kids = ch[t];
		if (kids.size() > 2) return false;
		if (kids.size() == 2) {
			if (td.bags[size_t(kids[0])] != td.bags[t] || td.bags[size_t(kids[1])] != td.bags[t]) return false;
		} else if (kids.size() == 1) {
			std::vector<int> diff;
			std::set_symmetric_difference(td.bags[t].begin(), td.bags[t].end(),
			                              td.bags[size_t(kids[0])].begin(), td.bags[size_t(kids[0])].end(),
			                              std::back_inserter(diff));
			if (diff.size() > 1) return false;
		}
	}
	return true;
}

NiceTd prune_nice(const NiceTd& td) {
	int n = td.node_count();
	std::vector<char> alive(size_t(n), 1);
	std::vector<int> parent = td.parent;
	int root = td.root;

	auto live_children = [&](int t) {
		std::vector<int> out;
		for (int c = 0; c < n; ++c)
			if (alive[size_t(c)] && c != t && parent[size_t(c)] == t) out.push_back(c);
		return out;
	};

	bool changed = true;
	while (changed) {
		changed = false;
		for (int t = 0; t < n; ++t) {
			if (!alive[size_t(t)]) continue;
			auto kids = live_children(t);
			if (kids.empty() && td.bags[size_t(t)].empty() && parent[size_t(t)] >= 0) {
				alive[size_t(t)] = 0;
				changed = true;
			} else if (kids.size() == 1 && td.bags[size_t(kids[0])] == td.bags[size_t(t)]) {
				// splice t out of the chain
				parent[size_t(kids[0])] = parent[size_t(t)];
				if (parent[size_t(t)] < 0) root = kids[0];
				alive[size_t(t)] = 0;
				changed = true;
			}
		}
	}
	NiceTd out;
	std::vector<int> remap(size_t(n), -1);
	for (int t = 0; t < n; ++t) {
		if (!alive[size_t(t)]) continue;
		remap[size_t(t)] = int(out.bags.size());
		out.bags.push_back(td.bags[size_t(t)]);
	}
	for (int t = 0; t < n; ++t) {
		if (!alive[size_t(t)]) continue;
		int p = parent[size_t(t)];
		out.parent.push_back(p < 0 ? -1 : remap[size_t(p)]);
	}
	out.root = remap[size_t(root)];
	return out;
}

// --- annotation -------------------------------------------------------------------------

namespace {

// Insert a duplicate of node t directly above it; returns the new node id.
int insert_duplicate_above(NiceTd& td, int t) {
	int d = int(td.bags.size());
	td.bags.push_back(td.bags[size_t(t)]);
	td.parent.push_back(td.parent[size_t(t)]);
	td.parent[size_t(t)] = d;
	if (td.parent[size_t(d)] < 0) td.root = d;
	return d;
}

} // namespace

AnnotatedTd annotate(const NiceTd& td, const Program& p) {
	AnnotatedTd a;
	a.td = td;
	a.atom_node.assign(size_t(p.atom_count()), -1);
	a.rule_node.assign(size_t(p.rule_count()), -1);
	std::vector<char> used(size_t(td.node_count()), 0);

	// greedy: reuse a free node with the largest suitable bag, duplicate one
	// only when every candidate is taken
	auto assign = [&](auto&& pred, const std::string& what) {
		int best_free = -1, best_any = -1;
		for (int t = 0; t < a.td.node_count(); ++t) {
			if (!pred(a.td.bags[size_t(t)])) continue;
			if (best_any < 0 || a.td.bags[size_t(t)].size() > a.td.bags[size_t(best_any)].size()) best_any = t;
			if (used[size_t(t)]) continue;
			if (best_free < 0 || a.td.bags[size_t(t)].size() > a.td.bags[size_t(best_free)].size())
				best_free = t;
		}
		if (best_any < 0) throw PreconditionError("annotate: " + what + " is covered by no bag");
		int t = best_free;
		if (t < 0) {
			t = insert_duplicate_above(a.td, best_any);
			used.push_back(0);
		}
		used[size_t(t)] = 1;
		return t;
	};

	for (int i = 0; i < p.rule_count(); ++i) {
		auto atoms = p.rules[size_t(i)].atoms_sorted();
		a.rule_node[size_t(i)] = assign(
		    [&](const std::vector<int>& bag) {
			    return std::includes(bag.begin(), bag.end(), atoms.begin(), atoms.end());
		    },
		    "rule " + p.rules[size_t(i)].label);
	}
	for (int v = 0; v < p.atom_count(); ++v) {
		a.atom_node[size_t(v)] = assign(
		    [&](const std::vector<int>& bag) { return std::binary_search(bag.begin(), bag.end(), v); },
		    "atom " + p.name(v));
	}
	return a;
}

bool verify_annotated(const AnnotatedTd& a, const Program& p) {
	std::set<int> targets;
	for (int v = 0; v < p.atom_count(); ++v) {
		int t = a.atom_node[size_t(v)];
		if (t < 0 || t >= a.td.node_count()) return false;
		if (!targets.insert(t).second) return false;
		const auto& bag = a.td.bags[size_t(t)];
		if (!std::binary_search(bag.begin(), bag.end(), v)) return false;
	}
	for (int i = 0; i < p.rule_count(); ++i) {
		int t = a.rule_node[size_t(i)];
		if (t < 0 || t >= a.td.node_count()) return false;
		if (!targets.insert(t).second) return false;
		const auto& bag = a.td.bags[size_t(t)];
		for (AtomId x : p.rules[size_t(i)].atoms_sorted())
			if (!std::binary_search(bag.begin(), bag.end(), x)) return false;
	}
	return true;
}

// --- path decompositions -------------------------------------------------------------------

int PathDecomposition::width() const {
	int w = 0;
	for (const auto& b : bags) w = std::max(w, int(b.size()));
	return w - 1;
}

namespace {

// Bags over a vertex order: X_i = {v_i} + {earlier vertices with a later
// neighbor}; a valid PD whose width is the order's vertex separation.
PathDecomposition pd_from_order(const Graph& g, const std::vector<int>& order) {
	int n = g.n();
	std::vector<int> pos(static_cast<size_t>(n));
	for (int i = 0; i < n; ++i) pos[size_t(order[size_t(i)])] = i;
	auto adj = g.adjacency();
	PathDecomposition pd;
	for (int i = 0; i < n; ++i) {
		std::vector<int> bag{order[size_t(i)]};
		for (int j = 0; j < i; ++j) {
			int u = order[size_t(j)];
			for (int w : adj[size_t(u)])
				if (pos[size_t(w)] >= i) {
					bag.push_back(u);
					break;
				}
		}
		std::sort(bag.begin(), bag.end());
		pd.bags.push_back(std::move(bag));
	}
	if (pd.bags.empty()) pd.bags = {{}};
	return pd;
}

// Exact vertex separation DP.
std::vector<int> exact_vs_order(const Graph& g) {
	int n = g.n();
	auto adj = g.adjacency();
	auto boundary = [&](std::uint32_t S) {
		int b = 0;
		for (int v = 0; v < n; ++v) {
			if (!(S & (1u << v))) continue;
			for (int w : adj[size_t(v)])
				if (!(S & (1u << w))) {
					++b;
					break;
				}
		}
		return b;
	};
	std::vector<int> f(size_t(1) << n, INT32_MAX), choice(size_t(1) << n, -1);
	f[0] = 0;
	for (std::uint32_t S = 1; S < (1u << n); ++S) {
		int b = boundary(S);
		for (int v = 0; v < n; ++v) {
			if (!(S & (1u << v))) continue;
			int prev = f[S ^ (1u << v)];
			if (prev == INT32_MAX) continue;
			int cost = std::max(prev, b);
			if (cost < f[S]) {
				f[S] = cost;
				choice[S] = v;
			}
		}
	}
	std::vector<int> order(static_cast<size_t>(n));
	std::uint32_t S = (n == 32 ? ~0u : ((1u << n) - 1));
	for (int i = n - 1; i >= 0; --i) {
		order[size_t(i)] = choice[S];
		S ^= 1u << choice[S];
	}
	return order;
}

std::vector<int> bfs_order(const Graph& g) {
	int n = g.n();
	auto adj = g.adjacency();
	std::vector<char> seen(size_t(n), 0);
	std::vector<int> order;
	for (int s = 0; s < n; ++s) {
		if (seen[size_t(s)]) continue;
		std::deque<int> q{s};
		seen[size_t(s)] = 1;
		while (!q.empty()) {
			int v = q.front();
			q.pop_front();
			order.push_back(v);
			for (int w : adj[size_t(v)])
				if (!seen[size_t(w)]) {
					seen[size_t(w)] = 1;
					q.push_back(w);
				}
		}
	}
	return order;
}

} // namespace

PdResult path_decomposition(const Graph& g, TdStrategy strategy, int exact_cap) {
	PdResult res;
	if (g.n() == 0) {
		res.pd.bags = {{}};
		res.exact = true;
		res.two_bag_restricted = true;
		return res;
	}
	std::vector<int> order;
	if (strategy == TdStrategy::Exact) {
		if (g.n() > exact_cap)
			throw ResourceError("exact path decomposition over " + std::to_string(g.n()) + " vertices (cap " +
			                    std::to_string(exact_cap) + ")");
		order = exact_vs_order(g);
		res.exact = true;
	} else {
		order = bfs_order(g);
	}
	res.pd = pd_from_order(g, order);
	res.two_bag_restricted = pd_two_bag_restricted(res.pd);
	return res;
}

TreeDecomposition pd_to_td(const PathDecomposition& pd) {
	TreeDecomposition td;
	td.bags = pd.bags;
	td.parent.assign(pd.bags.size(), -1);
	for (size_t i = 0; i + 1 < pd.bags.size(); ++i) td.parent[i] = int(i) + 1;
	td.root = int(pd.bags.size()) - 1;
	return td;
}

bool verify_pd(const Graph& g, const PathDecomposition& pd) {
	return verify_td(g, pd_to_td(pd));
}

bool pd_two_bag_restricted(const PathDecomposition& pd) {
	std::map<int, int> count;
	for (const auto& b : pd.bags)
		for (int v : b) count[v]++;
	for (auto& [v, c] : count)
		if (c > 2) return false;
	return true;
}

// --- linear layouts ----------------------------------------------------------------------

LinearLayout bandwidth_layout_from_pd(const Graph& g, const PathDecomposition& pd) {
	if (!pd_two_bag_restricted(pd))
		throw PreconditionError("bandwidth_layout_from_pd: some vertex occurs in more than two bags");
	LinearLayout f;
	f.position.assign(size_t(g.n()), 0);
	int next = 1;
	for (size_t i = 0; i < pd.bags.size(); ++i) {
		std::vector<int> fresh;
		for (int v : pd.bags[i])
			if (f.position[size_t(v)] == 0) fresh.push_back(v);
		// vertices shared with the next bag go last
		std::stable_partition(fresh.begin(), fresh.end(), [&](int v) {
			if (i + 1 >= pd.bags.size()) return true;
			const auto& nb = pd.bags[i + 1];
			return !std::binary_search(nb.begin(), nb.end(), v);
		});
		for (int v : fresh) f.position[size_t(v)] = next++;
	}
	for (int v = 0; v < g.n(); ++v)
		if (f.position[size_t(v)] == 0) f.position[size_t(v)] = next++;
	return f;
}

namespace {

void check_bijective(const Graph& g, const LinearLayout& f) {
	if (int(f.position.size()) != g.n()) throw PreconditionError("layout: wrong size");
	std::vector<char> seen(size_t(g.n()) + 1, 0);
	for (int v = 0; v < g.n(); ++v) {
		int p = f.position[size_t(v)];
		if (p < 1 || p > g.n() || seen[size_t(p)]) throw PreconditionError("layout: not a bijection");
		seen[size_t(p)] = 1;
	}
}

} // namespace

int layout_bandwidth(const Graph& g, const LinearLayout& f) {
	check_bijective(g, f);
	int bw = 0;
	for (auto [u, v] : g.edges) bw = std::max(bw, std::abs(f.position[size_t(u)] - f.position[size_t(v)]));
	return bw;
}

int layout_cutwidth(const Graph& g, const LinearLayout& f) {
	check_bijective(g, f);
	int n = g.n();
	std::vector<int> delta(size_t(n) + 2, 0);
	for (auto [u, v] : g.edges) {
		int a = std::min(f.position[size_t(u)], f.position[size_t(v)]);
		int b = std::max(f.position[size_t(u)], f.position[size_t(v)]);
		delta[size_t(a)]++;
		delta[size_t(b)]--;
	}
	int cw = 0, cur = 0;
	for (int i = 1; i < n; ++i) {
		cur += delta[size_t(i)];
		cw = std::max(cw, cur);
	}
	return cw;
}

namespace {

LinearLayout best_layout(const Graph& g, int exact_cap, int (*measure)(const Graph&, const LinearLayout&)) {
	int n = g.n();
	if (n > exact_cap)
		throw ResourceError("exact layout search over " + std::to_string(n) + " vertices (cap " +
		                    std::to_string(exact_cap) + ")");
	std::vector<int> perm(static_cast<size_t>(n));
	std::iota(perm.begin(), perm.end(), 0);
	LinearLayout best;
	int best_val = INT32_MAX;
	do {
		LinearLayout f;
		f.position.assign(size_t(n), 0);
		for (int i = 0; i < n; ++i) f.position[size_t(perm[size_t(i)])] = i + 1;
		int val = measure(g, f);
		if (val < best_val) {
			best_val = val;
			best = f;
		}
	} while (std::next_permutation(perm.begin(), perm.end()));
	if (n == 0) best.position = {};
	return best;
}

} // namespace

LinearLayout best_bandwidth_layout(const Graph& g, int exact_cap) {
	return best_layout(g, exact_cap, layout_bandwidth);
}

LinearLayout best_cutwidth_layout(const Graph& g, int exact_cap) {
	return best_layout(g, exact_cap, layout_cutwidth);
}

// --- treedepth -----------------------------------------------------------------------------

namespace {

void build_elimination_tree(const std::vector<std::vector<int>>& adj, std::vector<int>& component,
                            int attach_to, std::vector<int>& parent) {
	if (component.empty()) return;
	std::set<int> in(component.begin(), component.end());
	// centroid: minimize the largest remaining part, lowest id on ties
	int best = -1, best_sz = INT32_MAX;
	for (int c : component) {
		std::set<int> seen{c};
		int largest = 0;
		for (int s : component) {
			if (seen.count(s)) continue;
			int size = 0;
			std::vector<int> stack{s};
			seen.insert(s);
			while (!stack.empty()) {
				int v = stack.back();
				stack.pop_back();
				++size;
				for (int w : adj[size_t(v)])
					if (in.count(w) && !seen.count(w)) {
						seen.insert(w);
						stack.push_back(w);
					}
			}
			largest = std::max(largest, size);
		}
		if (largest < best_sz) {
			best_sz = largest;
			best = c;
		}
	}
	parent[size_t(best)] = attach_to;
	in.erase(best);
	std::set<int> seen;
	for (int s : component) {
		if (s == best || seen.count(s)) continue;
		std::vector<int> part, stack{s};
		seen.insert(s);
		while (!stack.empty()) {
			int v = stack.back();
			stack.pop_back();
			part.push_back(v);
			for (int w : adj[size_t(v)])
				if (in.count(w) && !seen.count(w)) {
					seen.insert(w);
					stack.push_back(w);
				}
		}
		build_elimination_tree(adj, part, best, parent);
	}
}

} // namespace

TremauxTree treedepth_witness_from_fvs(const Graph& g, const std::vector<int>& s) {
	int n = g.n();
	std::vector<int> keep(size_t(n), 1);
	for (int v : s) keep[size_t(v)] = 0;
	Graph rest = g.induced(keep);
	if (!rest.is_acyclic())
		throw PreconditionError("treedepth_witness_from_fvs: G - S is not a forest");

	TremauxTree t;
	t.parent.assign(size_t(n), -1);
	std::vector<int> chain(s.begin(), s.end());
	std::sort(chain.begin(), chain.end());
	for (size_t i = 1; i < chain.size(); ++i) t.parent[size_t(chain[i])] = chain[i - 1];
	int bottom = chain.empty() ? -1 : chain.back();

	auto adj = rest.adjacency();
	std::set<int> removed(chain.begin(), chain.end());
	std::vector<char> seen(size_t(n), 0);
	for (int v : chain) seen[size_t(v)] = 1;
	for (int st = 0; st < n; ++st) {
		if (seen[size_t(st)]) continue;
		std::vector<int> comp, stack{st};
		seen[size_t(st)] = 1;
		while (!stack.empty()) {
			int v = stack.back();
			stack.pop_back();
			comp.push_back(v);
			for (int w : adj[size_t(v)])
				if (!seen[size_t(w)]) {
					seen[size_t(w)] = 1;
					stack.push_back(w);
				}
		}
		std::sort(comp.begin(), comp.end());
		build_elimination_tree(adj, comp, bottom, t.parent);
	}
	for (int v = 0; v < n; ++v)
		if (t.parent[size_t(v)] < 0) t.roots.push_back(v);
	return t;
}

int verify_tremaux(const Graph& g, const TremauxTree& t) {
	int n = g.n();
	if (int(t.parent.size()) != n) throw PreconditionError("verify_tremaux: tree does not span the graph");
	std::vector<int> depth(size_t(n), -1);
	for (int v = 0; v < n; ++v) {
		// climb with cycle guard
		std::vector<int> path;
		int x = v;
		while (x >= 0 && depth[size_t(x)] < 0) {
			path.push_back(x);
			x = t.parent[size_t(x)];
			if (int(path.size()) > n) throw PreconditionError("verify_tremaux: parent structure has a cycle");
		}
		int base = x < 0 ? -1 : depth[size_t(x)];
		for (auto it = path.rbegin(); it != path.rend(); ++it) depth[size_t(*it)] = ++base;
	}
	auto is_ancestor = [&](int a, int d) {
		while (d >= 0) {
			if (d == a) return true;
			d = t.parent[size_t(d)];
		}
		return false;
	};
	for (auto [u, v] : g.edges)
		if (!is_ancestor(u, v) && !is_ancestor(v, u))
			throw VerificationError("verify_tremaux: edge {" + std::to_string(u) + "," + std::to_string(v) +
			                        "} is not ancestor-descendant");
	int h = 0;
	for (int v = 0; v < n; ++v) h = std::max(h, depth[size_t(v)]);
	return h;
}

// --- almost paths ------------------------------------------------------------------------------

AlmostPathsReport check_almost_paths(const Graph& g, const std::vector<int>& s) {
	AlmostPathsReport rep;
	int n = g.n();
	std::vector<int> keep(size_t(n), 1);
	for (int v : s) keep[size_t(v)] = 0;
	Graph rest = g.induced(keep);
	auto adj = rest.adjacency();

	std::vector<char> seen(size_t(n), 0);
	for (int v : s) seen[size_t(v)] = 1;
	rep.ok = true;
	for (int st = 0; st < n; ++st) {
		if (seen[size_t(st)]) continue;
		std::vector<int> comp, stack{st};
		seen[size_t(st)] = 1;
		while (!stack.empty()) {
			int v = stack.back();
			stack.pop_back();
			comp.push_back(v);
			for (int w : adj[size_t(v)])
				if (!seen[size_t(w)]) {
					seen[size_t(w)] = 1;
					stack.push_back(w);
				}
		}
		// must be a tree
		int edge_count = 0;
		for (int v : comp) edge_count += int(adj[size_t(v)].size());
		edge_count /= 2;
		if (edge_count != int(comp.size()) - 1) {
			rep.ok = false;
			rep.detail = "component containing vertex " + std::to_string(st) + " has a cycle";
			return rep;
		}
		// diameter path via double BFS
		auto far = [&](int from) {
			std::map<int, int> dist;
			std::map<int, int> par;
			dist[from] = 0;
			par[from] = -1;
			std::deque<int> q{from};
			int best = from;
			while (!q.empty()) {
				int v = q.front();
				q.pop_front();
				if (dist[v] > dist[best]) best = v;
				for (int w : adj[size_t(v)])
					if (!dist.count(w)) {
						dist[w] = dist[v] + 1;
						par[w] = v;
						q.push_back(w);
					}
			}
			return std::make_pair(best, par);
		};
		auto [a, par1] = far(comp[0]);
		(void)par1;
		auto [b, par2] = far(a);
		std::vector<int> spine;
		for (int x = b; x >= 0; x = par2[x]) spine.push_back(x);
		std::set<int> on(spine.begin(), spine.end());
		std::map<int, int> pendants;
		for (int v : comp) {
			if (on.count(v)) continue;
			if (adj[size_t(v)].size() != 1) {
				rep.ok = false;
				rep.detail = "vertex " + std::to_string(v) + " is neither on a path nor a degree-1 pendant";
				return rep;
			}
			int nb = adj[size_t(v)][0];
			if (!on.count(nb) || ++pendants[nb] > 1) {
				rep.ok = false;
				rep.detail = "vertex " + std::to_string(nb) + " carries more than one pendant";
				return rep;
			}
		}
		rep.longest_path = std::max(rep.longest_path, int(spine.size()) - 1);
	}
	return rep;
}

// --- PACE serialization -----------------------------------------------------------------------

std::string td_to_pace(const TreeDecomposition& td, int n_vertices) {
	std::ostringstream out;
	out << "s td " << td.bags.size() << " " << (td.width() + 1) << " " << n_vertices << "\n";
	for (size_t i = 0; i < td.bags.size(); ++i) {
		out << "b " << (i + 1);
		for (int v : td.bags[i]) out << " " << (v + 1);
		out << "\n";
	}
	for (size_t i = 0; i < td.parent.size(); ++i)
		if (td.parent[i] >= 0) out << (i + 1) << " " << (td.parent[i] + 1) << "\n";
	return out.str();
}

TreeDecomposition td_from_pace(const std::string& text) {
	TreeDecomposition td;
	std::istringstream in(text);
	std::string line;
	int bag_count = -1;
	std::vector<std::pair<int, int>> tree_edges;
	while (std::getline(in, line)) {
		if (line.empty() || line[0] == 'c') continue;
		std::istringstream ls(line);
		if (line[0] == 's') {
			std::string s, tdword;
			int width_plus, n;
			ls >> s >> tdword >> bag_count >> width_plus >> n;
			td.bags.assign(size_t(bag_count), {});
		} else if (line[0] == 'b') {
			char b;
			int id;
			ls >> b >> id;
			if (bag_count < 0 || id < 1 || id > bag_count) throw PreconditionError("pace: bad bag id");
			int v;
			while (ls >> v) td.bags[size_t(id - 1)].push_back(v - 1);
			std::sort(td.bags[size_t(id - 1)].begin(), td.bags[size_t(id - 1)].end());
		} else {
			int u, v;
			std::istringstream es(line);
			if (es >> u >> v) tree_edges.push_back({u - 1, v - 1});
		}
	}
	if (bag_count < 0) throw PreconditionError("pace: missing s-line");
	// root at bag 0, orient edges by BFS
	td.parent.assign(size_t(bag_count), -1);
	std::vector<std::vector<int>> adj(static_cast<size_t>(bag_count));
	for (auto [u, v] : tree_edges) {
		adj[size_t(u)].push_back(v);
		adj[size_t(v)].push_back(u);
	}
	std::vector<char> seen(size_t(bag_count), 0);
	std::deque<int> q{0};
	seen[0] = 1;
	td.root = 0;
	while (!q.empty()) {
		int v = q.front();
		q.pop_front();
		for (int w : adj[size_t(v)])
			if (!seen[size_t(w)]) {
				seen[size_t(w)] = 1;
				td.parent[size_t(w)] = v;
				q.push_back(w);
			}
	}
	return td;
}

} // namespace aspstruct
