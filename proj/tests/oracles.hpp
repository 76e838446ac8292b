#pragma once
// Reference implementations for the tests. Each one follows the definitions
// literally (enumerate, then check) and shares no search code with the
// library, so agreement between the two means something.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mb/hypergraph.hpp"

namespace oracle {

using mb::Edge;
using mb::MarkedHypergraph;
using mb::VertexId;
using mb::VertexSet;

using Seq = std::vector<Edge>;

// Short human-readable form for failure messages.
inline std::string describe(const MarkedHypergraph& h) {
    std::string s = "V{";
    for (VertexId v : h.vertices()) s += std::to_string(v) + (h.marked().contains(v) ? "* " : " ");
    s += "} E";
    for (const Edge& e : h.edges()) {
        s += "{";
        for (VertexId v : e) s += std::to_string(v) + (v == e[e.size() - 1] ? "" : ",");
        s += "}";
    }
    return s;
}

inline VertexSet vset(const Edge& e) {
    VertexSet s;
    for (VertexId v : e) s.insert(v);
    return s;
}

inline VertexSet vertices_of(const Seq& es) {
    VertexSet s;
    for (const Edge& e : es) s |= vset(e);
    return s;
}

// ab-path: a, e1, ..., eL, b with 3-edges; L = 0 iff a = b; consecutive items
// meet; consecutive edges share exactly one vertex; items two or more apart
// share nothing.
inline bool is_path(VertexId a, const Seq& es, VertexId b) {
    if (es.empty()) return a == b;
    std::vector<VertexSet> items;
    items.push_back(VertexSet{a});
    for (const Edge& e : es) {
        if (e.size() != 3) return false;
        items.push_back(vset(e));
    }
    items.push_back(VertexSet{b});
    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        VertexSet common = items[i] & items[i + 1];
        if (common.empty()) return false;
        bool both_edges = i >= 1 && i + 1 <= es.size();
        if (both_edges && common.size() != 1) return false;
    }
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = i + 2; j < items.size(); ++j)
            if (items[i].intersects(items[j])) return false;
    return true;
}

// a-cycle: a, e1, ..., eL, a with L >= 2, a only in e1 and eL. L = 2: the two
// edges share exactly two vertices. L >= 3: consecutive (cyclically) edges
// share exactly one vertex, others nothing, and e_L ∩ e_1 = {a}.
inline bool is_cycle(VertexId a, const Seq& es) {
    std::size_t L = es.size();
    if (L < 2) return false;
    for (const Edge& e : es)
        if (e.size() != 3) return false;
    if (L == 2) return es[0] != es[1] && (vset(es[0]) & vset(es[1])).size() == 2 && es[0].contains(a) && es[1].contains(a);
    for (std::size_t i = 1; i + 1 < L; ++i)
        if (es[i].contains(a)) return false;
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j) {
            VertexSet c = vset(es[i]) & vset(es[j]);
            bool adjacent = j == i + 1 || (i == 0 && j == L - 1);
            if (adjacent ? c.size() != 1 : !c.empty()) return false;
        }
    return (vset(es[L - 1]) & vset(es[0])) == VertexSet{a};
}

// a-tadpole: an ab-path followed by a b-cycle meeting it only in b.
inline bool is_tadpole(VertexId a, const Seq& es) {
    for (std::size_t s = 0; s + 2 <= es.size(); ++s) {
        Seq tail(es.begin(), es.begin() + static_cast<std::ptrdiff_t>(s));
        Seq head(es.begin() + static_cast<std::ptrdiff_t>(s), es.end());
        VertexSet hv = vertices_of(head);
        for (VertexId b : hv) {
            if (!is_path(a, tail, b) || !is_cycle(b, head)) continue;
            VertexSet tv = vertices_of(tail);
            tv.insert(a);
            if ((tv & hv) == VertexSet{b}) return true;
        }
    }
    return false;
}

// Every ordered sequence of distinct edges of length 1..max_len from `pool`.
inline void each_sequence(const std::vector<Edge>& pool, std::size_t max_len, const std::function<bool(const Seq&)>& visit) {
    Seq cur;
    std::vector<bool> used(pool.size(), false);
    std::function<bool()> rec = [&]() -> bool {
        if (!cur.empty() && !visit(cur)) return false;
        if (cur.size() == max_len) return true;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            cur.push_back(pool[i]);
            bool go = rec();
            cur.pop_back();
            used[i] = false;
            if (!go) return false;
        }
        return true;
    };
    rec();
}

// Sequences starting at `a` whose every proper prefix is a path from a to a
// vertex of its last edge. Prefixes of paths, cycles and tadpoles rooted at a
// all have that form, so skipping anything else loses none of them.
inline void each_rooted(const std::vector<Edge>& pool, VertexId a, const std::function<bool(const Seq&)>& visit) {
    Seq cur;
    std::vector<bool> used(pool.size(), false);
    auto extendable = [&] {
        for (VertexId w : cur.back())
            if (w != a && is_path(a, cur, w)) return true;
        return false;
    };
    std::function<bool()> rec = [&]() -> bool {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i] || (cur.empty() && !pool[i].contains(a))) continue;
            used[i] = true;
            cur.push_back(pool[i]);
            bool go = visit(cur) && (!extendable() || rec());
            cur.pop_back();
            used[i] = false;
            if (!go) return false;
        }
        return true;
    };
    rec();
}

inline std::vector<Edge> edges_within(const MarkedHypergraph& h, const VertexSet& allowed) {
    std::vector<Edge> out;
    for (const Edge& e : h.edges())
        if (e.size() == 3 && vset(e).subset_of(allowed)) out.push_back(e);
    return out;
}

// Some uv-path inside `allowed` (which must contain u and v).
inline bool path_exists(const MarkedHypergraph& h, VertexId u, VertexId v, const VertexSet& allowed) {
    if (u == v) return true;
    bool found = false;
    auto pool = edges_within(h, allowed);
    each_rooted(pool, u, [&](const Seq& s) {
        if (is_path(u, s, v)) found = true;
        return !found;
    });
    return found;
}

inline std::vector<Seq> all_paths(const MarkedHypergraph& h, VertexId u, VertexId v, const VertexSet& allowed) {
    std::vector<Seq> out;
    if (u == v) out.push_back({});
    auto pool = edges_within(h, allowed);
    each_rooted(pool, u, [&](const Seq& s) {
        if (is_path(u, s, v)) out.push_back(s);
        return true;
    });
    return out;
}

// Vertex sets of x-snakes: x -> m paths, m marked, all other vertices non-marked.
inline std::vector<VertexSet> snakes(const MarkedHypergraph& h, VertexId x, const VertexSet& allowed) {
    std::vector<VertexSet> out;
    auto pool = edges_within(h, allowed);
    each_rooted(pool, x, [&](const Seq& s) {
        VertexSet vs = vertices_of(s);
        vs.insert(x);
        VertexSet m = vs & h.marked();
        if (m.size() != 1 || h.marked().contains(x)) return true;
        if (is_path(x, s, m.front())) out.push_back(vs);
        return true;
    });
    return out;
}

inline std::vector<VertexSet> cycles(const MarkedHypergraph& h, VertexId a, const VertexSet& allowed) {
    std::vector<VertexSet> out;
    auto pool = edges_within(h, allowed);
    each_rooted(pool, a, [&](const Seq& s) {
        if (is_cycle(a, s)) out.push_back(vertices_of(s));
        return true;
    });
    return out;
}

inline std::vector<VertexSet> tadpoles(const MarkedHypergraph& h, VertexId a, const VertexSet& allowed) {
    std::vector<VertexSet> out;
    auto pool = edges_within(h, allowed);
    each_rooted(pool, a, [&](const Seq& s) {
        if (is_tadpole(a, s)) {
            VertexSet vs = vertices_of(s);
            vs.insert(a);
            out.push_back(vs);
        }
        return true;
    });
    return out;
}

// All D0-dangers at x (snakes, unmarked cycles) as vertex sets.
inline std::vector<VertexSet> d0_dangers(const MarkedHypergraph& h, VertexId x) {
    auto out = snakes(h, x, h.vertices());
    for (const auto& c : cycles(h, x, h.unmarked())) out.push_back(c);
    return out;
}

// I_{H^{+x}}: non-marked vertices of H^{+x} lying in every set.
inline VertexSet hitting(const MarkedHypergraph& h, VertexId x, const std::vector<VertexSet>& dangers) {
    VertexSet out = h.unmarked();
    out.erase(x);
    for (const auto& d : dangers) out &= d;
    return out;
}

// D1-dangers at x: snakes and unmarked tadpoles.
inline std::vector<VertexSet> d1_dangers(const MarkedHypergraph& h, VertexId x) {
    auto out = snakes(h, x, h.vertices());
    VertexSet u = h.unmarked();
    for (const auto& t : tadpoles(h, x, u)) out.push_back(t);
    return out;
}

// Fully marked edge, nunchaku, or necklace.
inline bool has_threat(const MarkedHypergraph& h) {
    const VertexSet M = h.marked(), U = h.unmarked();
    for (const Edge& e : h.edges())
        if (vset(e).subset_of(M)) return true;
    bool found = false;
    const auto pool = edges_within(h, h.vertices());
    for (VertexId a : M) {
        each_rooted(pool, a, [&](const Seq& s) {
            VertexSet vs = vertices_of(s);
            VertexSet rest = vs;
            rest.erase(a);
            if (is_cycle(a, s) && rest.subset_of(U)) found = true;
            for (VertexId b : s.back())
                if (b != a && M.contains(b) && is_path(a, s, b) && (vs & M) == (VertexSet{a} | VertexSet{b})) found = true;
            return !found;
        });
        if (found) break;
    }
    return found;
}

using DangerFn = std::function<std::vector<VertexSet>(const MarkedHypergraph&, VertexId)>;

// J_r straight from the definition: after any pick x Breaker has a reply in
// the intersection of the dangers at x, and J_{r-1} holds afterwards.
inline bool jr(const MarkedHypergraph& h, int r, const DangerFn& dangers) {
    for (VertexId x : h.unmarked()) {
        VertexSet hit = hitting(h, x, dangers(h, x));
        if (r == 1) {
            if (hit.empty()) return false;
            continue;
        }
        MarkedHypergraph m = mb::mark(h, x);
        bool ok = false;
        for (VertexId y : hit)
            if (jr(mb::remove(m, y), r - 1, dangers)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

// Maker can force a threat within r rounds.
inline bool forces_threat(const MarkedHypergraph& h, int r) {
    if (r == 0) return has_threat(h);
    for (VertexId x : h.unmarked()) {
        MarkedHypergraph m = mb::mark(h, x);
        bool all = true;
        for (VertexId y : m.unmarked())
            if (!forces_threat(mb::remove(m, y), r - 1)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

// Maker-win and duration, straight recursion on boards with a small memo.
// One instance per root board: the memo keys on vertices and marks only.
class Minimax {
public:
    bool wins(const MarkedHypergraph& h) { return tau(h) < kInf; }

    int tau(const MarkedHypergraph& h) {
        int best_trivial = kInf;
        for (const Edge& e : h.edges()) {
            int f = (vset(e) - h.marked()).size();
            if (f <= 1) best_trivial = std::min(best_trivial, f);
        }
        if (best_trivial < kInf) return best_trivial;
        if (h.unmarked().size() <= 1) return kInf;
        auto key = std::make_pair(h.vertices(), h.marked());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        int best = kInf;
        for (VertexId x : h.unmarked()) {
            MarkedHypergraph m = mb::mark(h, x);
            int worst = 0;
            for (VertexId y : m.unmarked()) {
                worst = std::max(worst, tau(mb::remove(m, y)));
                if (worst >= best) break;
            }
            best = std::min(best, worst == kInf ? kInf : worst + 1);
        }
        memo_[key] = best;
        return best;
    }

    static constexpr int kInf = 1 << 20;

private:
    std::map<std::pair<VertexSet, VertexSet>, int> memo_;
};

// Obstruction formulation of removability: y is removable iff y lies in every
// union of an obstruction (a subcollection with empty intersection).
inline VertexSet removable_by_obstructions(const std::vector<VertexSet>& refs, const MarkedHypergraph& host) {
    const std::size_t k = refs.size();
    VertexSet out = host.unmarked();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        VertexSet inter = host.unmarked();
        VertexSet uni;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1u) {
                inter &= refs[i];
                uni |= refs[i];
            }
        if (inter.empty()) out &= uni;
    }
    return out;
}

// Random path of the given length from `start`. `pool` supplies vertices to
// reuse; fresh ones come from `next`. Retries until the result is a path.
inline std::optional<Seq> random_path(std::mt19937_64& rng, VertexId start, int length, const std::vector<VertexId>& pool,
                                      VertexId& next, double reuse = 0.3) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        VertexId saved = next;
        Seq es;
        VertexId cur = start;
        VertexSet used{start};
        bool ok = true;
        for (int i = 0; i < length && ok; ++i) {
            std::vector<VertexId> pick;
            for (int j = 0; j < 2; ++j) {
                VertexId v;
                std::bernoulli_distribution r(reuse);
                if (!pool.empty() && r(rng)) v = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
                else v = next++;
                if (used.contains(v) || std::find(pick.begin(), pick.end(), v) != pick.end()) {
                    ok = false;
                    break;
                }
                pick.push_back(v);
            }
            if (!ok) break;
            es.push_back(Edge(std::vector<VertexId>{cur, pick[0], pick[1]}));
            used.insert(pick[0]);
            used.insert(pick[1]);
            cur = pick[std::uniform_int_distribution<int>(0, 1)(rng)];
        }
        if (ok && is_path(start, es, cur)) return es;
        next = saved;
    }
    return std::nullopt;
}

// Last vertex of a path sequence from `a` (a itself for the empty path).
inline VertexId path_end(VertexId a, const Seq& es) {
    if (es.empty()) return a;
    VertexSet last = vset(es.back());
    if (es.size() >= 2) last = last - vset(es[es.size() - 2]);
    else last.erase(a);
    // two candidates remain; the end is the one that makes the sequence a path
    for (VertexId b : last)
        if (is_path(a, es, b)) return b;
    return a;
}

}  // namespace oracle
