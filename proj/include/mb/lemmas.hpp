#pragma once

#include <optional>
#include <string>

#include "structures.hpp"

namespace mb {

namespace detail {

inline MarkedHypergraph board_from_edges(const VertexSet& vertices, const std::vector<Edge>& edges,
                                         const VertexSet& marked = {}) {
    return MarkedHypergraph(vertices, edges, marked & vertices);
}

inline std::vector<Edge> joined(std::vector<Edge> a, const std::vector<Edge>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline PathWitness project_within(const VertexSet& vertices, const std::vector<Edge>& edges, VertexId u,
                                  const VertexSet& w, const VertexSet& excluded_targets) {
    if (!vertices.contains(u)) throw domain_error("project: u is not a vertex of X");
    VertexSet targets = (w & vertices) - excluded_targets;
    if (targets.empty()) throw domain_error("project: W does not meet X");
    if (w.contains(u)) return PathWitness{u, u, {}};
    MarkedHypergraph x = board_from_edges(vertices, edges);
    IncidenceIndex index(x);
    PathSearch search(index);
    PathConstraints c{vertices - w, targets, true};
    c.inner.erase(u);
    auto p = search.shortest(u, c);
    if (!p) throw domain_error("project: no path from u to W inside X");
    return *p;
}

}  // namespace detail

// Shortest u-path inside X ending at W. Its last edge is the only one meeting W.
inline PathWitness project(const PathWitness& x, VertexId u, const VertexSet& w) {
    return detail::project_within(x.vertex_set(), x.edges, u, w, {});
}

inline PathWitness project(const TadpoleWitness& x, VertexId u, const VertexSet& w) {
    VertexSet excluded;
    // A two-edge head seen from one of its outer vertices cannot reach the
    // other outer vertex.
    if (x.head.length() == 2 && x.head.outer().contains(u)) {
        excluded = x.head.outer();
        excluded.erase(u);
    }
    return detail::project_within(x.vertex_set(), x.edges(), u, w, excluded);
}

// e ⊥ aPb: e contains e_1 \ {a}, or e_i \ e_{i-1} for some i >= 2.
inline bool perpendicular(const PathWitness& p, const Edge& e) {
    if (p.edges.empty()) return false;
    VertexSet es = e.vertex_set();
    VertexSet first = p.edges[0].vertex_set();
    first.erase(p.a);
    if (first.subset_of(es)) return true;
    for (std::size_t i = 1; i < p.edges.size(); ++i)
        if ((p.edges[i].vertex_set() - p.edges[i - 1].vertex_set()).subset_of(es)) return true;
    return false;
}

// Outcome of laying an edge e against an ab-path.
struct TableCell {
    int table = 0;  // 1..4
    bool forward = false;   // e ⊥ aPb
    bool backward = false;  // e ⊥ bPa
    bool impossible = false;
    std::optional<VertexId> u;
    std::optional<PathWitness> au_path;
    std::optional<PathWitness> bu_path;
    std::optional<CycleWitness> a_cycle;
    std::optional<TadpoleWitness> a_tadpole;
    std::optional<TadpoleWitness> b_tadpole;
};

// Tables 1-4. With `u` given (or a not in e) the edge is read as leaving the
// path through u; otherwise an edge through a is read as closing a cycle at a.
inline TableCell classify_edge_vs_path(const PathWitness& p, const Edge& e, std::optional<VertexId> u = std::nullopt) {
    if (!p.valid() || p.length() == 0) throw domain_error("classify: P must be a path of positive length");
    if (e.size() != 3) throw domain_error("classify: e must have three vertices");
    const VertexSet vp = p.vertex_set();
    const VertexSet es = e.vertex_set();
    const int k = (es & vp).size();
    const VertexId a = p.a, b = p.b;
    const EdgeSequence apb = p.sequence();
    const EdgeSequence bpa = apb.reversed();

    auto must = [](auto opt, const char* what) {
        if (!opt) throw internal_error(std::string("classify: constructed ") + what + " failed validation");
        return *opt;
    };

    TableCell cell;
    cell.forward = perpendicular(p, e);
    cell.backward = perpendicular(p.reversed(), e);
    if (k == 0) throw domain_error("classify: e does not meet P");

    const bool closing = es.contains(a) && e != p.edges.front() && !u.has_value();
    if (closing && k >= 2) {
        VertexSet rest = es;
        rest.erase(a);
        EdgeSequence cyc = apb.restrict_to(rest).push(e).push(Edge{a});
        if (k == 2) {
            cell.table = 3;
            cell.a_cycle = must(as_cycle(cyc, a), "a-cycle");
            return cell;
        }
        cell.table = 4;
        if (cell.forward && cell.backward) {
            cell.impossible = true;
            return cell;
        }
        if (!cell.forward) {
            cell.a_cycle = must(as_cycle(cyc, a), "a-cycle");
        } else {
            auto end_a = apb.restrict_to(rest).end();
            if (!end_a) throw internal_error("classify: empty restriction");
            EdgeSequence t = bpa.restrict_to(es).push(e).push(*end_a);
            cell.b_tadpole = must(as_tadpole(t, b), "b-tadpole");
        }
        return cell;
    }

    const VertexSet outside = es - vp;
    if (outside.empty()) throw domain_error("classify: e lies inside P but does not contain a");
    if (u && !outside.contains(*u)) throw domain_error("classify: u must be a vertex of e outside P");
    const VertexId uu = u ? *u : outside.front();
    cell.u = uu;
    EdgeSequence to_u_from_a = apb.restrict_to(es).push(e).push(Edge{uu});
    EdgeSequence to_u_from_b = bpa.restrict_to(es).push(e).push(Edge{uu});
    if (k == 1) {
        cell.table = 1;
        cell.au_path = must(as_path(to_u_from_a, a, uu), "au-path");
        cell.bu_path = must(as_path(to_u_from_b, b, uu), "bu-path");
        return cell;
    }
    cell.table = 2;
    if (cell.forward && cell.backward) {
        cell.impossible = true;
        return cell;
    }
    if (!cell.forward) cell.au_path = must(as_path(to_u_from_a, a, uu), "au-path");
    if (!cell.backward) cell.bu_path = must(as_path(to_u_from_b, b, uu), "bu-path");
    if (cell.backward) {
        auto end_b = bpa.restrict_to(es).end();
        if (!end_b) throw internal_error("classify: empty restriction");
        cell.a_tadpole = must(as_tadpole(apb.restrict_to(es).push(e).push(*end_b), a), "a-tadpole");
    }
    if (cell.forward) {
        auto end_a = apb.restrict_to(es).end();
        if (!end_a) throw internal_error("classify: empty restriction");
        cell.b_tadpole = must(as_tadpole(bpa.restrict_to(es).push(e).push(*end_a), b), "b-tadpole");
    }
    return cell;
}

struct PathPathResult {
    Edge e_star;
    PathWitness cb_path;
    TadpoleWitness b_tadpole;
};

namespace detail {

inline bool path_exists_in(const VertexSet& vertices, const std::vector<Edge>& edges, VertexId from, VertexId to) {
    MarkedHypergraph u = board_from_edges(vertices, edges);
    return find_path(u, from, to).has_value();
}

}  // namespace detail

// Path P_ab and c-path P_c with no ca-path in their union: builds a cb-path
// and a b-tadpole.
inline PathPathResult union_lemma1(const PathWitness& pab, const PathWitness& pc) {
    const VertexId a = pab.a, b = pab.b, c = pc.a;
    if (!pab.valid() || !pc.valid()) throw domain_error("lemma 1: inputs must be paths");
    if (a == b || a == c || b == c) throw domain_error("lemma 1: a, b, c must be distinct");
    const VertexSet vab = pab.vertex_set();
    if (vab.contains(c)) throw domain_error("lemma 1: c lies on P_ab");
    if (!pc.vertex_set().intersects(vab)) throw domain_error("lemma 1: P_c does not meet P_ab");
    const VertexSet all = vab | pc.vertex_set();
    if (detail::path_exists_in(all, detail::joined(pab.edges, pc.edges), c, a))
        throw domain_error("lemma 1: a ca-path exists in the union");

    PathWitness proj = project(pc, c, vab);
    const Edge e_star = proj.edges.back();
    const VertexSet out = e_star.vertex_set() - vab;
    if (out.size() != 1) throw internal_error("lemma 1: end edge meets P_ab in one vertex");
    TableCell cell = classify_edge_vs_path(pab, e_star, out.front());
    if (cell.table != 2 || !cell.forward || cell.backward || !cell.bu_path || !cell.b_tadpole)
        throw internal_error("lemma 1: expected the forward-only cell of table 2");

    std::vector<Edge> edges(proj.edges.begin(), proj.edges.end() - 1);
    PathWitness ub = cell.bu_path->reversed();
    edges.insert(edges.end(), ub.edges.begin(), ub.edges.end());
    PathWitness cb{c, b, std::move(edges)};
    if (!cb.valid()) throw internal_error("lemma 1: constructed cb-path failed validation");
    return {e_star, cb, *cell.b_tadpole};
}

struct PathCycleResult {
    Edge e_star;
    TadpoleWitness b_tadpole;
};

// Path P_ab and a-path P_a leaving a through another edge and meeting P_ab
// again, with no a-cycle in the union: builds a b-tadpole.
inline PathCycleResult union_lemma2(const PathWitness& pab, const PathWitness& pa) {
    const VertexId a = pab.a, b = pab.b;
    if (!pab.valid() || !pa.valid()) throw domain_error("lemma 2: inputs must be paths");
    if (pa.a != a || a == b || pa.length() == 0) throw domain_error("lemma 2: P_a must be an a-path of positive length");
    if (pa.edges.front() == pab.edges.front()) throw domain_error("lemma 2: P_a and P_ab start with the same edge");
    VertexSet rest = pab.vertex_set();
    rest.erase(a);
    if (!pa.vertex_set().intersects(rest)) throw domain_error("lemma 2: P_a does not meet P_ab away from a");
    {
        MarkedHypergraph u = detail::board_from_edges(pab.vertex_set() | pa.vertex_set(), detail::joined(pab.edges, pa.edges));
        if (find_cycle_through(u, a)) throw domain_error("lemma 2: an a-cycle exists in the union");
    }
    PathWitness proj = project(pa, a, rest);
    const Edge e_star = proj.edges.back();
    if (e_star.contains(a)) {
        TableCell cell = classify_edge_vs_path(pab, e_star);
        if (cell.table != 4 || !cell.forward || cell.backward || !cell.b_tadpole)
            throw internal_error("lemma 2: expected the forward-only cell of table 4");
        return {e_star, *cell.b_tadpole};
    }
    std::vector<VertexId> spine = pa.spine();
    PathWitness pc{spine[1], pa.b, std::vector<Edge>(pa.edges.begin() + 1, pa.edges.end())};
    PathPathResult r = union_lemma1(pab, pc);
    if (r.e_star != e_star) throw internal_error("lemma 2: projection mismatch");
    return {e_star, r.b_tadpole};
}

struct PathTadpoleResult {
    Edge e_star;
    TadpoleWitness c_tadpole;
};

// a-tadpole T and c-path P_c with no ca-path in the union: builds a c-tadpole.
inline PathTadpoleResult union_lemma3(const TadpoleWitness& t, const PathWitness& pc) {
    const VertexId a = t.anchor(), c = pc.a;
    if (!t.valid() || !pc.valid()) throw domain_error("lemma 3: inputs must be a tadpole and a path");
    if (a == c || t.vertex_set().contains(c)) throw domain_error("lemma 3: c lies on T");
    if (!pc.vertex_set().intersects(t.vertex_set())) throw domain_error("lemma 3: P_c does not meet T");
    const VertexSet all = t.vertex_set() | pc.vertex_set();
    if (detail::path_exists_in(all, detail::joined(t.edges(), pc.edges), c, a))
        throw domain_error("lemma 3: a ca-path exists in the union");
    PathWitness proj = project(pc, c, t.vertex_set());
    if (t.tail.length() == 0) throw internal_error("lemma 3: T turned out to be a cycle");
    PathPathResult r = union_lemma1(t.tail, proj);
    TadpoleWitness ct{r.cb_path, t.head};
    if (!ct.valid()) throw internal_error("lemma 3: constructed c-tadpole failed validation");
    return {r.e_star, ct};
}

struct PathSnakeResult {
    // No c-snake in the union: a ca-path and an a-tadpole.
    std::optional<PathWitness> ca_path;
    std::optional<TadpoleWitness> a_tadpole;
    // No ca-path in the union: a cb-snake and a b-tadpole.
    std::optional<PathWitness> cb_snake;
    std::optional<TadpoleWitness> b_tadpole;
};

// ab-snake S (b marked) and c-path P_c. At least one of the two hypotheses has to hold.
inline PathSnakeResult union_lemma4(const PathWitness& s, const PathWitness& pc, const VertexSet& marked) {
    const VertexId a = s.a, b = s.b, c = pc.a;
    if (!s.valid() || !pc.valid() || s.length() == 0) throw domain_error("lemma 4: inputs must be a snake and a path");
    if (!marked.contains(b)) throw domain_error("lemma 4: b must be marked");
    if (a == c || b == c || s.vertex_set().contains(c)) throw domain_error("lemma 4: c lies on S");
    if (!pc.vertex_set().intersects(s.vertex_set())) throw domain_error("lemma 4: P_c does not meet S");
    const VertexSet all = s.vertex_set() | pc.vertex_set();
    MarkedHypergraph u = detail::board_from_edges(all, detail::joined(s.edges, pc.edges), marked);
    const bool c_snake = [&] {
        IncidenceIndex index(u);
        PathSearch search(index);
        VertexSet targets = u.marked();
        targets.erase(c);
        VertexSet inner = u.unmarked();
        inner.erase(c);
        return search.find(c, {inner, targets}).has_value();
    }();
    const bool ca = find_path(u, c, a).has_value();
    if (c_snake && ca) throw domain_error("lemma 4: a c-snake and a ca-path both exist");
    PathSnakeResult out;
    if (!c_snake) {
        PathPathResult r = union_lemma1(s.reversed(), pc);
        out.ca_path = r.cb_path;
        out.a_tadpole = r.b_tadpole;
    }
    if (!ca) {
        PathPathResult r = union_lemma1(s, pc);
        out.cb_snake = r.cb_path;
        out.b_tadpole = r.b_tadpole;
    }
    return out;
}

}  // namespace mb
