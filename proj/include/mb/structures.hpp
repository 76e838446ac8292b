#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypergraph.hpp"
#include "search.hpp"
#include "sequence.hpp"

namespace mb {

enum class ThreatKind { fully_marked_edge, nunchaku, necklace };

inline const char* to_string(ThreatKind k) {
    switch (k) {
        case ThreatKind::fully_marked_edge: return "fully_marked_edge";
        case ThreatKind::nunchaku: return "nunchaku";
        case ThreatKind::necklace: return "necklace";
    }
    return "?";
}

// A position feature that hands Maker the win. `shape` holds the edge for a
// fully marked edge, a path for a nunchaku, a cycle for a necklace.
struct ThreatWitness {
    ThreatKind kind;
    std::variant<Edge, PathWitness, CycleWitness> shape;

    [[nodiscard]] VertexSet vertex_set() const {
        return std::visit([](const auto& s) { return s.vertex_set(); }, shape);
    }
    [[nodiscard]] std::vector<Edge> edges() const {
        if (auto* e = std::get_if<Edge>(&shape)) return {*e};
        if (auto* p = std::get_if<PathWitness>(&shape)) return p->edges;
        return std::get<CycleWitness>(shape).edges;
    }
};

// Structure searches inside one position of a root board. All methods are
// complete: an empty result means the structure does not exist.
class StructureFinder {
public:
    explicit StructureFinder(const IncidenceIndex& index) : index_(index), search_(index) {}

    // uv-path avoiding `forbidden`; with `interior_unmarked`, every vertex other
    // than u and v is non-marked.
    std::optional<PathWitness> path(const GameState& s, VertexId u, VertexId v, const VertexSet& forbidden,
                                    bool interior_unmarked, int max_length = kUnbounded) {
        VertexSet allowed = (interior_unmarked ? s.unmarked() : s.present) - forbidden;
        allowed.erase(u);
        allowed.erase(v);
        return search_.find(u, {allowed, VertexSet{v}}, max_length);
    }

    std::optional<PathWitness> shortest_path(const GameState& s, VertexId u, VertexId v, const VertexSet& forbidden,
                                             bool interior_unmarked) {
        VertexSet allowed = (interior_unmarked ? s.unmarked() : s.present) - forbidden;
        allowed.erase(u);
        allowed.erase(v);
        return search_.shortest(u, {allowed, VertexSet{v}});
    }

    // a-cycle avoiding `forbidden`. With `unmarked_only` every vertex other
    // than a is non-marked.
    std::optional<CycleWitness> cycle_through(const GameState& s, VertexId a, bool unmarked_only,
                                              const VertexSet& forbidden = {}) {
        VertexSet allowed = (unmarked_only ? s.unmarked() : s.present) - forbidden;
        allowed.erase(a);
        for (std::uint32_t ei : index_.incident(a)) {
            const Edge& e = index_.edges()[ei];
            if (e.size() != 3 || !index_.mask(ei).subset_of(allowed | VertexSet{a})) continue;
            for (VertexId p : e) {
                if (p == a) continue;
                VertexId q = other(e, a, p);
                VertexSet inner = allowed;
                inner.erase(p);
                inner.erase(q);
                if (auto path = search_.find(a, {inner, VertexSet{p}})) {
                    path->edges.push_back(e);
                    return CycleWitness{a, std::move(path->edges)};
                }
            }
        }
        return std::nullopt;
    }

    // x->m path of positive length, m marked, every other vertex non-marked.
    std::optional<PathWitness> snake(const GameState& s, VertexId x, const VertexSet& forbidden = {}) {
        if (s.marked.contains(x)) return std::nullopt;
        VertexSet inner = s.unmarked() - forbidden;
        inner.erase(x);
        return search_.find(x, {inner, s.marked - forbidden});
    }

    // x-tadpole avoiding `forbidden`; with `unmarked_only` every vertex is non-marked.
    std::optional<TadpoleWitness> tadpole(const GameState& s, VertexId x, bool unmarked_only,
                                          const VertexSet& forbidden = {}) {
        if (unmarked_only && s.marked.contains(x)) return std::nullopt;
        VertexSet allowed = (unmarked_only ? s.unmarked() : s.present) - forbidden;
        if (!allowed.contains(x)) return std::nullopt;
        VertexSet walk_inner = allowed;
        walk_inner.erase(x);
        std::optional<TadpoleWitness> found;
        // Separate finder for the cycle part: the tail walk owns `search_`.
        PathSearch cycle_search(index_);
        search_.each_path(x, walk_inner, [&](const PathWitness& tail, const VertexSet& used) {
            VertexId b = tail.b;
            VertexSet cycle_allowed = allowed - used;
            cycle_allowed.insert(b);
            if (auto c = cycle_in(cycle_search, b, cycle_allowed)) {
                found = TadpoleWitness{tail, *c};
                return true;
            }
            return false;
        });
        return found;
    }

    // Nunchaku with an endpoint at a (a marked), shortest first.
    std::optional<PathWitness> nunchaku_from(const GameState& s, VertexId a, int max_length = kUnbounded) {
        if (!s.marked.contains(a)) return std::nullopt;
        VertexSet targets = s.marked;
        targets.erase(a);
        return search_.shortest(a, {s.unmarked(), targets}, max_length);
    }

    // A shortest nunchaku of the position. Ties go to the lowest first endpoint.
    std::optional<PathWitness> shortest_nunchaku(const GameState& s) {
        int cap = (s.unmarked().size() + 1) / 2;
        for (int d = 1; d <= cap; ++d)
            for (VertexId a : s.marked) {
                VertexSet targets = s.marked;
                targets.erase(a);
                if (auto p = search_.find(a, {s.unmarked(), targets}, d)) return p;
            }
        return std::nullopt;
    }

    bool has_nunchaku(const GameState& s) {
        VertexSet seen;
        for (VertexId a : s.marked) {
            seen.insert(a);
            // Paths are symmetric, so only look towards endpoints not yet used as a start.
            VertexSet targets = s.marked - seen;
            if (targets.empty()) break;
            if (search_.find(a, {s.unmarked(), targets})) return true;
        }
        return false;
    }

    // Marked x with an edge {x, a, b}, a and b non-marked, and an xa-path
    // avoiding b whose other vertices are non-marked.
    std::optional<CycleWitness> necklace(const GameState& s) {
        for (VertexId x : s.marked)
            if (auto c = cycle_through(s, x, true)) return c;
        return std::nullopt;
    }

    std::optional<Edge> fully_marked_edge(const GameState& s) const {
        for (std::uint32_t i = 0; i < index_.edges().size(); ++i)
            if (index_.mask(i).subset_of(s.marked)) return index_.edges()[i];
        return std::nullopt;
    }

    // Fully marked edge, nunchaku or necklace.
    bool has_threat(const GameState& s) {
        if (fully_marked_edge(s)) return true;
        if (s.marked.size() >= 2 && has_nunchaku(s)) return true;
        return necklace(s).has_value();
    }

    std::vector<ThreatWitness> threats(const GameState& s) {
        std::vector<ThreatWitness> out;
        for (std::uint32_t i = 0; i < index_.edges().size(); ++i)
            if (index_.mask(i).subset_of(s.marked)) out.push_back({ThreatKind::fully_marked_edge, index_.edges()[i]});
        for (VertexId a : s.marked)
            for (VertexId b : s.marked) {
                if (b <= a) continue;
                VertexSet inner = s.unmarked();
                if (auto p = search_.shortest(a, {inner, VertexSet{b}})) out.push_back({ThreatKind::nunchaku, *p});
            }
        for (VertexId x : s.marked)
            if (auto c = cycle_through(s, x, true)) out.push_back({ThreatKind::necklace, *c});
        return out;
    }

    PathSearch& search() { return search_; }
    const IncidenceIndex& index() const { return index_; }

private:
    static VertexId other(const Edge& e, VertexId a, VertexId p) {
        for (VertexId v : e)
            if (v != a && v != p) return v;
        return kMaxVertices;
    }

    // b-cycle inside `allowed` (which contains b).
    std::optional<CycleWitness> cycle_in(PathSearch& search, VertexId b, const VertexSet& allowed) {
        for (std::uint32_t ei : index_.incident(b)) {
            const Edge& e = index_.edges()[ei];
            if (e.size() != 3 || !index_.mask(ei).subset_of(allowed)) continue;
            for (VertexId p : e) {
                if (p == b) continue;
                VertexId q = other(e, b, p);
                VertexSet inner = allowed;
                inner.erase(b);
                inner.erase(p);
                inner.erase(q);
                if (auto path = search.find(b, {inner, VertexSet{p}})) {
                    path->edges.push_back(e);
                    return CycleWitness{b, std::move(path->edges)};
                }
            }
        }
        return std::nullopt;
    }

    const IncidenceIndex& index_;
    PathSearch search_;
};

// Board-level conveniences. Each builds a fresh index, so prefer a
// StructureFinder when querying one board repeatedly.

inline std::optional<PathWitness> find_path(const MarkedHypergraph& h, VertexId u, VertexId v,
                                            const VertexSet& forbidden = {}, bool interior_unmarked = false) {
    if (!h.vertices().contains(u) || !h.vertices().contains(v) || forbidden.contains(u) || forbidden.contains(v))
        throw domain_error("find_path: endpoints must be non-forbidden vertices");
    IncidenceIndex index(h);
    return StructureFinder(index).path(state_of(h), u, v, forbidden, interior_unmarked);
}

inline std::optional<CycleWitness> find_cycle_through(const MarkedHypergraph& h, VertexId a, bool unmarked_only = false) {
    if (!h.vertices().contains(a)) throw domain_error("find_cycle_through: not a vertex");
    IncidenceIndex index(h);
    return StructureFinder(index).cycle_through(state_of(h), a, unmarked_only);
}

inline std::optional<PathWitness> find_snake(const MarkedHypergraph& h, VertexId x) {
    if (!h.vertices().contains(x) || h.marked().contains(x)) throw domain_error("find_snake: x must be a non-marked vertex");
    IncidenceIndex index(h);
    return StructureFinder(index).snake(state_of(h), x);
}

inline std::optional<TadpoleWitness> find_tadpole(const MarkedHypergraph& h, VertexId x, bool unmarked_only = false) {
    if (!h.vertices().contains(x)) throw domain_error("find_tadpole: not a vertex");
    IncidenceIndex index(h);
    return StructureFinder(index).tadpole(state_of(h), x, unmarked_only);
}

inline std::vector<ThreatWitness> detect_threats(const MarkedHypergraph& h) {
    IncidenceIndex index(h);
    return StructureFinder(index).threats(state_of(h));
}

// Length of a shortest nunchaku; nullopt when there is none.
inline std::optional<int> shortest_nunchaku_length(const MarkedHypergraph& h) {
    IncidenceIndex index(h);
    auto n = StructureFinder(index).shortest_nunchaku(state_of(h));
    if (!n) return std::nullopt;
    return static_cast<int>(n->length());
}

// True when no cycle exists at all (marks ignored).
inline bool is_hyperforest(const MarkedHypergraph& h) {
    IncidenceIndex index(h);
    StructureFinder f(index);
    GameState s = state_of(h);
    for (VertexId v : h.vertices())
        if (f.cycle_through(s, v, false)) return false;
    return true;
}

}  // namespace mb
