#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hypergraph.hpp"

namespace mb {

// Sequence of vertex sets. Singletons mark endpoints; the rest are edges.
class EdgeSequence {
public:
    EdgeSequence() = default;
    explicit EdgeSequence(std::vector<Edge> items) : items_(std::move(items)) {}

    [[nodiscard]] const std::vector<Edge>& items() const { return items_; }
    [[nodiscard]] std::size_t size() const { return items_.size(); }
    [[nodiscard]] const Edge& operator[](std::size_t i) const { return items_[i]; }

    [[nodiscard]] VertexSet vertex_set() const {
        VertexSet s;
        for (const Edge& e : items_) s |= e.vertex_set();
        return s;
    }
    // Items of size at least two, in order (duplicates kept).
    [[nodiscard]] std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (const Edge& e : items_)
            if (e.size() >= 2) out.push_back(e);
        return out;
    }
    [[nodiscard]] std::optional<Edge> start() const {
        for (const Edge& e : items_)
            if (e.size() >= 2) return e;
        return std::nullopt;
    }
    [[nodiscard]] std::optional<Edge> end() const {
        for (auto it = items_.rbegin(); it != items_.rend(); ++it)
            if (it->size() >= 2) return *it;
        return std::nullopt;
    }
    [[nodiscard]] EdgeSequence reversed() const {
        return EdgeSequence(std::vector<Edge>(items_.rbegin(), items_.rend()));
    }
    [[nodiscard]] EdgeSequence concat(const EdgeSequence& o) const {
        std::vector<Edge> out = items_;
        out.insert(out.end(), o.items_.begin(), o.items_.end());
        return EdgeSequence(std::move(out));
    }
    EdgeSequence& push(const Edge& e) {
        items_.push_back(e);
        return *this;
    }
    // Prefix up to and including the first item meeting w. Empty when no item does.
    [[nodiscard]] EdgeSequence restrict_to(const VertexSet& w) const {
        for (std::size_t i = 0; i < items_.size(); ++i)
            if (items_[i].vertex_set().intersects(w))
                return EdgeSequence(std::vector<Edge>(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(i) + 1));
        return EdgeSequence();
    }

    [[nodiscard]] bool connected() const {
        for (std::size_t i = 0; i + 1 < items_.size(); ++i)
            if (!items_[i].vertex_set().intersects(items_[i + 1].vertex_set())) return false;
        return true;
    }
    [[nodiscard]] bool linear() const {
        for (std::size_t i = 0; i + 1 < items_.size(); ++i)
            if ((items_[i].vertex_set() & items_[i + 1].vertex_set()).size() > 1) return false;
        return true;
    }
    [[nodiscard]] VertexSet repeated_vertices() const {
        VertexSet out;
        for (std::size_t i = 0; i < items_.size(); ++i)
            for (std::size_t j = i + 2; j < items_.size(); ++j) out |= items_[i].vertex_set() & items_[j].vertex_set();
        return out;
    }

    friend bool operator==(const EdgeSequence&, const EdgeSequence&) = default;

private:
    std::vector<Edge> items_;
};

namespace detail {

inline bool distinct_edges(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

inline bool all_size(const std::vector<Edge>& edges, std::size_t k) {
    return std::all_of(edges.begin(), edges.end(), [k](const Edge& e) { return e.size() == k; });
}

inline EdgeSequence framed(VertexId a, const std::vector<Edge>& edges, VertexId b) {
    std::vector<Edge> items;
    items.reserve(edges.size() + 2);
    items.push_back(Edge{a});
    items.insert(items.end(), edges.begin(), edges.end());
    items.push_back(Edge{b});
    return EdgeSequence(std::move(items));
}

}  // namespace detail

// (a, e_1, ..., e_L, b) satisfies the path definition.
inline bool is_path_sequence(VertexId a, const std::vector<Edge>& edges, VertexId b) {
    if (!detail::all_size(edges, 3)) return false;
    if (edges.empty() != (a == b)) return false;
    EdgeSequence s = detail::framed(a, edges, b);
    return s.connected() && s.linear() && s.repeated_vertices().empty() && detail::distinct_edges(edges);
}

// (a, e_1, ..., e_L, a) satisfies the cycle definition.
inline bool is_cycle_sequence(VertexId a, const std::vector<Edge>& edges) {
    const std::size_t L = edges.size();
    if (L < 2 || !detail::all_size(edges, 3) || !detail::distinct_edges(edges)) return false;
    EdgeSequence s = detail::framed(a, edges, a);
    if (L >= 3) {
        if (!s.connected() || !s.linear()) return false;
    } else if ((edges[0].vertex_set() & edges[1].vertex_set()).size() != 2) {
        return false;
    }
    if (s.repeated_vertices() != VertexSet{a}) return false;
    for (std::size_t i = 0; i < L; ++i)
        if (edges[i].contains(a) != (i == 0 || i == L - 1)) return false;
    return true;
}

// Linear path given by its anchor and ordered edges.
struct PathWitness {
    VertexId a = 0;
    VertexId b = 0;
    std::vector<Edge> edges;

    [[nodiscard]] std::size_t length() const { return edges.size(); }
    [[nodiscard]] VertexSet vertex_set() const {
        VertexSet s{a, b};
        for (const Edge& e : edges) s |= e.vertex_set();
        return s;
    }
    [[nodiscard]] EdgeSequence sequence() const { return detail::framed(a, edges, b); }
    [[nodiscard]] PathWitness reversed() const { return {b, a, std::vector<Edge>(edges.rbegin(), edges.rend())}; }
    [[nodiscard]] bool valid() const { return is_path_sequence(a, edges, b); }

    // x_0 = a, x_i = e_i ∩ e_{i+1}, x_L = b.
    [[nodiscard]] std::vector<VertexId> spine() const {
        std::vector<VertexId> xs{a};
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            xs.push_back((edges[i].vertex_set() & edges[i + 1].vertex_set()).front());
        if (!edges.empty()) xs.push_back(b);
        return xs;
    }
    // y_i: the degree-one vertex of e_i other than a and b.
    [[nodiscard]] std::vector<VertexId> middles() const {
        std::vector<VertexId> xs = spine();
        std::vector<VertexId> ys;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            VertexSet s = edges[i].vertex_set();
            s.erase(xs[i]);
            s.erase(xs[i + 1]);
            ys.push_back(s.front());
        }
        return ys;
    }
    // Degree-two vertices.
    [[nodiscard]] VertexSet inner() const {
        std::vector<VertexId> xs = spine();
        VertexSet s;
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) s.insert(xs[i]);
        return s;
    }
    // Vertex y_1 of the first edge. Requires positive length.
    [[nodiscard]] VertexId first_outer() const { return middles().front(); }
};

struct CycleWitness {
    VertexId anchor = 0;
    std::vector<Edge> edges;

    [[nodiscard]] std::size_t length() const { return edges.size(); }
    [[nodiscard]] VertexSet vertex_set() const {
        VertexSet s;
        for (const Edge& e : edges) s |= e.vertex_set();
        return s;
    }
    [[nodiscard]] EdgeSequence sequence() const { return detail::framed(anchor, edges, anchor); }
    [[nodiscard]] bool valid() const { return is_cycle_sequence(anchor, edges); }
    [[nodiscard]] VertexSet inner() const {
        VertexSet s;
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) s |= edges[i].vertex_set() & edges[j].vertex_set();
        return s;
    }
    [[nodiscard]] VertexSet outer() const { return vertex_set() - inner(); }
};

// Path from `tail.a` to the junction `tail.b`, followed by a cycle anchored at the junction.
struct TadpoleWitness {
    PathWitness tail;
    CycleWitness head;

    [[nodiscard]] VertexId anchor() const { return tail.a; }
    [[nodiscard]] VertexId junction() const { return tail.b; }
    [[nodiscard]] VertexSet vertex_set() const { return tail.vertex_set() | head.vertex_set(); }
    [[nodiscard]] std::vector<Edge> edges() const {
        std::vector<Edge> out = tail.edges;
        out.insert(out.end(), head.edges.begin(), head.edges.end());
        return out;
    }
    [[nodiscard]] bool valid() const {
        return tail.valid() && head.anchor == tail.b && head.valid() &&
               (tail.vertex_set() & head.vertex_set()) == VertexSet{tail.b};
    }
};

// Sequence-level recognizers. Singletons are ignored (equivalent sequences),
// then the remaining edges are checked in order.

inline std::optional<PathWitness> as_path(const EdgeSequence& s, VertexId a, VertexId b) {
    PathWitness p{a, b, s.edges()};
    if (!p.valid()) return std::nullopt;
    return p;
}

inline std::optional<CycleWitness> as_cycle(const EdgeSequence& s, VertexId a) {
    CycleWitness c{a, s.edges()};
    if (!c.valid()) return std::nullopt;
    return c;
}

inline std::optional<TadpoleWitness> as_tadpole(const EdgeSequence& s, VertexId a) {
    const std::vector<Edge> edges = s.edges();
    for (std::size_t split = 0; split + 2 <= edges.size(); ++split) {
        VertexSet candidates = edges[split].vertex_set();
        if (split == 0) candidates = VertexSet{a};
        else candidates &= edges[split - 1].vertex_set();
        for (VertexId b : candidates) {
            TadpoleWitness t{{a, b, std::vector<Edge>(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(split))},
                             {b, std::vector<Edge>(edges.begin() + static_cast<std::ptrdiff_t>(split), edges.end())}};
            if (t.valid()) return t;
        }
    }
    return std::nullopt;
}

// Structure recognizers on unordered edge sets.

// The edge set forms an ab-path; returns its canonical ordering.
inline std::optional<PathWitness> recognize_path(std::vector<Edge> edges, VertexId a, VertexId b) {
    std::vector<Edge> ordered;
    VertexId frontier = a;
    std::vector<bool> used(edges.size(), false);
    for (std::size_t step = 0; step < edges.size(); ++step) {
        std::size_t pick = edges.size();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (used[i] || !edges[i].contains(frontier)) continue;
            if (pick != edges.size()) return std::nullopt;
            pick = i;
        }
        if (pick == edges.size()) return std::nullopt;
        used[pick] = true;
        ordered.push_back(edges[pick]);
        if (step + 1 == edges.size()) {
            frontier = b;
            break;
        }
        VertexId next = kMaxVertices;
        for (VertexId v : edges[pick]) {
            if (v == frontier) continue;
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (!used[i] && edges[i].contains(v)) next = v;
        }
        if (next == kMaxVertices) return std::nullopt;
        frontier = next;
    }
    PathWitness p{a, b, std::move(ordered)};
    if (!p.valid()) return std::nullopt;
    return p;
}

inline std::optional<CycleWitness> recognize_cycle(const std::vector<Edge>& edges, VertexId a) {
    if (edges.size() < 2) return std::nullopt;
    std::size_t first = edges.size();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].contains(a)) {
            first = i;
            break;
        }
    if (first == edges.size()) return std::nullopt;
    // Cut the cycle open at its first edge: the rest is a path between the two
    // other vertices of that edge, one of which is shared with the last edge.
    std::vector<Edge> rest;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (i != first) rest.push_back(edges[i]);
    for (VertexId p : edges[first]) {
        if (p == a) continue;
        // ordering: (a, e_first, p, ... , a)
        // remaining edges must form a p-a path
        if (auto path = recognize_path(rest, p, a)) {
            std::vector<Edge> ordered{edges[first]};
            ordered.insert(ordered.end(), path->edges.begin(), path->edges.end());
            CycleWitness c{a, std::move(ordered)};
            if (c.valid()) return c;
        }
    }
    if (edges.size() == 2) {
        CycleWitness c{a, {edges[first], edges[1 - first]}};
        if (c.valid()) return c;
    }
    return std::nullopt;
}

inline std::optional<TadpoleWitness> recognize_tadpole(const std::vector<Edge>& edges, VertexId a) {
    if (auto c = recognize_cycle(edges, a)) return TadpoleWitness{{a, a, {}}, *c};
    VertexSet all;
    for (const Edge& e : edges) all |= e.vertex_set();
    for (VertexId b : all) {
        if (b == a) continue;
        // Tail edges are those on the a-side: grow greedily from a.
        std::vector<Edge> tail;
        std::vector<bool> used(edges.size(), false);
        VertexId frontier = a;
        bool ok = true;
        while (frontier != b) {
            std::size_t pick = edges.size();
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (used[i] || !edges[i].contains(frontier)) continue;
                if (pick != edges.size()) ok = false;
                pick = i;
            }
            if (!ok || pick == edges.size()) {
                ok = false;
                break;
            }
            used[pick] = true;
            tail.push_back(edges[pick]);
            if (edges[pick].contains(b)) {
                frontier = b;
                break;
            }
            VertexId next = kMaxVertices;
            for (VertexId v : edges[pick]) {
                if (v == frontier) continue;
                for (std::size_t i = 0; i < edges.size(); ++i)
                    if (!used[i] && edges[i].contains(v)) next = v;
            }
            if (next == kMaxVertices) {
                ok = false;
                break;
            }
            frontier = next;
        }
        if (!ok) continue;
        std::vector<Edge> head;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (!used[i]) head.push_back(edges[i]);
        auto c = recognize_cycle(head, b);
        if (!c) continue;
        TadpoleWitness t{{a, b, tail}, *c};
        if (t.valid()) return t;
    }
    return std::nullopt;
}

}  // namespace mb
