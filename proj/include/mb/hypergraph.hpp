#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "vertex_set.hpp"

namespace mb {

// A set of one to three vertices, stored sorted. Singletons double as the
// endpoint markers of edge sequences.
class Edge {
public:
    Edge() = default;
    Edge(std::initializer_list<VertexId> ids) : Edge(std::span<const VertexId>(ids.begin(), ids.size())) {}
    explicit Edge(std::span<const VertexId> ids) {
        std::array<VertexId, 3> buf{};
        std::size_t n = 0;
        for (VertexId v : ids) {
            if (v >= kMaxVertices) throw unsupported_board("vertex id " + std::to_string(v) + " exceeds capacity");
            if (std::find(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n), v) != buf.begin() + static_cast<std::ptrdiff_t>(n)) continue;
            if (n == 3) throw unsupported_board("edge with more than three vertices");
            buf[n++] = v;
        }
        if (n == 0) throw domain_error("empty edge");
        std::sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n));
        v_ = buf;
        n_ = static_cast<std::uint8_t>(n);
    }
    static Edge from_set(const VertexSet& s) {
        std::vector<VertexId> ids = s.to_vector();
        return Edge(std::span<const VertexId>(ids));
    }

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] VertexId operator[](std::size_t i) const { return v_[i]; }
    [[nodiscard]] const VertexId* begin() const { return v_.data(); }
    [[nodiscard]] const VertexId* end() const { return v_.data() + n_; }
    [[nodiscard]] bool contains(VertexId v) const { return std::find(begin(), end(), v) != end(); }
    [[nodiscard]] VertexSet vertex_set() const {
        VertexSet s;
        for (VertexId v : *this) s.insert(v);
        return s;
    }

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
    }
    friend std::strong_ordering operator<=>(const Edge& a, const Edge& b) {
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::array<VertexId, 3> v_{};
    std::uint8_t n_ = 0;
};

// Board of the game: vertices, edges of size one to three, and the set of
// vertices Maker has already claimed.
//
// Invariants: the vertex set is nonempty, every edge lies inside it, edges are
// distinct and kept sorted, marked vertices are vertices.
class MarkedHypergraph {
public:
    MarkedHypergraph(VertexSet vertices, std::vector<Edge> edges, VertexSet marked = {})
        : vertices_(vertices), edges_(std::move(edges)), marked_(marked) {
        if (vertices_.empty()) throw domain_error("board has no vertices");
        if (!marked_.subset_of(vertices_)) throw domain_error("marked vertex outside the vertex set");
        for (const Edge& e : edges_)
            if (!e.vertex_set().subset_of(vertices_)) throw domain_error("edge uses a vertex outside the vertex set");
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    // Board on vertices {0, ..., n - 1}.
    static MarkedHypergraph on(VertexId n, std::vector<Edge> edges, VertexSet marked = {}) {
        if (n > kMaxVertices) throw unsupported_board("too many vertices");
        return MarkedHypergraph(VertexSet::range(n), std::move(edges), marked);
    }

    [[nodiscard]] const VertexSet& vertices() const { return vertices_; }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const VertexSet& marked() const { return marked_; }
    [[nodiscard]] VertexSet unmarked() const { return vertices_ - marked_; }

    [[nodiscard]] int rank() const {
        std::size_t r = 0;
        for (const Edge& e : edges_) r = std::max(r, e.size());
        return static_cast<int>(r);
    }
    [[nodiscard]] bool is_uniform(std::size_t k) const {
        return std::all_of(edges_.begin(), edges_.end(), [k](const Edge& e) { return e.size() == k; });
    }
    [[nodiscard]] bool has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }
    [[nodiscard]] int degree(VertexId v) const {
        return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.contains(v); }));
    }

    friend bool operator==(const MarkedHypergraph&, const MarkedHypergraph&) = default;

private:
    VertexSet vertices_;
    std::vector<Edge> edges_;
    VertexSet marked_;
};

// Maker claims x.
inline MarkedHypergraph mark(const MarkedHypergraph& h, VertexId x) {
    if (!h.vertices().contains(x)) throw domain_error("mark: vertex " + std::to_string(x) + " is not on the board");
    VertexSet m = h.marked();
    m.insert(x);
    return MarkedHypergraph(h.vertices(), h.edges(), m);
}

// Breaker deletes y together with every edge through it.
inline MarkedHypergraph remove(const MarkedHypergraph& h, VertexId y) {
    if (!h.vertices().contains(y)) throw domain_error("remove: vertex " + std::to_string(y) + " is not on the board");
    if (h.vertices().size() == 1) throw domain_error("remove: cannot delete the last vertex");
    VertexSet v = h.vertices();
    v.erase(y);
    VertexSet m = h.marked();
    m.erase(y);
    std::vector<Edge> edges;
    for (const Edge& e : h.edges())
        if (!e.contains(y)) edges.push_back(e);
    return MarkedHypergraph(v, std::move(edges), m);
}

// Non-owning description of a subhypergraph of some host board.
struct SubhypergraphRef {
    VertexSet vertices;
    std::vector<Edge> edges;

    static SubhypergraphRef of_edges(std::vector<Edge> edges) {
        SubhypergraphRef r;
        for (const Edge& e : edges) r.vertices |= e.vertex_set();
        r.edges = std::move(edges);
        std::sort(r.edges.begin(), r.edges.end());
        r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
        return r;
    }

    [[nodiscard]] bool is_sub_of(const MarkedHypergraph& host) const {
        if (!vertices.subset_of(host.vertices())) return false;
        for (const Edge& e : edges)
            if (!host.has_edge(e) || !e.vertex_set().subset_of(vertices)) return false;
        return true;
    }
    [[nodiscard]] VertexSet marked_in(const MarkedHypergraph& host) const { return vertices & host.marked(); }

    friend bool operator==(const SubhypergraphRef&, const SubhypergraphRef&) = default;
};

inline SubhypergraphRef union_of(std::span<const SubhypergraphRef> refs) {
    if (refs.empty()) throw domain_error("union of an empty collection");
    SubhypergraphRef out;
    for (const auto& r : refs) {
        out.vertices |= r.vertices;
        out.edges.insert(out.edges.end(), r.edges.begin(), r.edges.end());
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

// Non-marked vertices of `host` lying in every member. The empty collection
// yields all non-marked vertices.
inline VertexSet intersection(std::span<const SubhypergraphRef> refs, const MarkedHypergraph& host) {
    VertexSet out = host.unmarked();
    for (const auto& r : refs) out &= r.vertices;
    return out;
}

// Non-marked y such that the members avoiding y still share a non-marked vertex.
inline VertexSet removable_vertices(std::span<const SubhypergraphRef> refs, const MarkedHypergraph& host) {
    VertexSet out;
    for (VertexId y : host.unmarked()) {
        VertexSet common = host.unmarked();
        for (const auto& r : refs)
            if (!r.vertices.contains(y)) common &= r.vertices;
        if (!common.empty()) out.insert(y);
    }
    return out;
}

// Result of padding a board to three-uniform form.
struct NormalizedBoard {
    MarkedHypergraph board;
    VertexSet padding;  // fresh marked vertices added by the padding
    // For every padding vertex, the index in the original edge list of the edge it was added to.
    std::vector<std::pair<VertexId, std::size_t>> provenance;
};

// Pads every edge of size s < 3 with 3 - s fresh marked vertices.
inline NormalizedBoard normalize_rank3(const MarkedHypergraph& h) {
    if (h.rank() > 3) throw unsupported_board("rank above three");
    VertexId next = h.vertices().back() + 1;
    VertexSet vertices = h.vertices();
    VertexSet marked = h.marked();
    VertexSet padding;
    std::vector<Edge> edges;
    std::vector<std::pair<VertexId, std::size_t>> provenance;
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        const Edge& e = h.edges()[i];
        std::vector<VertexId> ids(e.begin(), e.end());
        while (ids.size() < 3) {
            if (next >= kMaxVertices) throw unsupported_board("padding exceeds vertex capacity");
            ids.push_back(next);
            vertices.insert(next);
            marked.insert(next);
            padding.insert(next);
            provenance.emplace_back(next, i);
            ++next;
        }
        edges.emplace_back(std::span<const VertexId>(ids));
    }
    return {MarkedHypergraph(vertices, std::move(edges), marked), padding, std::move(provenance)};
}

// Deletes the marked vertices and shrinks every edge accordingly. The result
// has the same winner. Requires no fully marked edge and some non-marked vertex.
inline MarkedHypergraph strip_marked(const MarkedHypergraph& h) {
    if (h.unmarked().empty()) throw domain_error("strip_marked: every vertex is marked");
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        VertexSet rest = e.vertex_set() - h.marked();
        if (rest.empty()) throw domain_error("strip_marked: board has a fully marked edge");
        edges.push_back(Edge::from_set(rest));
    }
    return MarkedHypergraph(h.unmarked(), std::move(edges), {});
}

}  // namespace mb
