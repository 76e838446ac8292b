#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hypergraph.hpp"
#include "sequence.hpp"

namespace mb {

// Edges of a root board with per-vertex incidence lists. Positions reached
// during play are expressed as a GameState over the same index: an edge is
// alive while all of its vertices are present.
class IncidenceIndex {
public:
    explicit IncidenceIndex(const MarkedHypergraph& h) : edges_(h.edges()) {
        bound_ = h.vertices().back() + 1;
        offsets_.assign(bound_ + 1, 0);
        for (const Edge& e : edges_)
            for (VertexId v : e) ++offsets_[v + 1];
        for (VertexId v = 0; v < bound_; ++v) offsets_[v + 1] += offsets_[v];
        incidence_.resize(offsets_[bound_]);
        std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (std::uint32_t i = 0; i < edges_.size(); ++i)
            for (VertexId v : edges_[i]) incidence_[fill[v]++] = i;
        for (const Edge& e : edges_) edge_masks_.push_back(e.vertex_set());
    }

    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const VertexSet& mask(std::uint32_t i) const { return edge_masks_[i]; }
    [[nodiscard]] VertexId bound() const { return bound_; }
    [[nodiscard]] std::span<const std::uint32_t> incident(VertexId v) const {
        if (v >= bound_) return {};
        return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

private:
    std::vector<Edge> edges_;
    std::vector<VertexSet> edge_masks_;
    VertexId bound_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> incidence_;
};

struct GameState {
    VertexSet present;
    VertexSet marked;

    [[nodiscard]] VertexSet unmarked() const { return present - marked; }
    [[nodiscard]] GameState with_mark(VertexId x) const {
        GameState s = *this;
        s.marked.insert(x);
        return s;
    }
    [[nodiscard]] GameState without(VertexId y) const {
        GameState s = *this;
        s.present.erase(y);
        s.marked.erase(y);
        return s;
    }
    friend bool operator==(const GameState&, const GameState&) = default;
};

inline GameState state_of(const MarkedHypergraph& h) { return {h.vertices(), h.marked()}; }

// Materializes a state as a standalone board.
inline MarkedHypergraph board_of(const IncidenceIndex& index, const GameState& s) {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < index.edges().size(); ++i)
        if (index.mask(i).subset_of(s.present)) edges.push_back(index.edges()[i]);
    return MarkedHypergraph(s.present, std::move(edges), s.marked);
}

// Non-marked vertices worth branching on: those on an alive edge, plus the
// lowest dead one. Dead vertices are interchangeable (swapping two of them is an
// automorphism of the position), so one representative is exact.
inline VertexSet branch_vertices(const IncidenceIndex& index, const GameState& s) {
    VertexSet live;
    for (std::uint32_t i = 0; i < index.edges().size(); ++i)
        if (index.mask(i).subset_of(s.present)) live |= index.mask(i);
    VertexSet free = s.unmarked();
    VertexSet out = free & live;
    VertexSet dead = free - live;
    if (!dead.empty()) out.insert(dead.front());
    return out;
}

inline bool is_trivial_win(const IncidenceIndex& index, const GameState& s) {
    for (std::uint32_t i = 0; i < index.edges().size(); ++i) {
        const VertexSet& m = index.mask(i);
        if (m.subset_of(s.present) && (m - s.marked).size() <= 1) return true;
    }
    return false;
}

struct GameStateHash {
    std::size_t operator()(const GameState& s) const { return s.present.hash() * 31 + s.marked.hash(); }
};

// Where a path may go. `inner` holds the vertices allowed anywhere except the
// far endpoint; `targets` the admissible far endpoints. Only edges of size three
// take part. Vertices outside both sets are never touched, so passing the
// present vertices only keeps the search inside the current position.
struct PathConstraints {
    VertexSet inner;
    VertexSet targets;
    // Lets the degree-one vertex of the final edge be a target as well.
    bool final_middle_may_hit_target = false;
};

inline constexpr int kUnbounded = std::numeric_limits<int>::max();

// Depth-first enumeration of linear paths with failure memoization. Edges are
// tried in index order and, within an edge, the lower id is tried as the
// continuing vertex first, so results are deterministic.
class PathSearch {
public:
    explicit PathSearch(const IncidenceIndex& index) : index_(index) {}

    // Some path from `from` to a target, of length at most `max_length`.
    std::optional<PathWitness> find(VertexId from, const PathConstraints& c, int max_length = kUnbounded) {
        if (c.targets.contains(from)) return PathWitness{from, from, {}};
        reset(c, max_length);
        std::vector<Edge> trail;
        VertexSet used{from};
        if (!dfs(from, used, max_length, trail)) return std::nullopt;
        return PathWitness{from, found_end_, trail};
    }

    // A shortest such path, by iterative deepening.
    std::optional<PathWitness> shortest(VertexId from, const PathConstraints& c, int max_length = kUnbounded) {
        if (c.targets.contains(from)) return PathWitness{from, from, {}};
        // A path of length L spends 2L - 1 inner vertices, or 2L - 2 when the
        // last middle vertex may be a target.
        int usable = c.inner.size() + (c.final_middle_may_hit_target ? 2 : 1);
        int cap = std::min(max_length, usable / 2);
        if (!find(from, c, cap)) return std::nullopt;
        for (int d = 1; d <= cap; ++d)
            if (auto p = find(from, c, d)) return p;
        return std::nullopt;
    }

    // Calls `visit(trail, used)` at every simple path from `from` through inner
    // vertices (the empty path included), where the frontier is the far end.
    // Stops and returns true as soon as a visit returns true. When `memo` is set,
    // failed (frontier, used) pairs are not revisited; that is sound only if the
    // visitor's answer depends on nothing but the frontier and the used set.
    template <class Visit>
    bool each_path(VertexId from, const VertexSet& inner, Visit&& visit, bool memo = true) {
        constraints_ = {inner, {}};
        failed_.clear();
        memo_ = memo;
        std::vector<Edge> trail;
        return walk(from, from, VertexSet{from}, trail, visit);
    }

    std::size_t nodes() const { return nodes_; }

private:
    struct Key {
        VertexId frontier;
        VertexSet used;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.used.hash() ^ (std::size_t{k.frontier} * 0x9e3779b97f4a7c15ull); }
    };

    void reset(const PathConstraints& c, int) {
        constraints_ = c;
        failed_.clear();
        memo_ = true;
    }

    // Returns true when a target was reached; `trail` then holds the edges.
    bool dfs(VertexId frontier, VertexSet& used, int budget, std::vector<Edge>& trail) {
        if (budget <= 0) return false;
        ++nodes_;
        Key key{frontier, used};
        if (auto it = failed_.find(key); it != failed_.end() && it->second >= budget) return false;
        for (std::uint32_t ei : index_.incident(frontier)) {
            const Edge& e = index_.edges()[ei];
            if (e.size() != 3) continue;
            VertexId p = kMaxVertices, q = kMaxVertices;
            for (VertexId v : e) {
                if (v == frontier) continue;
                (p == kMaxVertices ? p : q) = v;
            }
            if (used.contains(p) || used.contains(q)) continue;
            for (int turn = 0; turn < 2; ++turn) {
                VertexId y = turn == 0 ? q : p;  // stays behind, degree one
                VertexId x = turn == 0 ? p : q;  // continues the path
                bool y_inner = constraints_.inner.contains(y);
                if (!y_inner && !(constraints_.final_middle_may_hit_target && constraints_.targets.contains(y))) continue;
                if (constraints_.targets.contains(x)) {
                    trail.push_back(e);
                    found_end_ = x;
                    return true;
                }
                if (!y_inner || !constraints_.inner.contains(x)) continue;
                trail.push_back(e);
                used.insert(p);
                used.insert(q);
                bool ok = dfs(x, used, budget - 1, trail);
                used.erase(p);
                used.erase(q);
                if (ok) return true;
                trail.pop_back();
            }
        }
        auto& slot = failed_[key];
        slot = std::max(slot, budget);
        return false;
    }

    template <class Visit>
    bool walk(VertexId from, VertexId frontier, VertexSet used, std::vector<Edge>& trail, Visit& visit) {
        ++nodes_;
        Key key{frontier, used};
        if (memo_ && failed_.count(key)) return false;
        if (visit(PathWitness{from, frontier, trail}, used)) return true;
        for (std::uint32_t ei : index_.incident(frontier)) {
            const Edge& e = index_.edges()[ei];
            if (e.size() != 3) continue;
            VertexId p = kMaxVertices, q = kMaxVertices;
            for (VertexId v : e) {
                if (v == frontier) continue;
                (p == kMaxVertices ? p : q) = v;
            }
            if (used.contains(p) || used.contains(q)) continue;
            if (!constraints_.inner.contains(p) || !constraints_.inner.contains(q)) continue;
            for (int turn = 0; turn < 2; ++turn) {
                VertexId x = turn == 0 ? p : q;
                VertexSet next = used;
                next.insert(p);
                next.insert(q);
                trail.push_back(e);
                bool ok = walk(from, x, next, trail, visit);
                trail.pop_back();
                if (ok) return true;
            }
        }
        if (memo_) failed_[key] = 1;
        return false;
    }

    const IncidenceIndex& index_;
    PathConstraints constraints_;
    std::unordered_map<Key, int, KeyHash> failed_;
    VertexId found_end_ = 0;
    bool memo_ = true;
    std::size_t nodes_ = 0;
};

}  // namespace mb
